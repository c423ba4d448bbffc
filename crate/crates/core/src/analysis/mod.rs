//! Concrete interpreter, collecting evaluation, and the abstract
//! interpreter parametric in the string domain.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::value_domains::{AbstractValue, StringDomain};

mod collecting;
pub mod concrete;
mod engine;
pub mod oracle;

pub use collecting::{collecting_eval, Collected};
pub use concrete::{concrete_run, ConcreteMemory, Inputs, Run, RuntimeError, Value};
pub use engine::{
    abstract_run, eval, memory_leq, memory_lub, memory_widen, AnalysisError, AnalysisResult,
    AssertOutcome, Decision, Partitions, Token, Verdict,
};

pub type AbstractMemory<V> = BTreeMap<String, AbstractValue<V>>;

/// Knobs of the abstract interpreter. The string-domain parameters
/// (widening length, state threshold) live in the domain itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Maximum trace token length; also the number of unrolled iterations
    /// per loop.
    pub partition_bound: usize,
    /// Hard cap on widening rounds per loop visit.
    pub max_iterations: usize,
}

impl Default for AnalysisConfig {
    fn default() -> AnalysisConfig {
        AnalysisConfig {
            partition_bound: 8,
            max_iterations: 1000,
        }
    }
}

/// Default step budget of concrete runs.
pub const DEFAULT_FUEL: u64 = 1_000_000;

/// `v ∈ γ(a)`.
pub fn value_member<D: StringDomain>(dom: &D, a: &AbstractValue<D::Value>, v: &Value) -> bool {
    match (a, v) {
        (AbstractValue::Top, _) => true,
        (AbstractValue::Int(i), Value::Int(n)) => i.contains(*n),
        (AbstractValue::Bool(b), Value::Bool(x)) => b.contains(*x),
        (AbstractValue::Str(s), Value::Str(x)) => dom.member(s, x),
        _ => false,
    }
}

/// Every binding of `m` is in `γ` of the matching binding of `a`.
pub fn memory_member<D: StringDomain>(
    dom: &D,
    a: &AbstractMemory<D::Value>,
    m: &ConcreteMemory,
) -> bool {
    m.iter()
        .all(|(x, v)| a.get(x).is_some_and(|av| value_member(dom, av, v)))
}

#[cfg(test)]
mod tests;
