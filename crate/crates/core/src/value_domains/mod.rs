//! Non-string value domains, the coalesced sum, the string-domain
//! interface and the baseline string domains.

use alloc::string::String;
use core::fmt;

pub mod baseline;
mod boolset;
mod interval;
mod value;

pub use boolset::BoolSet;
pub use interval::{Bound, Interval};
pub use value::AbstractValue;

/// Interface every string abstract domain plugs into the analyzer with.
///
/// Operations never fail: bottom arguments produce bottom results.
pub trait StringDomain {
    type Value: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> &'static str;

    fn bottom(&self) -> Self::Value;
    fn constant(&self, s: &str) -> Self::Value;
    /// Abstraction of a statically unknown string.
    fn unknown(&self) -> Self::Value;
    fn is_bottom(&self, v: &Self::Value) -> bool;

    fn lub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn leq(&self, a: &Self::Value, b: &Self::Value) -> bool;
    fn widen(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// Fixpoint test at loop heads: `b` adds nothing to `a`. Defaults to
    /// `leq(b, a)`; domains whose order is coarser than their
    /// representation can ask for representation stability instead.
    fn stable(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.leq(b, a)
    }

    fn concat(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn length(&self, a: &Self::Value) -> Interval;
    fn contains(&self, a: &Self::Value, b: &Self::Value) -> BoolSet;
    fn index_of(&self, a: &Self::Value, b: &Self::Value) -> Interval;
    fn replace(&self, a: &Self::Value, search: &Self::Value, repl: &Self::Value) -> Self::Value;
    fn substring(&self, a: &Self::Value, from: &Interval, to: &Interval) -> Self::Value;

    /// Abstract string equality. The default only handles bottom.
    fn equals(&self, a: &Self::Value, b: &Self::Value) -> BoolSet {
        if self.is_bottom(a) || self.is_bottom(b) {
            BoolSet::BOTTOM
        } else {
            BoolSet::TOP
        }
    }

    /// `s ∈ γ(v)`.
    fn member(&self, v: &Self::Value, s: &str) -> bool;

    /// The first of `strings` outside `γ(v)`, if any. Domains with a costly
    /// membership setup can share it across the strings.
    fn first_non_member<'a>(&self, v: &Self::Value, strings: &[&'a str]) -> Option<&'a str> {
        strings.iter().copied().find(|s| !self.member(v, s))
    }

    fn render(&self, v: &Self::Value) -> String;
}
