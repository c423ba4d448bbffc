//! The coalesced sum of a string domain, intervals and boolean sets.

use alloc::string::{String, ToString};

use super::{BoolSet, Interval, StringDomain};

/// `V̂ = strings ⊕ Intv ⊕ 𝔹`, sharing one bottom and one top.
#[derive(Debug, Clone, PartialEq)]
pub enum AbstractValue<V> {
    Bottom,
    Str(V),
    Int(Interval),
    Bool(BoolSet),
    Top,
}

impl<V: Clone + PartialEq> AbstractValue<V> {
    /// Collapses component bottoms into [`AbstractValue::Bottom`].
    pub fn coalesce<D: StringDomain<Value = V>>(self, dom: &D) -> AbstractValue<V> {
        match &self {
            AbstractValue::Str(s) if dom.is_bottom(s) => AbstractValue::Bottom,
            AbstractValue::Int(i) if i.is_bottom() => AbstractValue::Bottom,
            AbstractValue::Bool(b) if b.is_bottom() => AbstractValue::Bottom,
            _ => self,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, AbstractValue::Bottom)
    }

    pub fn lub<D: StringDomain<Value = V>>(
        &self,
        other: &AbstractValue<V>,
        dom: &D,
    ) -> AbstractValue<V> {
        self.combine(other, dom, false)
    }

    /// Widening: the string domain widening on strings, interval widening
    /// on integers, lub elsewhere.
    pub fn widen<D: StringDomain<Value = V>>(
        &self,
        other: &AbstractValue<V>,
        dom: &D,
    ) -> AbstractValue<V> {
        self.combine(other, dom, true)
    }

    fn combine<D: StringDomain<Value = V>>(
        &self,
        other: &AbstractValue<V>,
        dom: &D,
        widen: bool,
    ) -> AbstractValue<V> {
        use AbstractValue::*;
        match (self, other) {
            (Bottom, v) | (v, Bottom) => v.clone(),
            (Str(a), Str(b)) => Str(if widen {
                dom.widen(a, b)
            } else {
                dom.lub(a, b)
            }),
            (Int(a), Int(b)) => Int(if widen { a.widen(b) } else { a.lub(b) }),
            (Bool(a), Bool(b)) => Bool(a.lub(*b)),
            _ => Top,
        }
    }

    pub fn leq<D: StringDomain<Value = V>>(&self, other: &AbstractValue<V>, dom: &D) -> bool {
        use AbstractValue::*;
        match (self, other) {
            (Bottom, _) | (_, Top) => true,
            (Str(a), Str(b)) => dom.leq(a, b),
            (Int(a), Int(b)) => a.leq(b),
            (Bool(a), Bool(b)) => a.leq(*b),
            _ => false,
        }
    }

    pub fn render<D: StringDomain<Value = V>>(&self, dom: &D) -> String {
        match self {
            AbstractValue::Bottom => String::from("\u{22A5}"),
            AbstractValue::Str(s) => dom.render(s),
            AbstractValue::Int(i) => i.to_string(),
            AbstractValue::Bool(b) => b.to_string(),
            AbstractValue::Top => String::from("\u{22A4}"),
        }
    }
}
