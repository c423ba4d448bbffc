//! Integer intervals with infinite bounds.

use core::cmp::Ordering;
use core::fmt;

use super::BoolSet;

/// An interval endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Bound {
    fn add(self, other: Bound, toward: Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => match a.checked_add(b) {
                Some(v) => Bound::Finite(v),
                // a lower bound must not overshoot, an upper bound must not undershoot
                None if a > 0 => {
                    if toward == Bound::NegInf {
                        Bound::Finite(i64::MAX)
                    } else {
                        Bound::PosInf
                    }
                }
                None => {
                    if toward == Bound::PosInf {
                        Bound::Finite(i64::MIN)
                    } else {
                        Bound::NegInf
                    }
                }
            },
            (Bound::NegInf, Bound::PosInf) | (Bound::PosInf, Bound::NegInf) => toward,
            (Bound::NegInf, _) | (_, Bound::NegInf) => Bound::NegInf,
            _ => Bound::PosInf,
        }
    }

    fn neg(self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(v) => v.checked_neg().map_or(Bound::PosInf, Bound::Finite),
        }
    }

    fn signum(self) -> i64 {
        match self {
            Bound::NegInf => -1,
            Bound::PosInf => 1,
            Bound::Finite(v) => v.signum(),
        }
    }

    fn infinity(sign: i64) -> Bound {
        if sign < 0 {
            Bound::NegInf
        } else {
            Bound::PosInf
        }
    }

    fn mul(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a
                .checked_mul(b)
                .map_or(Bound::infinity(a.signum() * b.signum()), Bound::Finite),
            _ if self.signum() == 0 || other.signum() == 0 => Bound::Finite(0),
            _ => Bound::infinity(self.signum() * other.signum()),
        }
    }

    /// Truncating division; `other` is never zero. Returns `None` for
    /// `∞ / ∞`.
    fn div(self, other: Bound) -> Option<Bound> {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                Some(a.checked_div(b).map_or(Bound::PosInf, Bound::Finite))
            }
            (Bound::Finite(_), _) => Some(Bound::Finite(0)),
            (_, Bound::Finite(b)) => Some(Bound::infinity(self.signum() * b.signum())),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-\u{221E}"),
            Bound::PosInf => f.write_str("+\u{221E}"),
            Bound::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// `[lo, hi]` with `lo ≤ hi`, or bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Interval {
    Bottom,
    Range { lo: Bound, hi: Bound },
}

impl Interval {
    pub const TOP: Interval = Interval::Range {
        lo: Bound::NegInf,
        hi: Bound::PosInf,
    };

    /// `[lo, hi]`, or bottom when `lo > hi`.
    pub fn new(lo: Bound, hi: Bound) -> Interval {
        if lo > hi || lo == Bound::PosInf || hi == Bound::NegInf {
            Interval::Bottom
        } else {
            Interval::Range { lo, hi }
        }
    }

    pub fn finite(lo: i64, hi: i64) -> Interval {
        Interval::new(Bound::Finite(lo), Bound::Finite(hi))
    }

    pub fn constant(v: i64) -> Interval {
        Interval::finite(v, v)
    }

    /// `[lo, +∞]`.
    pub fn at_least(lo: i64) -> Interval {
        Interval::new(Bound::Finite(lo), Bound::PosInf)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Interval::Bottom)
    }

    pub fn bounds(&self) -> Option<(Bound, Bound)> {
        match *self {
            Interval::Bottom => None,
            Interval::Range { lo, hi } => Some((lo, hi)),
        }
    }

    /// Both endpoints, when finite.
    pub fn finite_bounds(&self) -> Option<(i64, i64)> {
        match self.bounds()? {
            (Bound::Finite(lo), Bound::Finite(hi)) => Some((lo, hi)),
            _ => None,
        }
    }

    pub fn singleton(&self) -> Option<i64> {
        match self.finite_bounds()? {
            (lo, hi) if lo == hi => Some(lo),
            _ => None,
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        match *self {
            Interval::Bottom => false,
            Interval::Range { lo, hi } => lo <= Bound::Finite(v) && Bound::Finite(v) <= hi,
        }
    }

    pub fn leq(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((a, b)), Some((c, d))) => c <= a && b <= d,
        }
    }

    pub fn lub(&self, other: &Interval) -> Interval {
        match (self.bounds(), other.bounds()) {
            (None, _) => *other,
            (_, None) => *self,
            (Some((a, b)), Some((c, d))) => Interval::new(a.min(c), b.max(d)),
        }
    }

    pub fn glb(&self, other: &Interval) -> Interval {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => Interval::new(a.max(c), b.min(d)),
            _ => Interval::Bottom,
        }
    }

    /// Standard widening: unstable bounds jump to infinity.
    pub fn widen(&self, next: &Interval) -> Interval {
        match (self.bounds(), next.bounds()) {
            (None, _) => *next,
            (_, None) => *self,
            (Some((a, b)), Some((c, d))) => Interval::new(
                if c < a { Bound::NegInf } else { a },
                if d > b { Bound::PosInf } else { b },
            ),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => {
                Interval::new(a.add(c, Bound::NegInf), b.add(d, Bound::PosInf))
            }
            _ => Interval::Bottom,
        }
    }

    pub fn neg(&self) -> Interval {
        match self.bounds() {
            Some((a, b)) => Interval::new(b.neg(), a.neg()),
            None => Interval::Bottom,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => {
                let products = [a.mul(c), a.mul(d), b.mul(c), b.mul(d)];
                let lo = *products.iter().min().expect("four products");
                let hi = *products.iter().max().expect("four products");
                Interval::new(lo, hi)
            }
            _ => Interval::Bottom,
        }
    }

    /// Truncating division. A divisor that may be zero gives the top
    /// interval.
    pub fn div(&self, other: &Interval) -> Interval {
        let (Some((a, b)), Some((c, d))) = (self.bounds(), other.bounds()) else {
            return Interval::Bottom;
        };
        if other.contains(0) {
            return Interval::TOP;
        }
        let mut quotients = [Bound::Finite(0); 4];
        for (slot, (x, y)) in quotients.iter_mut().zip([(a, c), (a, d), (b, c), (b, d)]) {
            match x.div(y) {
                Some(q) => *slot = q,
                None => return Interval::TOP,
            }
        }
        let lo = *quotients.iter().min().expect("four quotients");
        let hi = *quotients.iter().max().expect("four quotients");
        Interval::new(lo, hi)
    }

    /// Abstract `<`.
    pub fn less_than(&self, other: &Interval) -> BoolSet {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => BoolSet::new(a < d, b >= c),
            _ => BoolSet::BOTTOM,
        }
    }

    /// Abstract `==`.
    pub fn equals(&self, other: &Interval) -> BoolSet {
        match (self.singleton(), other.singleton()) {
            _ if self.is_bottom() || other.is_bottom() => BoolSet::BOTTOM,
            (Some(a), Some(b)) => BoolSet::from(a == b),
            _ if self.glb(other).is_bottom() => BoolSet::FALSE,
            _ => BoolSet::TOP,
        }
    }
}

impl PartialOrd for Interval {
    /// The lattice order; `None` for incomparable intervals.
    fn partial_cmp(&self, other: &Interval) -> Option<Ordering> {
        match (self.leq(other), other.leq(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Bottom => f.write_str("\u{22A5}"),
            Interval::Range { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_adds_endpoints() {
        assert_eq!(
            Interval::finite(1, 2).add(&Interval::finite(3, 4)),
            Interval::finite(4, 6)
        );
        assert_eq!(
            Interval::at_least(1).add(&Interval::constant(-1)),
            Interval::at_least(0)
        );
        assert_eq!(
            Interval::constant(i64::MAX)
                .add(&Interval::constant(1))
                .bounds()
                .unwrap()
                .1,
            Bound::PosInf
        );
    }

    #[test]
    fn multiplication_by_zero() {
        assert_eq!(
            Interval::constant(0).mul(&Interval::finite(-3, 7)),
            Interval::constant(0)
        );
        assert_eq!(
            Interval::constant(0).mul(&Interval::TOP),
            Interval::constant(0)
        );
        assert_eq!(
            Interval::finite(-2, 3).mul(&Interval::finite(4, 5)),
            Interval::finite(-10, 15)
        );
    }

    #[test]
    fn division() {
        assert_eq!(
            Interval::finite(1, 10).div(&Interval::finite(-1, 1)),
            Interval::TOP
        );
        assert_eq!(
            Interval::finite(7, 9).div(&Interval::constant(2)),
            Interval::finite(3, 4)
        );
        assert_eq!(
            Interval::finite(-7, 7).div(&Interval::finite(2, 3)),
            Interval::finite(-3, 3)
        );
        assert_eq!(
            Interval::at_least(4).div(&Interval::constant(-2)),
            Interval::new(Bound::NegInf, Bound::Finite(-2))
        );
    }

    #[test]
    fn widening_jumps_to_infinity() {
        assert_eq!(
            Interval::finite(0, 1).widen(&Interval::finite(0, 2)),
            Interval::at_least(0)
        );
        assert_eq!(
            Interval::finite(0, 1).widen(&Interval::finite(0, 1)),
            Interval::finite(0, 1)
        );
        assert_eq!(
            Interval::finite(0, 1).widen(&Interval::finite(-1, 1)),
            Interval::new(Bound::NegInf, Bound::Finite(1))
        );
    }

    #[test]
    fn comparisons() {
        assert_eq!(
            Interval::constant(0).less_than(&Interval::finite(2, 3)),
            BoolSet::TRUE
        );
        assert_eq!(
            Interval::finite(2, 3).less_than(&Interval::finite(2, 3)),
            BoolSet::TOP
        );
        assert_eq!(
            Interval::finite(5, 6).less_than(&Interval::finite(2, 3)),
            BoolSet::FALSE
        );
        assert_eq!(
            Interval::finite(2, 3).equals(&Interval::constant(0)),
            BoolSet::FALSE
        );
        assert_eq!(
            Interval::finite(2, 3).equals(&Interval::constant(3)),
            BoolSet::TOP
        );
        assert_eq!(
            Interval::constant(3).equals(&Interval::constant(3)),
            BoolSet::TRUE
        );
    }

    #[test]
    fn order_and_display() {
        assert!(Interval::Bottom.leq(&Interval::constant(1)));
        assert!(Interval::finite(2, 3) < Interval::at_least(0));
        assert_eq!(
            Interval::finite(2, 3).partial_cmp(&Interval::finite(4, 5)),
            None
        );
        assert_eq!(
            alloc::format!("{}", Interval::at_least(2)),
            "[2, +\u{221E}]"
        );
    }
}
