//! Sets of booleans, `℘({true, false})`.

use core::fmt;

/// A subset of `{true, false}`; the empty set is bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BoolSet {
    pub may_be_true: bool,
    pub may_be_false: bool,
}

impl BoolSet {
    pub const BOTTOM: BoolSet = BoolSet::new(false, false);
    pub const TRUE: BoolSet = BoolSet::new(true, false);
    pub const FALSE: BoolSet = BoolSet::new(false, true);
    pub const TOP: BoolSet = BoolSet::new(true, true);

    pub const fn new(may_be_true: bool, may_be_false: bool) -> BoolSet {
        BoolSet {
            may_be_true,
            may_be_false,
        }
    }

    pub fn contains(self, b: bool) -> bool {
        if b {
            self.may_be_true
        } else {
            self.may_be_false
        }
    }

    pub fn is_bottom(self) -> bool {
        self == BoolSet::BOTTOM
    }

    pub fn lub(self, other: BoolSet) -> BoolSet {
        BoolSet::new(
            self.may_be_true || other.may_be_true,
            self.may_be_false || other.may_be_false,
        )
    }

    pub fn leq(self, other: BoolSet) -> bool {
        self.lub(other) == other
    }

    pub fn and(self, other: BoolSet) -> BoolSet {
        if self.is_bottom() || other.is_bottom() {
            return BoolSet::BOTTOM;
        }
        BoolSet::new(
            self.may_be_true && other.may_be_true,
            self.may_be_false || other.may_be_false,
        )
    }

    pub fn or(self, other: BoolSet) -> BoolSet {
        !(!self).and(!other)
    }
}

impl core::ops::Not for BoolSet {
    type Output = BoolSet;

    fn not(self) -> BoolSet {
        BoolSet::new(self.may_be_false, self.may_be_true)
    }
}

impl From<bool> for BoolSet {
    fn from(b: bool) -> BoolSet {
        BoolSet::new(b, !b)
    }
}

impl fmt::Display for BoolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.may_be_true, self.may_be_false) {
            (false, false) => f.write_str("{}"),
            (true, false) => f.write_str("{true}"),
            (false, true) => f.write_str("{false}"),
            (true, true) => f.write_str("{true, false}"),
        }
    }
}
