use core::fmt;
use core::ops::Add;

/// An integer valuation that is either certified exactly or only bounded
/// below. Units depend on the ring that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(i64),
    AtLeast(i64),
    /// Valuation of the exact zero.
    Infinite,
}

impl Valuation {
    /// The value (exact or lower bound); `None` for `Infinite`.
    pub fn value(self) -> Option<i64> {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Valuation::AtLeast(_))
    }

    /// Whether `self >= bound` is certified: `Some(true)` if proven,
    /// `Some(false)` if refuted, `None` if precision is insufficient.
    pub fn certifies_at_least(self, bound: i64) -> Option<bool> {
        match self {
            Valuation::Infinite => Some(true),
            Valuation::Exact(v) => Some(v >= bound),
            Valuation::AtLeast(v) if v >= bound => Some(true),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Scales the value by a positive factor (change of normalization).
    pub fn scale(self, k: i64) -> Self {
        debug_assert!(k > 0);
        match self {
            Valuation::Exact(v) => Valuation::Exact(v * k),
            Valuation::AtLeast(v) => Valuation::AtLeast(v * k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

/// Shifting by a known integer keeps exactness.
impl Add<i64> for Valuation {
    type Output = Valuation;

    fn add(self, shift: i64) -> Valuation {
        match self {
            Valuation::Exact(v) => Valuation::Exact(v + shift),
            Valuation::AtLeast(v) => Valuation::AtLeast(v + shift),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certification() {
        assert_eq!(Valuation::Exact(11).certifies_at_least(11), Some(true));
        assert_eq!(Valuation::Exact(9).certifies_at_least(11), Some(false));
        assert_eq!(Valuation::AtLeast(12).certifies_at_least(11), Some(true));
        assert_eq!(Valuation::AtLeast(6).certifies_at_least(11), None);
        assert_eq!(Valuation::Infinite.certifies_at_least(i64::MAX), Some(true));
        assert_eq!(Valuation::AtLeast(4) + -3, Valuation::AtLeast(1));
    }
}
