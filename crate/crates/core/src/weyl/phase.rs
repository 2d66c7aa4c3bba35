//! Exact phases, stored as a reduced fraction of one full turn.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

/// A phase `e^{2πi·p/q}` stored as the reduced fraction `p/q` in `[0, 1)`.
///
/// Every constructor reduces and wraps into the canonical window, so two
/// phases are equal exactly when their fields are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase {
    numerator: i64,
    denominator: i64,
}

impl RationalPhase {
    pub const ZERO: Self = Self { numerator: 0, denominator: 1 };
    pub const HALF: Self = Self { numerator: 1, denominator: 2 };

    /// Build `numerator / denominator` turns, reduced mod 1.
    ///
    /// Panics if `denominator` is zero.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "phase denominator must be nonzero");
        Self::from_wide(numerator as i128, denominator as i128)
    }

    pub(crate) fn from_wide(numerator: i128, denominator: i128) -> Self {
        let (mut num, mut den) = (numerator, denominator);
        if den < 0 {
            num = -num;
            den = -den;
        }
        num = num.mod_floor(&den);
        let g = num.gcd(&den);
        let (num, den) = if g > 1 { (num / g, den / g) } else { (num, den) };
        Self {
            numerator: i64::try_from(num).expect("reduced numerator < denominator fits"),
            denominator: i64::try_from(den).expect("denominator overflow in phase arithmetic"),
        }
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// `k·φ` mod 1.
    pub fn scale(self, k: i64) -> Self {
        Self::from_wide(self.numerator as i128 * k as i128, self.denominator as i128)
    }

    /// The phase as a fraction of a turn, for numerical code only.
    pub fn turns(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `e^{2πi·φ}`, as `(re, im)`.
    pub fn to_unit(&self) -> (f64, f64) {
        // exact values for the quarter turns keep oracle comparisons clean
        match (self.numerator, self.denominator) {
            (0, 1) => (1.0, 0.0),
            (1, 2) => (-1.0, 0.0),
            (1, 4) => (0.0, 1.0),
            (3, 4) => (0.0, -1.0),
            _ => {
                let theta = std::f64::consts::TAU * self.turns();
                (theta.cos(), theta.sin())
            }
        }
    }
}

impl Default for RationalPhase {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RationalPhase {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (a, b) = (self.denominator as i128, rhs.denominator as i128);
        let l = a.lcm(&b);
        Self::from_wide(self.numerator as i128 * (l / a) + rhs.numerator as i128 * (l / b), l)
    }
}

impl Neg for RationalPhase {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_wide(-(self.numerator as i128), self.denominator as i128)
    }
}

impl Sub for RationalPhase {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_and_wraps() {
        assert_eq!(RationalPhase::new(2, 4), RationalPhase::HALF);
        assert_eq!(RationalPhase::new(-1, 2), RationalPhase::HALF);
        assert_eq!(RationalPhase::new(5, 4), RationalPhase::new(1, 4));
        assert_eq!(RationalPhase::new(3, -4), RationalPhase::new(1, 4));
        assert_eq!(RationalPhase::new(7, 7), RationalPhase::ZERO);
        assert_eq!(RationalPhase::new(0, 9).denominator(), 1);
    }

    #[test]
    fn half_plus_half_is_zero() {
        assert!((RationalPhase::HALF + RationalPhase::HALF).is_zero());
        assert_eq!(RationalPhase::new(1, 4) + RationalPhase::new(1, 6), RationalPhase::new(5, 12));
    }

    #[test]
    fn display() {
        assert_eq!(RationalPhase::HALF.to_string(), "1/2");
        assert_eq!(RationalPhase::ZERO.to_string(), "0");
    }

    proptest! {
        #[test]
        fn canonical_window(n in -1000i64..1000, d in 1i64..50) {
            let p = RationalPhase::new(n, d);
            prop_assert!(p.numerator() >= 0 && p.numerator() < p.denominator());
            prop_assert_eq!(p.numerator().gcd(&p.denominator()), 1);
        }

        #[test]
        fn group_laws(a in -100i64..100, b in -100i64..100, c in -100i64..100, d in 1i64..13) {
            let (x, y, z) = (RationalPhase::new(a, d), RationalPhase::new(b, d + 1), RationalPhase::new(c, 2 * d));
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert!((x + (-x)).is_zero());
            prop_assert_eq!(x.scale(3), x + x + x);
        }
    }
}
