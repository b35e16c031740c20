//! Exact scalars for the simplex tableau: a checked `i64` rational fast path
//! and arbitrary-precision rationals.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

/// Exact field operations that may refuse (return `None`) on overflow.
pub trait Scalar: Clone + PartialEq + Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_int(v: i64) -> Option<Self>;
    fn from_big(v: &Rational) -> Option<Self>;
    fn to_big(&self) -> Rational;
    fn checked_add(&self, rhs: &Self) -> Option<Self>;
    fn checked_sub(&self, rhs: &Self) -> Option<Self>;
    fn checked_mul(&self, rhs: &Self) -> Option<Self>;
    /// `rhs` must be nonzero.
    fn checked_div(&self, rhs: &Self) -> Option<Self>;
    fn checked_mul_int(&self, k: i64) -> Option<Self>;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn cmp_exact(&self, rhs: &Self) -> Ordering;
}

/// A rational `num/den` in lowest terms with `den > 0`, both fitting in
/// `i64` (excluding `i64::MIN`, so negation never overflows).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SmallRat {
    num: i64,
    den: i64,
}

fn narrow(v: i128) -> Option<i64> {
    if v == i128::from(i64::MIN) {
        return None;
    }
    i64::try_from(v).ok()
}

impl SmallRat {
    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Self::reduce(i128::from(num), i128::from(den))
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    fn reduce(mut num: i128, mut den: i128) -> Option<Self> {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Some(SmallRat { num: narrow(num)?, den: narrow(den)? })
    }
}

impl Scalar for SmallRat {
    fn nil() -> Self {
        SmallRat { num: 0, den: 1 }
    }

    fn unit() -> Self {
        SmallRat { num: 1, den: 1 }
    }

    fn from_int(v: i64) -> Option<Self> {
        (v != i64::MIN).then_some(SmallRat { num: v, den: 1 })
    }

    fn from_big(v: &Rational) -> Option<Self> {
        let num = v.numer().to_i64()?;
        let den = v.denom().to_i64()?;
        (num != i64::MIN).then_some(SmallRat { num, den })
    }

    fn to_big(&self) -> Rational {
        Rational::new_raw(BigInt::from(self.num), BigInt::from(self.den))
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        if self.den == rhs.den {
            return Self::reduce(i128::from(self.num) + i128::from(rhs.num), i128::from(self.den));
        }
        let g = self.den.gcd(&rhs.den);
        let (a, b) = (i128::from(self.den / g), i128::from(rhs.den / g));
        let num = i128::from(self.num).checked_mul(b)?.checked_add(i128::from(rhs.num).checked_mul(a)?)?;
        let den = a.checked_mul(i128::from(rhs.den))?;
        Self::reduce(num, den)
    }

    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(&SmallRat { num: -rhs.num, den: rhs.den })
    }

    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        if self.num == 0 || rhs.num == 0 {
            return Some(Self::nil());
        }
        // Cross-cancel first to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = i128::from(self.num / g1) * i128::from(rhs.num / g2);
        let den = i128::from(self.den / g2) * i128::from(rhs.den / g1);
        Some(SmallRat { num: narrow(num)?, den: narrow(den)? })
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        debug_assert!(rhs.num != 0);
        let inv = if rhs.num < 0 {
            SmallRat { num: -rhs.den, den: -rhs.num }
        } else {
            SmallRat { num: rhs.den, den: rhs.num }
        };
        self.checked_mul(&inv)
    }

    fn checked_mul_int(&self, k: i64) -> Option<Self> {
        self.checked_mul(&Self::from_int(k)?)
    }

    fn is_nil(&self) -> bool {
        self.num == 0
    }

    fn is_neg(&self) -> bool {
        self.num < 0
    }

    fn cmp_exact(&self, rhs: &Self) -> Ordering {
        (i128::from(self.num) * i128::from(rhs.den)).cmp(&(i128::from(rhs.num) * i128::from(self.den)))
    }
}

impl Scalar for Rational {
    fn nil() -> Self {
        Zero::zero()
    }

    fn unit() -> Self {
        num_traits::One::one()
    }

    fn from_int(v: i64) -> Option<Self> {
        Some(Rational::from_integer(v.into()))
    }

    fn from_big(v: &Rational) -> Option<Self> {
        Some(v.clone())
    }

    fn to_big(&self) -> Rational {
        self.clone()
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }

    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }

    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Some(self / rhs)
    }

    fn checked_mul_int(&self, k: i64) -> Option<Self> {
        Some(self * Rational::from_integer(k.into()))
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }

    fn cmp_exact(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_is_reported() {
        let huge = SmallRat::from_int(i64::MAX).unwrap();
        assert!(huge.checked_add(&huge).is_none());
        assert!(huge.checked_mul(&SmallRat::from_int(2).unwrap()).is_none());
        assert!(SmallRat::from_int(i64::MIN).is_none());
        let x = SmallRat::new(1, i64::MAX).unwrap();
        assert!(x.checked_add(&SmallRat::new(1, i64::MAX - 1).unwrap()).is_none());
    }

    #[test]
    fn reduces_to_lowest_terms() {
        let x = SmallRat::new(6, -4).unwrap();
        assert_eq!((x.numer(), x.denom()), (-3, 2));
    }

    proptest! {
        #[test]
        fn agrees_with_big(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = SmallRat::new(a, b).unwrap();
            let y = SmallRat::new(c, d).unwrap();
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!(x.checked_add(&y).unwrap().to_big(), &bx + &by);
            prop_assert_eq!(x.checked_sub(&y).unwrap().to_big(), &bx - &by);
            prop_assert_eq!(x.checked_mul(&y).unwrap().to_big(), &bx * &by);
            if c != 0 {
                prop_assert_eq!(x.checked_div(&y).unwrap().to_big(), &bx / &by);
            }
            prop_assert_eq!(x.cmp_exact(&y), bx.cmp(&by));
            prop_assert_eq!(SmallRat::from_big(&bx).unwrap(), x);
        }

        #[test]
        fn results_are_exact_or_refused(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let (Some(x), Some(y)) = (SmallRat::new(a, b), SmallRat::new(c, d)) else { return Ok(()) };
            let (bx, by) = (x.to_big(), y.to_big());
            if let Some(s) = x.checked_add(&y) { prop_assert_eq!(s.to_big(), &bx + &by); }
            if let Some(p) = x.checked_mul(&y) { prop_assert_eq!(p.to_big(), &bx * &by); }
            if !y.is_nil() {
                if let Some(q) = x.checked_div(&y) { prop_assert_eq!(q.to_big(), &bx / &by); }
            }
        }
    }
}
