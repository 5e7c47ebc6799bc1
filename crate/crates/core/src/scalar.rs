//! Exact coefficient fields.
//!
//! Everything in this crate is generic over [`Scalar`], a characteristic-zero
//! field with exact equality. Two implementations ship: [`Rational`] (ℚ) and
//! [`GaussianRational`](crate::GaussianRational) (ℚ(i)).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A characteristic-zero field with exact arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;

    fn from_rational(q: Rational) -> Self;

    /// Image under the embedding into ℚ(i).
    fn to_gaussian(&self) -> crate::GaussianRational;

    /// Exact square root inside the field, if one exists.
    fn sqrt_exact(&self) -> Option<Self>;

    /// Integer power. `0^0 = 1`; negative exponents invert.
    fn powi(&self, exp: i64) -> Self {
        if exp < 0 {
            return Self::one() / self.powi(-exp);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        result
    }
}

/// Square root of a non-negative integer when it is a perfect square.
pub(crate) fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Square root of a non-negative rational when it is a perfect square.
pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let num = isqrt_exact(q.numer())?;
    let den = isqrt_exact(q.denom())?;
    Some(Rational::new(num, den))
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_gaussian(&self) -> crate::GaussianRational {
        crate::GaussianRational::from(self.clone())
    }

    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(q(9, 4).sqrt_exact(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-1, 1).sqrt_exact(), None);
        assert_eq!(Rational::zero().sqrt_exact(), Some(Rational::zero()));
    }

    #[test]
    fn powers() {
        assert_eq!(q(2, 3).powi(3), q(8, 27));
        assert_eq!(q(2, 3).powi(-2), q(9, 4));
        assert_eq!(Rational::zero().powi(0), Rational::one());
    }
}
