use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{xi_pow_trivial, ArithError, Field};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub(crate) fn q0() -> Rational {
    Zero::zero()
}

pub(crate) fn q1() -> Rational {
    One::one()
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field for Rational {
    type Params = ();

    fn params(&self) {}

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_i64(n: i64, _: &()) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &Rational, _: &()) -> Result<Self, ArithError> {
        Ok(q.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn inv(&self) -> Result<Self, ArithError> {
        if Zero::is_zero(self) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn xi_pow(k: i64, params: &()) -> Option<Self> {
        xi_pow_trivial(k, params)
    }

    fn field_name(_: &()) -> String {
        "Q".to_string()
    }

    fn size_hint(&self) -> usize {
        (self.numer().abs().bits() + self.denom().bits()) as usize
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = rational(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        let z = rational(0, 5);
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(z, <Rational as Field>::zero(&()));
    }

    #[test]
    fn xi_powers_available_over_q() {
        assert_eq!(Rational::xi_pow(4, &()), Some(rational(-1, 1)));
        assert_eq!(Rational::xi_pow(-8, &()), Some(rational(1, 1)));
        assert_eq!(Rational::xi_pow(2, &()), None);
    }
}
