//! Exact coefficient fields: rationals, prime fields and the cyclotomic
//! field of 8th roots of unity, all behind the [`Field`] contract.
//!
//! Nothing in this module rounds. Values are immutable and `Send + Sync`.

mod cyclo;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use cyclo::{embed_cyclo_mod_p, CycloNum};
pub use prime::{find_order8_root, is_prime, Fp, Modulus, CERT_PRIMES};
pub use rational::{rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: GF({left}) vs GF({right})")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is not congruent to 1 mod 8")]
    BadPrime(u64),
    #[error("{root} does not have multiplicative order 8 modulo {p}")]
    BadRoot { root: u64, p: u64 },
    #[error("a denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),
    #[error("value {0} does not lie in the target field")]
    NotInField(String),
}

/// An element of an exact field.
///
/// `Params` carries whatever is needed to build constants of the same field
/// (the modulus for GF(p), nothing for the characteristic-zero fields).
/// The binary operations assume both operands live in the same field and
/// panic otherwise; [`field_op`] is the checked entry point.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    type Params: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static;

    fn params(&self) -> Self::Params;
    fn zero(params: &Self::Params) -> Self;
    fn one(params: &Self::Params) -> Self;
    fn from_i64(n: i64, params: &Self::Params) -> Self;
    fn from_rational(q: &Rational, params: &Self::Params) -> Result<Self, ArithError>;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;

    /// `ξ^k` for a fixed primitive 8th root of unity `ξ`, if the field
    /// contains that power.
    fn xi_pow(k: i64, params: &Self::Params) -> Option<Self>;

    /// Short description such as `Q`, `Q(xi8)` or `GF(17)`.
    fn field_name(params: &Self::Params) -> String;

    /// Rough bit size of the element; pivot heuristics prefer small values.
    fn size_hint(&self) -> usize {
        0
    }

    /// Errors if `self` and `other` belong to different fields.
    fn check_compatible(&self, _other: &Self) -> Result<(), ArithError> {
        Ok(())
    }

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.params())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.params());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary field operation with the uniform error contract.
pub fn field_op<F: Field>(op: FieldOp, a: &F, b: &F) -> Result<F, ArithError> {
    a.check_compatible(b)?;
    Ok(match op {
        FieldOp::Add => a.add(b),
        FieldOp::Sub => a.sub(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Div => a.div(b)?,
    })
}

/// Checked inverse.
pub fn field_inverse<F: Field>(a: &F) -> Result<F, ArithError> {
    a.inv()
}

/// Powers of ξ that exist in every field of characteristic ≠ 2: `ξ^0 = 1`, `ξ^4 = -1`.
pub(crate) fn xi_pow_trivial<F: Field>(k: i64, params: &F::Params) -> Option<F> {
    match k.rem_euclid(8) {
        0 => Some(F::one(params)),
        4 => Some(F::one(params).neg()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_op_reports_mismatch_and_zero_division() {
        let a = Fp::new(3, 17).unwrap();
        let b = Fp::new(3, 41).unwrap();
        assert_eq!(
            field_op(FieldOp::Add, &a, &b),
            Err(ArithError::ModulusMismatch {
                left: 17,
                right: 41
            })
        );
        let z = Fp::new(0, 17).unwrap();
        assert_eq!(
            field_op(FieldOp::Div, &a, &z),
            Err(ArithError::DivisionByZero)
        );
        let q = rational(1, 2);
        assert_eq!(
            field_op(FieldOp::Div, &q, &rational(0, 1)),
            Err(ArithError::DivisionByZero)
        );
        assert_eq!(
            field_op(FieldOp::Mul, &q, &rational(4, 1)).unwrap(),
            rational(2, 1)
        );
    }

    #[test]
    fn generic_pow() {
        let two = Fp::new(2, 17).unwrap();
        assert_eq!(two.pow(8).value(), 1);
        assert_eq!(rational(2, 3).pow(3), rational(8, 27));
    }
}
