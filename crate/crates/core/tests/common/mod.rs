#![allow(dead_code)]

pub mod props;

use heis8::exactmath::{rational, CycloNum, Field, Fp, Modulus, Rational};
use heis8::multipoly::{monomials_of_degree, Monomial, SparsePoly};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> + Clone {
    (-60i64..60, 1i64..25).prop_map(|(n, d)| rational(n, d))
}

pub fn fp(p: u64) -> impl Strategy<Value = Fp> + Clone {
    (0..p as i64).prop_map(move |v| Fp::new(v, p).unwrap())
}

pub fn cyclo() -> impl Strategy<Value = CycloNum> + Clone {
    prop::array::uniform4(-6i64..6).prop_map(CycloNum::from_ints)
}

/// Up to `terms` terms in `nvars` variables, each exponent below `max_exp`.
pub fn poly<F: Field>(
    nvars: usize,
    terms: usize,
    max_exp: u32,
    params: F::Params,
    coeff: impl Strategy<Value = F> + Clone,
) -> impl Strategy<Value = SparsePoly<F>> {
    prop::collection::vec((prop::collection::vec(0..max_exp, nvars), coeff), 0..=terms).prop_map(
        move |ts| {
            SparsePoly::from_terms(
                nvars,
                &params,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), c)),
            )
        },
    )
}

/// Homogeneous of degree `d` with up to `terms` terms.
pub fn homogeneous<F: Field>(
    nvars: usize,
    d: u32,
    terms: usize,
    params: F::Params,
    coeff: impl Strategy<Value = F> + Clone,
) -> impl Strategy<Value = SparsePoly<F>> {
    let monos = monomials_of_degree(nvars, d);
    let n = monos.len();
    prop::collection::vec((0..n, coeff), 1..=terms).prop_map(move |ts| {
        SparsePoly::from_terms(nvars, &params, ts.into_iter().map(|(i, c)| (monos[i], c)))
    })
}

pub fn gf41() -> Modulus {
    Modulus::new(41).unwrap()
}
