//! Property bodies shared by the property suites and the acceptance run.

use heis8::exactmath::{ArithError, Field, Fp, Rational};
use heis8::linalg::{exterior_power, graded_membership, smith_normal_form, ExactMatrix, IntMatrix};
use heis8::multipoly::{PolyMatrix, SparsePoly};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{fp, gf41, homogeneous, poly, small_rational};

pub type Check = Result<(), TestCaseError>;

pub fn field_axioms<F: Field>(a: &F, b: &F, c: &F) -> Check {
    let params = a.params();
    prop_assert_eq!(a.add(b), b.add(a));
    prop_assert_eq!(a.mul(b), b.mul(a));
    prop_assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    prop_assert_eq!(&a.add(&F::zero(&params)), a);
    prop_assert_eq!(&a.mul(&F::one(&params)), a);
    prop_assert!(a.add(&a.neg()).is_zero());
    prop_assert_eq!(a.sub(b), a.add(&b.neg()));
    if a.is_zero() {
        prop_assert_eq!(a.inv(), Err(ArithError::DivisionByZero));
    } else {
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        prop_assert_eq!(&b.div(a).unwrap().mul(a), b);
    }
    Ok(())
}

pub fn p41(terms: usize) -> impl Strategy<Value = SparsePoly<Fp>> {
    poly(4, terms, 4, gf41(), fp(41))
}

pub fn eval_inputs(
) -> impl Strategy<Value = (SparsePoly<Fp>, SparsePoly<Fp>, Vec<SparsePoly<Fp>>, Vec<Fp>)> {
    (
        p41(6),
        p41(6),
        prop::collection::vec(p41(3), 4),
        prop::collection::vec(fp(41), 4),
    )
}

pub fn eval_homomorphism(
    (p, q, images, v): (SparsePoly<Fp>, SparsePoly<Fp>, Vec<SparsePoly<Fp>>, Vec<Fp>),
) -> Check {
    let e = |f: &SparsePoly<Fp>| f.eval(&v).unwrap();
    prop_assert_eq!(e(&(&p + &q)), e(&p).add(&e(&q)));
    prop_assert_eq!(e(&(&p - &q)), e(&p).sub(&e(&q)));
    prop_assert_eq!(e(&(&p * &q)), e(&p).mul(&e(&q)));
    prop_assert_eq!(e(&p.pow(3)), e(&p).pow(3));
    // substitute then evaluate = evaluate the images, then evaluate
    let w: Vec<Fp> = images.iter().map(e).collect();
    prop_assert_eq!(e(&p.substitute(&images).unwrap()), p.eval(&w).unwrap());
    Ok(())
}

pub fn skew_inputs() -> impl Strategy<Value = Vec<SparsePoly<Fp>>> {
    prop::collection::vec(p41(3), 6)
}

pub fn pfaffian_squared_is_det(upper: Vec<SparsePoly<Fp>>) -> Check {
    let m = gf41();
    // upper[k] sits at the k-th pair (i, j), i < j, in lexicographic order
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let entry = |i: usize, j: usize| match pairs.iter().position(|&p| p == (i.min(j), i.max(j))) {
        Some(k) if i < j => upper[k].clone(),
        Some(k) => -&upper[k],
        None => SparsePoly::zero(4, &m),
    };
    let a = PolyMatrix::from_fn(4, 4, entry);
    prop_assert!(a.is_skew_symmetric());
    prop_assert_eq!(a.pfaffian4().unwrap().pow(2), a.det().unwrap());
    Ok(())
}

/// Product of elementary integer operations: `(i, j, k)` adds `k` times row
/// `j` to row `i`, swaps the rows when `k == 0`, negates row `i` when `i == j`.
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            m[i].iter_mut().for_each(|x| *x = -*x);
        } else if k == 0 {
            m.swap(i, j);
        } else {
            let rj = m[j].clone();
            m[i].iter_mut().zip(&rj).for_each(|(a, b)| *a += k * b);
        }
    }
    IntMatrix::from_i64_rows(&m).unwrap()
}

pub type Ops = Vec<(usize, usize, i64)>;

pub fn snf_inputs() -> impl Strategy<Value = (IntMatrix, Ops, Ops)> {
    let ops = || prop::collection::vec((0usize..8, 0usize..8, -3i64..4), 0..8);
    let a = prop::collection::vec(-9i64..10, 12)
        .prop_map(|v| IntMatrix::from_fn(3, 4, |i, j| BigInt::from(v[i * 4 + j])));
    (a, ops(), ops())
}

pub fn snf_unimodular_invariance((a, l, r): (IntMatrix, Ops, Ops)) -> Check {
    let s = smith_normal_form(&a);
    prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
    for i in 0..3 {
        for j in 0..4 {
            prop_assert!(i == j || s.d.get(i, j).is_zero());
        }
    }
    for w in s.invariant_factors.windows(2) {
        prop_assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
    }
    let moved = unimodular(3, &l)
        .mul(&a)
        .unwrap()
        .mul(&unimodular(4, &r))
        .unwrap();
    prop_assert_eq!(
        smith_normal_form(&moved).invariant_factors,
        s.invariant_factors
    );
    Ok(())
}

pub fn matrix41(n: usize) -> impl Strategy<Value = ExactMatrix<Fp>> {
    prop::collection::vec(fp(41), n * n)
        .prop_map(move |v| ExactMatrix::from_fn(n, n, &gf41(), |i, j| v[i * n + j]))
}

pub fn wedge_inputs() -> impl Strategy<Value = (ExactMatrix<Fp>, ExactMatrix<Fp>, usize)> {
    (matrix41(4), matrix41(4), 1usize..=4)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn exterior_functoriality((a, b, k): (ExactMatrix<Fp>, ExactMatrix<Fp>, usize)) -> Check {
    let lhs = exterior_power(&a.mul(&b).unwrap(), k).unwrap();
    let rhs = exterior_power(&a, k)
        .unwrap()
        .mul(&exterior_power(&b, k).unwrap())
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    let id = ExactMatrix::<Fp>::identity(4, &gf41());
    prop_assert_eq!(
        exterior_power(&id, k).unwrap(),
        ExactMatrix::identity(binom(4, k), &gf41())
    );
    // the top power is the determinant
    prop_assert_eq!(*exterior_power(&a, 4).unwrap().get(0, 0), a.det().unwrap());
    Ok(())
}

pub type Gens<F> = (Vec<SparsePoly<F>>, Vec<SparsePoly<F>>);

pub fn membership_inputs_gf41() -> impl Strategy<Value = Gens<Fp>> {
    (
        prop::collection::vec(homogeneous(4, 2, 4, gf41(), fp(41)), 3),
        prop::collection::vec(homogeneous(4, 2, 4, gf41(), fp(41)), 3),
    )
}

pub fn membership_inputs_rational() -> impl Strategy<Value = Gens<Rational>> {
    (
        prop::collection::vec(homogeneous(4, 2, 3, (), small_rational()), 3),
        prop::collection::vec(homogeneous(4, 1, 3, (), small_rational()), 3),
    )
}

/// A combination of the generators is found in the ideal and the
/// certificate replays to it exactly.
pub fn membership_replay<F: Field>((gens, mult): Gens<F>) -> Check {
    let params = gens[0].params().clone();
    let target = gens
        .iter()
        .zip(&mult)
        .fold(SparsePoly::zero(4, &params), |acc, (g, h)| &acc + &(g * h));
    if target.is_zero() {
        return Ok(());
    }
    let cert = graded_membership(&gens, &target).unwrap();
    prop_assert_eq!(cert.replay(&gens).unwrap(), target);
    Ok(())
}
