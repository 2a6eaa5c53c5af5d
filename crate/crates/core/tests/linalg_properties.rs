mod common;

use common::props::{
    exterior_functoriality, membership_inputs_gf41, membership_inputs_rational, membership_replay,
    snf_inputs, snf_unimodular_invariance, wedge_inputs,
};
use common::small_rational;
use heis8::exactmath::{Field, Rational};
use heis8::linalg::{graded_membership, ExactMatrix, LinalgError};
use heis8::multipoly::SparsePoly;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_invariant(input in snf_inputs()) {
        snf_unimodular_invariance(input)?;
    }

    #[test]
    fn exterior_powers_are_functorial(input in wedge_inputs()) {
        exterior_functoriality(input)?;
    }

    #[test]
    fn rank_nullity_and_kernel(v in prop::collection::vec(small_rational(), 12), zero_row in 0usize..4) {
        let mut rows: Vec<Vec<Rational>> = v.chunks(4).map(<[Rational]>::to_vec).collect();
        // force a dependency now and then
        if zero_row < 3 {
            rows[zero_row] = rows[(zero_row + 1) % 3].clone();
        }
        let a = ExactMatrix::from_rows(&(), rows).unwrap();
        prop_assert_eq!(a.rank() + a.nullity(), 4);
        for k in a.kernel() {
            prop_assert!(a.mul_vec(&k).unwrap().iter().all(Field::is_zero));
        }
    }

    #[test]
    fn membership_replay_gf41(input in membership_inputs_gf41()) {
        membership_replay(input)?;
    }

    #[test]
    fn membership_replay_rationals(input in membership_inputs_rational()) {
        membership_replay(input)?;
    }
}

#[test]
fn non_member_is_reported() {
    let x = |i| SparsePoly::<Rational>::var(i, 3, &());
    let gens = [x(0).pow(2), x(1).pow(2)];
    assert_eq!(
        graded_membership(&gens, &x(2).pow(4)).unwrap_err(),
        LinalgError::NotInDegree { degree: 4 }
    );
}
