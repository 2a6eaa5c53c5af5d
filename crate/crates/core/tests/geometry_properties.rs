use heis8::exactmath::{CycloNum, Field, Rational};
use heis8::geometry::{build_system, ideal_invariance, MinusPlanePoint};
use heis8::heisenberg::HeisenbergElement as H;
use proptest::prelude::*;

fn base_point() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-10i64..=10).prop_filter("nonzero", |y| *y != [0, 0, 0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn quadrics_are_an_h8_stable_span(y in base_point()) {
        let sys = build_system(&MinusPlanePoint::<CycloNum>::from_ints(y, &()).unwrap()).unwrap();
        prop_assert!(ideal_invariance(&sys).unwrap().iter().all(Option::is_some));
    }

    #[test]
    fn base_point_and_its_translates_lie_on_v(y in base_point(), a in 0i64..8, b in 0i64..8) {
        let sys = build_system(&MinusPlanePoint::<CycloNum>::from_ints(y, &()).unwrap()).unwrap();
        let g = H::new(a, b, 0);
        prop_assert!(sys.contains(&g.act_on_point(&sys.base_point().embed()).unwrap()).unwrap());
    }

    #[test]
    fn quadrics_are_sigma_translates(y in base_point()) {
        let sys = build_system(&MinusPlanePoint::<Rational>::from_ints(y, &()).unwrap()).unwrap();
        let q = sys.quadrics();
        for i in 0..4 {
            prop_assert!(q[i].is_homogeneous() && q[i].degree().is_none_or(|d| d == 2));
            prop_assert_eq!(&H::SIGMA.pow(i as u64).act_on_poly(&q[0]).unwrap(), &q[i]);
        }
        prop_assert!(sys.base_point().coords().iter().any(|c| !Field::is_zero(c)));
    }
}
