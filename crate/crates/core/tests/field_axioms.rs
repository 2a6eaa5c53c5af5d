mod common;

use common::props::field_axioms;
use common::{cyclo, fp, small_rational};
use heis8::exactmath::{field_op, ArithError, Field, FieldOp, Fp, CERT_PRIMES};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rationals(a in small_rational(), b in small_rational(), c in small_rational()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn prime_fields(k in 0..CERT_PRIMES.len(), seed in any::<[i64; 3]>()) {
        let p = CERT_PRIMES[k];
        let [a, b, c] = seed.map(|v| Fp::new(v, p).unwrap());
        field_axioms(&a, &b, &c)?;
        // Fermat
        if !a.is_zero() {
            prop_assert!(a.pow(p - 1).is_one());
        }
    }

    #[test]
    fn gf2(a in fp(2), b in fp(2), c in fp(2)) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn cyclotomic(a in cyclo(), b in cyclo(), c in cyclo()) {
        field_axioms(&a, &b, &c)?;
    }

    #[test]
    fn mixed_moduli_are_rejected(a in fp(17), b in fp(41)) {
        prop_assert_eq!(
            field_op(FieldOp::Add, &a, &b),
            Err(ArithError::ModulusMismatch { left: 17, right: 41 })
        );
    }
}
