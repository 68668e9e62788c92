use std::collections::BTreeMap;

use kravchuk_core::arith::{rat, Rational};
use kravchuk_core::derivations::{Derivation, DerivationKind};
use kravchuk_core::identities::phi_k;
use kravchuk_core::poly::{bareiss_determinant, cofactor_determinant, Monomial, Polynomial, Variable};
use proptest::prelude::*;

const MAX_INDEX: u32 = 5;

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0..=MAX_INDEX, 1u32..=3), 0..=3)
        .prop_map(|f| Monomial::from_pairs(f.into_iter().map(|(i, e)| (Variable::Indexed(i), e))))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((coeff(), monomial()), 0..=5).prop_map(Polynomial::from_terms)
}

fn kind() -> impl Strategy<Value = DerivationKind> {
    prop_oneof![
        Just(DerivationKind::Weitzenbock),
        Just(DerivationKind::Kravchuk1),
        Just(DerivationKind::Kravchuk2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Polynomial::one(), p.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }

    #[test]
    fn phi_is_a_homomorphism(p in poly(), q in poly()) {
        let n = MAX_INDEX as usize;
        let pq = phi_k(&(&p * &q), n).unwrap();
        prop_assert_eq!(pq, &phi_k(&p, n).unwrap() * &phi_k(&q, n).unwrap());
        prop_assert_eq!(phi_k(&(&p + &q), n).unwrap(), &phi_k(&p, n).unwrap() + &phi_k(&q, n).unwrap());
    }

    #[test]
    fn leibniz(k in kind(), p in poly(), q in poly()) {
        let d = Derivation::build(k, MAX_INDEX as usize).unwrap();
        let lhs = d.apply(&(&p * &q)).unwrap();
        let rhs = &(&d.apply(&p).unwrap() * &q) + &(&p * &d.apply(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_multiplicative(p in poly(), q in poly(), img in poly()) {
        let mut b = BTreeMap::new();
        b.insert(Variable::Indexed(0), img);
        let lhs = (&p * &q).substitute_partial(&b);
        prop_assert_eq!(lhs, &p.substitute_partial(&b) * &q.substitute_partial(&b));
    }

    #[test]
    fn bareiss_matches_cofactor_3(entries in prop::collection::vec(poly(), 9)) {
        let m: Vec<Vec<Polynomial>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        prop_assert_eq!(bareiss_determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bareiss_matches_cofactor_4(entries in prop::collection::vec(poly(), 16)) {
        let m: Vec<Vec<Polynomial>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        prop_assert_eq!(bareiss_determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
    }
}
