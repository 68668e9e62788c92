use kravchuk_core::derivations::{
    cayley_k1, cayley_k2, dixmier_sigma, dk1_power_closed, dk2_power_closed, Derivation, DerivationKind, Slice,
};
use kravchuk_core::identities::{
    classify, hankel, i_element, phi_derivation_constant, sigma_k2_image, Classification,
};
use kravchuk_core::intertwine::{build_psi, PsiKind};
use kravchuk_core::arith::rat;
use kravchuk_core::poly::{determinant, Polynomial};

const K1: DerivationKind = DerivationKind::Kravchuk1;
const K2: DerivationKind = DerivationKind::Kravchuk2;

fn assert_theorem(kind: DerivationKind, p: &Polynomial, n: usize) {
    let d = Derivation::build(kind, n.max(1)).unwrap();
    assert!(d.is_in_kernel(p).unwrap(), "{p} not in ker {kind}");
    let r = classify(p, n, None).unwrap();
    assert!(r.classification.admissible(kind), "{kind}: {p} classified {}", r.classification);
}

#[test]
fn cayley_elements_are_kernel_elements() {
    for n in 2..=12 {
        assert_theorem(K1, &cayley_k1(n).unwrap(), n);
        assert_theorem(K2, &cayley_k2(n).unwrap().numerator, n);
    }
}

#[test]
fn dixmier_images_are_killed() {
    let n = 8;
    for kind in [K1, K2] {
        let d = Derivation::build(kind, n).unwrap();
        let slice = Slice::standard(&d).unwrap();
        for i in 0..=n {
            let s = dixmier_sigma(&d, i, &slice).unwrap();
            assert!(d.apply(s.numerator()).unwrap().is_zero(), "{kind} sigma(x{i})");
        }
    }
}

#[test]
fn closed_powers_match_iteration() {
    let n_max = 12;
    let d1 = Derivation::build(K1, n_max).unwrap();
    let d2 = Derivation::build(K2, n_max).unwrap();
    for n in 1..=n_max {
        let xn = Polynomial::x(n);
        let (mut p1, mut p2) = (xn.clone(), xn);
        for k in 1..=n {
            p1 = d1.apply(&p1).unwrap();
            p2 = d2.apply(&p2).unwrap();
            let c1 = dk1_power_closed(n, k).unwrap();
            assert_eq!(c1.per_application, rat(1, 2));
            assert_eq!(Polynomial::linear(&c1.coeffs), p1, "D_K1^{k}(x{n})");
            assert_eq!(Polynomial::linear(&dk2_power_closed(n, k).unwrap()), p2, "D_K2^{k}(x{n})");
        }
    }
}

#[test]
fn transported_weitzenbock_kernel_elements() {
    let mut elements = Vec::new();
    for n in 1..=3 {
        elements.push((i_element(n).unwrap(), 2 * n));
        elements.push((determinant(&hankel(n).unwrap()).unwrap(), 2 * n));
    }
    for (p, n) in elements {
        for (kind, dk) in [(PsiKind::Ak1, K1), (PsiKind::Ak2, K2)] {
            let image = build_psi(kind, n).unwrap().apply(&p).unwrap();
            assert_theorem(dk, &image, n);
        }
    }
}

#[test]
fn phi_turns_derivations_into_partials() {
    assert_eq!(phi_derivation_constant(K2, 8, 3).unwrap(), Some(rat(1, 1)));
    assert_eq!(phi_derivation_constant(K1, 8, 3).unwrap(), Some(rat(-1, 2)));
}

#[test]
fn sigma_k2_images_only_depend_on_x() {
    for n in 2..=10 {
        let image = sigma_k2_image(n).unwrap();
        assert!(matches!(
            Classification::of(&image),
            Classification::Constant | Classification::OnlyX
        ));
    }
}
