use nc_workbench::linalg::C64;
use nc_workbench::weyl::net::DoubleCone;
use nc_workbench::weyl::propagator::SymplecticSpace;
use nc_workbench::weyl::{Symplectic, TestFunction, WeylElement};
use proptest::prelude::*;

fn space() -> SymplecticSpace {
    SymplecticSpace::new(48, 48, 0.1, 0.1, 1.0, 0.0).unwrap()
}

fn bump() -> impl Strategy<Value = TestFunction> {
    (14.0..34.0f64, 14.0..34.0f64, 3.0..8.0f64, 0.2..2.0f64)
        .prop_map(|(t, x, r, a)| DoubleCone::new(t, x, r).unwrap().bump(a))
}

fn element() -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((bump(), -1.0..1.0f64, -1.0..1.0f64), 1..3).prop_map(|terms| {
        terms.into_iter().fold(WeylElement::zero(), |acc, (f, re, im)| acc.add(&WeylElement::term(f, C64::new(re, im))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn generators_are_unitary(f in bump()) {
        let s = space();
        let w = WeylElement::generator(f);
        prop_assert_eq!(w.star().mul(&w, &s).unwrap(), WeylElement::unit());
        prop_assert_eq!(w.mul(&w.star(), &s).unwrap(), WeylElement::unit());
    }

    #[test]
    fn product_is_associative(x in element(), y in element(), z in element()) {
        let s = space();
        let left = x.mul(&y, &s).unwrap().mul(&z, &s).unwrap();
        let right = x.mul(&y.mul(&z, &s).unwrap(), &s).unwrap();
        prop_assert!(left.max_coeff_diff(&right) <= 1e-10);
    }

    #[test]
    fn sigma_is_antisymmetric_and_additive(f in bump(), g in bump(), h in bump()) {
        let s = space();
        prop_assert_eq!(s.sigma(&f, &g).unwrap(), -s.sigma(&g, &f).unwrap());
        let lhs = s.sigma(&f.add(&g), &h).unwrap();
        let rhs = s.sigma(&f, &h).unwrap() + s.sigma(&g, &h).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn sigma_is_translation_invariant(f in bump(), g in bump(), dn in -6i32..6, dj in -6i32..6) {
        let s = space();
        let moved = s.sigma(&f.translate(dn, dj), &g.translate(dn, dj)).unwrap();
        prop_assert_eq!(moved, s.sigma(&f, &g).unwrap());
    }
}
