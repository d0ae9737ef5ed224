use nc_workbench::linalg::c;
use nc_workbench::matrixalg::{Element, TracedAlgebra};
use nc_workbench::ncnorms::{entropy_tracial, lp_norm, orlicz_dual_norm, orlicz_luxemburg, EpsGrid};
use nc_workbench::random;
use nc_workbench::young::YoungFunction;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn norms_are_unitarily_invariant(seed in any::<u64>(), p in 1.0..5.0f64) {
        let mut rng = random::rng(seed);
        let alg = TracedAlgebra::matrix(3);
        let a = Element::from_matrix(random::matrix(&mut rng, 3));
        let (u, v) = (random::unitary(&mut rng, 3), random::unitary(&mut rng, 3));
        let b = Element::from_matrix(&u * a.block(0) * &v);
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(1.0);
        prop_assert!(close(lp_norm(&alg, &a, p).unwrap().value, lp_norm(&alg, &b, p).unwrap().value));
        for psi in YoungFunction::catalog() {
            prop_assert!(close(
                orlicz_luxemburg(&alg, &a, &psi).unwrap().value,
                orlicz_luxemburg(&alg, &b, &psi).unwrap().value
            ));
            prop_assert!(close(
                orlicz_dual_norm(&alg, &a, &psi).unwrap().value,
                orlicz_dual_norm(&alg, &b, &psi).unwrap().value
            ));
        }
    }

    #[test]
    fn luxemburg_constraint_is_met_at_the_norm(seed in any::<u64>(), i in 0..6usize) {
        let mut rng = random::rng(seed);
        let alg = TracedAlgebra::matrix(4);
        let a = Element::from_matrix(random::matrix(&mut rng, 4));
        let psi = &YoungFunction::catalog()[i];
        let norm = orlicz_luxemburg(&alg, &a, psi).unwrap().value;
        let abs_a = alg.singular_levels(&a).unwrap();
        let modular: f64 = abs_a.iter().map(|l| l.weight * psi.evaluate(l.value / norm).unwrap()).sum();
        prop_assert!(modular <= 1.0 + 1e-8, "τ(Ψ(|a|/‖a‖)) = {modular}");
    }

    #[test]
    fn orlicz_and_luxemburg_norms_are_equivalent(seed in any::<u64>(), i in 0..6usize) {
        let alg = TracedAlgebra::matrix(3);
        let a = Element::from_matrix(random::matrix(&mut random::rng(seed), 3));
        let psi = &YoungFunction::catalog()[i];
        let lux = orlicz_luxemburg(&alg, &a, psi).unwrap().value;
        let orl = orlicz_dual_norm(&alg, &a, psi).unwrap().value;
        prop_assert!(lux <= orl * (1.0 + 1e-9) && orl <= 2.0 * lux * (1.0 + 1e-9), "{lux} {orl}");
    }

    #[test]
    fn entropy_reduction(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let alg = TracedAlgebra::matrix(5);
        let f = Element::from_matrix(random::positive(&mut rng, 5, 0.01));
        let rep = entropy_tracial(&alg, &f, &EpsGrid::default()).unwrap();
        prop_assert!(rep.residual <= 1e-6);
    }

    #[test]
    fn lp_norm_is_homogeneous(seed in any::<u64>(), s in 0.1..10.0f64) {
        let alg = TracedAlgebra::matrix(3);
        let a = Element::from_matrix(random::matrix(&mut random::rng(seed), 3));
        let n1 = lp_norm(&alg, &a.scale(c(s)), 2.5).unwrap().value;
        let n0 = lp_norm(&alg, &a, 2.5).unwrap().value;
        prop_assert!((n1 - s * n0).abs() <= 1e-12 * n1);
    }
}
