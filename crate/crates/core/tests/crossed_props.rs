use nc_workbench::crossed::{CrossedModel, HaagerupSymbol};
use nc_workbench::linalg::c;
use nc_workbench::matrixalg::{Element, TracedAlgebra};
use nc_workbench::ncnorms::orlicz_luxemburg;
use nc_workbench::random;
use nc_workbench::young::YoungFunction;
use proptest::prelude::*;

fn small_model() -> CrossedModel {
    CrossedModel::new(TracedAlgebra::matrix(2), -5.0, 0.05, 400).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn theta_is_a_group(seed in any::<u64>(), a in -30i32..30, b in -30i32..30) {
        let m = small_model();
        let g = Element::from_matrix(random::matrix(&mut random::rng(seed), 2));
        let x = m.scalar_field_on(100, 300, |t| t.sin() + 2.0, &g).unwrap();
        let (s, r) = (a as f64 * m.delta(), b as f64 * m.delta());
        let lhs = m.theta(s, &m.theta(r, &x).unwrap()).unwrap();
        let rhs = m.theta(s + r, &x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_scales_under_theta(seed in any::<u64>(), k in -40i32..40) {
        let m = small_model();
        let g = Element::from_matrix(random::matrix(&mut random::rng(seed), 2));
        let x = m.scalar_field_on(120, 280, |t| (0.7 * t).cos() + 1.5, &g).unwrap();
        let s = k as f64 * m.delta();
        let want = m.trace_tau(&x) * c((-s).exp());
        let got = m.trace_tau(&m.theta(s, &x).unwrap());
        prop_assert!((got - want).norm() <= 1e-12 * want.norm().max(1e-300));
    }

    #[test]
    fn invariance_singles_out_constant_fields(seed in any::<u64>(), w in 0.05..2.0f64) {
        let m = small_model();
        let g = Element::from_matrix(random::matrix(&mut random::rng(seed), 2));
        let shifts = [-0.5, 0.25, 1.0];
        let constant = m.scalar_field_on(50, 350, |_| 3.0, &g).unwrap();
        prop_assert_eq!(m.invariance_residual(&constant, &shifts).unwrap(), 0.0);
        let moving = m.scalar_field_on(50, 350, |t| 2.0 + (w * t).sin(), &g).unwrap();
        prop_assert!(m.invariance_residual(&moving, &shifts).unwrap() > 1e-3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn haagerup_norm_matches_tracial_norm(seed in any::<u64>(), i in 0..3usize) {
        let m = CrossedModel::new(TracedAlgebra::matrix(2), -20.0, 0.02, 2001).unwrap();
        let g = Element::from_matrix(random::positive(&mut random::rng(seed), 2, 0.1));
        let psi = [YoungFunction::power(2.0).unwrap(), YoungFunction::power(3.0).unwrap(), YoungFunction::cosh_m1()][i].clone();
        let want = orlicz_luxemburg(m.base(), &g, &psi).unwrap().value;
        let emb = m.embed_tracial(&HaagerupSymbol { g, psi }).unwrap();
        let got = m.haagerup_norm(&emb.element).unwrap().value;
        prop_assert!((got - want).abs() <= 2.0 * m.delta() * want + emb.mass_defect, "{got} vs {want}");
    }
}
