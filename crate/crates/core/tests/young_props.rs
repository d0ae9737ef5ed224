use nc_workbench::ncnorms::gamma_p_bound;
use nc_workbench::numeric::log_space;
use nc_workbench::young::YoungFunction;
use proptest::prelude::*;

fn catalog_index() -> impl Strategy<Value = usize> {
    0..YoungFunction::catalog().len()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn hausdorff_young(i in catalog_index(), s in 0.0..50.0f64, t in 0.0..50.0f64) {
        let psi = &YoungFunction::catalog()[i];
        let rhs = psi.evaluate(s).unwrap() + psi.conjugate().evaluate(t).unwrap();
        prop_assert!(s * t <= rhs + 1e-9, "{s} * {t} > {rhs}");
    }

    #[test]
    fn biconjugate_is_the_original(i in catalog_index(), t in 0.0..8.0f64) {
        let psi = &YoungFunction::catalog()[i];
        let want = psi.evaluate(t).unwrap();
        let got = psi.conjugate().conjugate().evaluate(t).unwrap();
        prop_assert!((got - want).abs() <= 1e-6 * want.max(1.0), "{got} vs {want}");
    }

    #[test]
    fn fundamental_product_is_identity(i in catalog_index(), e in -4.0..4.0f64) {
        let psi = &YoungFunction::catalog()[i];
        let t = 10f64.powf(e);
        let prod = psi.fundamental_luxemburg(t).unwrap() * psi.conjugate().fundamental_orlicz(t).unwrap();
        prop_assert!((prod / t - 1.0).abs() <= 1e-9, "φ·φ̃ / t = {}", prod / t);
    }

    #[test]
    fn gamma_bound_feeds_through(p in 2.0..9.0f64, e in -6.0..6.0f64) {
        let t = 10f64.powf(e);
        let bound = gamma_p_bound(p).unwrap().bound;
        let phi = YoungFunction::cosh_m1().fundamental_luxemburg(t).unwrap();
        prop_assert!(t.powf(1.0 / p) <= bound * phi * (1.0 + 1e-12));
    }
}

#[test]
fn catalog_is_convex() {
    let grid = log_space(1e-3, 20.0, 400);
    for psi in YoungFunction::catalog() {
        assert!(psi.min_second_divided_difference(&grid) >= -1e-12, "{:?}", psi.kind());
    }
}
