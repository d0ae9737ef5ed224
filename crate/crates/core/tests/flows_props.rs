use nc_workbench::flows::TranslationSystem;
use nc_workbench::linalg::{max_abs, CMatrix};
use nc_workbench::random;
use proptest::prelude::*;

fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn deltas_are_commuting_star_derivations(seed in any::<u64>()) {
        let sys = TranslationSystem::qubits(3, 3).unwrap();
        let mut rng = random::rng(seed);
        let (a, b) = (random::matrix(&mut rng, 8), random::matrix(&mut rng, 8));
        for k in 0..3 {
            let d = |x: &CMatrix| sys.delta(k, x).unwrap();
            prop_assert!(max_abs(&(d(&(&a * &b)) - (d(&a) * &b + &a * d(&b)))) <= 1e-12);
            prop_assert!(max_abs(&(d(&a.adjoint()) - d(&a).adjoint())) <= 1e-12);
            for j in 0..3 {
                let jk = sys.delta(j, &d(&a)).unwrap();
                let kj = d(&sys.delta(j, &a).unwrap());
                prop_assert!(max_abs(&(jk - kj)) <= 1e-10);
            }
        }
    }

    #[test]
    fn alpha_is_a_group(seed in any::<u64>(), x in prop::array::uniform2(-2.0..2.0f64), y in prop::array::uniform2(-2.0..2.0f64)) {
        let sys = TranslationSystem::qubits(2, 2).unwrap();
        let a = random::matrix(&mut random::rng(seed), 4);
        let sum = [x[0] + y[0], x[1] + y[1]];
        let lhs = sys.alpha(&x, &sys.alpha(&y, &a).unwrap()).unwrap();
        prop_assert!(max_abs(&(lhs - sys.alpha(&sum, &a).unwrap())) <= 1e-12);
    }

    #[test]
    fn alpha_moves_at_most_linearly(seed in any::<u64>(), x in prop::array::uniform3(-1e-3..1e-3f64)) {
        let sys = TranslationSystem::qubits(3, 3).unwrap();
        let a = random::matrix(&mut random::rng(seed), 8);
        let moved = frobenius(&(sys.alpha(&x, &a).unwrap() - &a));
        let xmax = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let rate: f64 = (0..3).map(|k| frobenius(&sys.delta(k, &a).unwrap())).sum();
        prop_assert!(moved <= xmax * rate * (1.0 + 1e-9) + 1e-15);
    }
}
