use heinz_core::ballharmonic::{uniform_on_sphere, BoundaryMap};
use heinz_core::verify::{
    schwarz_grid, verify_generalized_schwarz, CenteringFactor, FmMap, TrigMap,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn fm_maps_the_sphere_to_itself(n in 2usize..7, m in 2usize..1000, seed in 0u64..1000) {
        let f = FmMap::new(n, m).unwrap();
        for z in uniform_on_sphere::<f64>(n, 200, seed) {
            let v = f.eval_vec(&z);
            let len: f64 = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            prop_assert!((len - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn centering_factor_decreases(n in 2usize..20, a in 0.0_f64..1.0, b in 0.0_f64..1.0) {
        let c = CenteringFactor { n };
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        prop_assert!(c.eval(hi) < c.eval(lo));
    }

    #[test]
    fn random_maps_land_in_the_ball(n in 2usize..6, seed in 0u64..10_000, odd in any::<bool>()) {
        let f = TrigMap::<f64>::with_terms(n, 3, seed, odd);
        for z in uniform_on_sphere::<f64>(n, 500, seed ^ 1) {
            let v = f.eval_vec(&z);
            prop_assert!(v.iter().map(|c| c * c).sum::<f64>() <= 1.0 + 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reports_are_deterministic(n in 2usize..5, seed in 0u64..1000) {
        let map = TrigMap::<f64>::random(n, seed);
        let grid = schwarz_grid(n, &[0.3, 0.9], 2, seed).unwrap();
        let a = verify_generalized_schwarz(&map, n, &grid, 5000, seed).unwrap();
        let b = verify_generalized_schwarz(&map, n, &grid, 5000, seed).unwrap();
        prop_assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        prop_assert!(a.pass());
    }
}
