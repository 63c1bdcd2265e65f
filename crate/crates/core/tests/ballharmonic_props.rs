use heinz_core::ballharmonic::{
    axisym_extension, mc_extension, random_orthogonal, AxisymProfile, BallPoint, FnProfile, Rotated,
    SignProfile, ZonalMap,
};
use heinz_core::heinz::u_profile;
use proptest::prelude::*;

fn cubic(a: f64, b: f64) -> impl Fn(f64) -> f64 + Sync {
    move |t: f64| a * t + b * t * t * t
}

proptest! {
    #[test]
    fn extension_is_linear(n in 2usize..7, r in 0.0_f64..0.97, a in -2.0_f64..2.0, b in -2.0_f64..2.0) {
        let h1 = FnProfile::new(|t: f64| t * t, vec![]);
        let h2 = SignProfile;
        let mix = FnProfile::new(move |t: f64| a * t * t + b * AxisymProfile::<f64>::value(&SignProfile, t), vec![0.0]);
        let p1 = axisym_extension(&h1, n, r, 1e-12).unwrap().value;
        let p2 = axisym_extension(&h2, n, r, 1e-12).unwrap().value;
        let pm = axisym_extension(&mix, n, r, 1e-12).unwrap().value;
        prop_assert!((pm - (a * p1 + b * p2)).abs() < 1e-9);
    }

    #[test]
    fn maximum_principle(n in 2usize..9, r in 0.0_f64..0.999, a in -1.0_f64..1.0) {
        let b = 1.0 - a.abs();
        let h = FnProfile::new(cubic(a, b), vec![]);
        let v = axisym_extension(&h, n, r, 1e-12).unwrap();
        prop_assert!(v.value.abs() <= 1.0 + v.error_bound);
    }

    #[test]
    fn series_matches_quadrature(n in 2usize..9, r in 0.05_f64..0.95) {
        let q = axisym_extension(&SignProfile, n, r, 1e-11).unwrap().value;
        let s = u_profile(n, r, 1e-12).unwrap().value;
        prop_assert!((q - s).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn monte_carlo_matches_quadrature(n in 2usize..5, r in 0.1_f64..0.9, seed in 0u64..1000) {
        let map: ZonalMap<f64> = ZonalMap::new({
            let mut c: Vec<Box<dyn AxisymProfile<f64> + Send>> = (0..n - 1)
                .map(|_| Box::new(FnProfile::new(|t: f64| 0.5 * t * t, vec![])) as Box<_>)
                .collect();
            c.push(Box::new(SignProfile));
            c
        });
        let x = BallPoint::on_axis(n, r).unwrap();
        let mc = mc_extension(&map, &x, 40_000, seed).unwrap();
        let sq = axisym_extension(&FnProfile::new(|t: f64| 0.5 * t * t, vec![]), n, r, 1e-12).unwrap().value;
        let sg = u_profile(n, r, 1e-12).unwrap().value;
        for c in &mc[..n - 1] {
            // 3-sigma bound, widened to keep the false-failure rate negligible.
            prop_assert!((c.value - sq).abs() <= 2.0 * c.error_bound);
        }
        prop_assert!((mc[n - 1].value - sg).abs() <= 2.0 * mc[n - 1].error_bound);
    }

    #[test]
    fn rotation_reduces_to_axis(n in 2usize..5, r in 0.1_f64..0.9, seed in 0u64..1000) {
        // P[f ∘ O](x) = P[f](O x); choose x = Oᵀ (rN).
        let o = random_orthogonal::<f64>(n, seed);
        let map: ZonalMap<f64> = ZonalMap::new((0..n).map(|_| Box::new(SignProfile) as Box<_>).collect());
        let x: Vec<f64> = (0..n).map(|j| o[(n - 1) * n + j] * r).collect();
        let rotated = Rotated::new(map, o);
        let mc = mc_extension(&rotated, &BallPoint::new(x).unwrap(), 40_000, seed + 1).unwrap();
        let exact = u_profile(n, r, 1e-12).unwrap().value;
        for c in &mc {
            prop_assert!((c.value - exact).abs() <= 2.0 * c.error_bound);
        }
    }
}
