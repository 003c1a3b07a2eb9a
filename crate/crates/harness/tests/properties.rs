use proptest::prelude::*;

use torus_nls_harness::hoelder::{epsilon_max, hoelder_exponents, STRICHARTZ_ENDPOINT};
use torus_nls_harness::run::trial_seed;
use torus_nls_harness::slope::fit_scaling_slope;

proptest! {
    #[test]
    fn slope_of_exact_power_law(e in -3.0f64..3.0, c in 0.01f64..100.0, k in 3usize..8) {
        let series: Vec<(f64, f64)> = (0..k).map(|i| {
            let n = (1u64 << i) as f64;
            (n, c * n.powf(e))
        }).collect();
        let fit = fit_scaling_slope(&series).unwrap();
        prop_assert!((fit.value - e).abs() < 1e-12);
        prop_assert!(fit.residual < 1e-12);
    }

    #[test]
    fn slope_is_scale_invariant(vals in prop::collection::vec(0.1f64..10.0, 3..7), c in 0.01f64..100.0) {
        let a: Vec<(f64, f64)> = vals.iter().enumerate().map(|(i, v)| ((1u64 << i) as f64, *v)).collect();
        let b: Vec<(f64, f64)> = a.iter().map(|(n, v)| (*n, c * v)).collect();
        let (fa, fb) = (fit_scaling_slope(&a).unwrap(), fit_scaling_slope(&b).unwrap());
        prop_assert!((fa.value - fb.value).abs() < 1e-10);
    }

    #[test]
    fn admissible_exponents_satisfy_identities(p in 2.01f64..2.99, frac in 0.001f64..0.999) {
        let eps = epsilon_max(p) * frac;
        let set = hoelder_exponents(p, eps).unwrap();
        prop_assert!((set.low_sum() - 1.0).abs() < 1e-12);
        prop_assert!((set.high_sum() - 1.0).abs() < 1e-12);
        prop_assert!(set.low.iter().chain(&set.high).all(|r| *r > STRICHARTZ_ENDPOINT));
        prop_assert!(set.low[1] > 2.5 * p);
    }

    #[test]
    fn beyond_boundary_is_rejected(p in 2.01f64..2.99, over in 1e-6f64..0.5) {
        let eps = epsilon_max(p) + over;
        prop_assume!(eps < 1.0);
        prop_assert!(hoelder_exponents(p, eps).is_err());
    }

    #[test]
    fn trial_seeds_differ(seed in any::<u64>(), i in 0usize..64, j in 0usize..8, k in 0usize..200) {
        prop_assert_ne!(trial_seed(seed, i, j, k), trial_seed(seed, i, j, k + 1));
        prop_assert_ne!(trial_seed(seed, i, j, k), trial_seed(seed, i + 1, j, k));
        prop_assert_ne!(trial_seed(seed, i, j, k), trial_seed(seed, i, j + 1, k));
    }
}
