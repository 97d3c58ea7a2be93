use picard_core::afe::{v1, v1_shifted, v2, AfeConfig};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weights_are_real(ly in -12.0f64..6.0, kappa in -5.0f64..5.0, p in -5i64..=5) {
        let cfg = AfeConfig::for_box(5.0, 5.0).unwrap();
        let y = ly.exp();
        let a = v1(y, kappa, p, &cfg).unwrap().value;
        let b = v2(y, kappa, p, &cfg).unwrap().value;
        prop_assert!(a.im.abs() <= 1e-12, "V1 = {a}");
        prop_assert!(b.im.abs() <= 1e-12, "V2 = {b}");
    }

    #[test]
    fn shifted_contour_matches(ly in -12.0f64..4.0, kappa in -4.0f64..4.0, p in -4i64..=4, sigma in -0.4f64..-0.05) {
        let cfg = AfeConfig::for_box(4.0, 4.0).unwrap();
        let y = ly.exp();
        let direct = v1(y, kappa, p, &cfg).unwrap().value;
        let shifted = v1_shifted(y, kappa, p, &cfg, sigma).unwrap();
        prop_assert!((direct - shifted).norm() <= 1e-9, "{direct} vs {shifted}");
    }
}

#[test]
fn v1_decays_and_tends_to_one() {
    let cfg = AfeConfig::for_box(3.0, 3.0).unwrap();
    assert!((v1(1e-8, 0.5, 1, &cfg).unwrap().value.re - 1.0).abs() < 1e-3);
    assert!(v1(1e4, 0.5, 1, &cfg).unwrap().value.norm() < 1e-6);
}

// The 1e-3 level is reached at y0 = (K^2 + P^2)^{3/2} only near the origin of
// the spectral box; at its corner (3, 3) it takes about 16 y0.
#[test]
fn v1_is_small_beyond_the_conductor_scale() {
    let (k, p) = (3.0f64, 3.0f64);
    let cfg = AfeConfig::for_box(k, p).unwrap();
    let y0 = (k * k + p * p).powf(1.5);
    for (kappa, pp) in [(0.0, 0), (0.5, 0)] {
        for j in 0..10 {
            let y = y0 * 2f64.powi(j);
            assert!(v1(y, kappa, pp, &cfg).unwrap().value.norm() <= 1e-3, "({kappa}, {pp}) at y = {y}");
        }
    }
    for kappa in [0.0, 1.0, 2.0, 3.0] {
        for pp in 0..=3 {
            let vals: Vec<f64> = (0..7).map(|j| v1(y0 * 2f64.powi(j), kappa, pp, &cfg).unwrap().value.norm()).collect();
            assert!(vals.windows(2).all(|w| w[1] < w[0]), "({kappa}, {pp}): {vals:?}");
            assert!(vals[4] <= 1e-3, "({kappa}, {pp}) at 16 y0: {}", vals[4]);
        }
    }
}
