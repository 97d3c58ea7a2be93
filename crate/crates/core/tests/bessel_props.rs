use num_complex::Complex64;
use picard_core::bessel::{bessel_2p_real, bold_j_offset, kernel_bold_j, kernel_bold_j_integral, KAPPA_EPS};
use picard_core::QuadratureSpec;
use proptest::prelude::*;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn even_in_z(kappa in -4.0f64..4.0, p in -4i64..=4, r in 0.05f64..5.0, phi in -3.1f64..3.1) {
        let z = Complex64::from_polar(r, phi);
        let a = kernel_bold_j(kappa, p, z).unwrap();
        let b = kernel_bold_j(kappa, p, -z).unwrap();
        prop_assert!(close(a, b, 1e-9), "{a} vs {b}");
    }

    #[test]
    fn symmetric_in_order(kappa in -4.0f64..4.0, p in -4i64..=4, r in 0.05f64..5.0, phi in -3.1f64..3.1) {
        let z = Complex64::from_polar(r, phi);
        let a = kernel_bold_j(kappa, p, z).unwrap();
        let b = kernel_bold_j(-kappa, -p, z).unwrap();
        prop_assert!(close(a, b, 1e-9), "{a} vs {b}");
    }

    #[test]
    fn integer_bessel_is_bounded(p in 0i64..=20, x in 0.0f64..500.0) {
        prop_assert!(bessel_2p_real(p, x).abs() <= 1.0 + 1e-12);
    }
}

#[test]
fn symmetries_on_grid() {
    let zs = [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::from_polar(3.0, std::f64::consts::FRAC_PI_6),
        Complex64::new(0.0, 5.0),
    ];
    for kappa in [0.0, 1.0, 2.5] {
        for p in [0, 1, 3] {
            for z in zs {
                let a = kernel_bold_j(kappa, p, z).unwrap();
                assert!(close(a, kernel_bold_j(kappa, p, -z).unwrap(), 1e-9), "even ({kappa},{p},{z})");
                assert!(close(a, kernel_bold_j(-kappa, -p, z).unwrap(), 1e-9), "swap ({kappa},{p},{z})");
            }
        }
    }
}

#[test]
fn small_kappa_interpolation_converges() {
    for p in [0, 1, 3] {
        for z in [Complex64::new(0.7, 0.2), Complex64::new(3.0, -1.5), Complex64::new(-8.0, 4.0)] {
            let a = bold_j_offset(0.0, p, z, KAPPA_EPS).unwrap();
            let b = bold_j_offset(0.0, p, z, KAPPA_EPS / 2.0).unwrap();
            // O(eps^2) interpolation error; the halved step agrees to that order
            assert!(close(a, b, 1e-7), "p={p} z={z}: {a} vs {b}");
        }
    }
}

#[test]
fn integral_path_agrees_with_series() {
    let spec = QuadratureSpec::default();
    for (kappa, p, x, phi) in [(0.8, 0, 2.0, 0.3), (2.5, 1, 5.0, 1.1), (-1.2, 2, 9.0, -0.6), (0.5, -1, 3.0, 1.4)] {
        let series = kernel_bold_j(kappa, p, Complex64::from_polar(x, phi)).unwrap();
        let integral = kernel_bold_j_integral(kappa, p, x, phi, &spec).unwrap();
        assert!(series.im.abs() <= 1e-8 * (1.0 + series.norm()));
        let tol = 1e-6 * (1.0 + series.norm()) + integral.error;
        assert!((series.re - integral.value).abs() <= tol, "({kappa},{p},{x},{phi}): {series} vs {integral:?}");
    }
}

#[test]
fn series_survives_cancellation_at_large_argument() {
    use picard_core::bessel::{bessel_j_int_orders, bessel_j_series};
    for x in [15.0, 20.0, 28.0] {
        let reference = bessel_j_int_orders(24, x);
        for order in [0usize, 1, 4, 11, 20] {
            let s = bessel_j_series(Complex64::new(order as f64, 0.0), Complex64::new(x, 0.0)).unwrap();
            assert!((s.re - reference[order]).abs() < 1e-12, "J_{order}({x}): {} vs {}", s.re, reference[order]);
        }
    }
}
