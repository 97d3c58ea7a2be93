use num_complex::Complex64;
use picard_core::spectral::{h_direct, h_fourier, h_laplacian, h_weighted, laplacian_identity, TestFunction};
use picard_core::QuadratureSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn laplacian_identity_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let r = rng.gen_range(0.0..1.5);
        let w = rng.gen_range(0.0..std::f64::consts::TAU);
        let (fd, exact) = laplacian_identity(z, r, w, 1e-4);
        let scale = 4.0 * z.norm_sqr() * (r.sinh().powi(2) + w.sin().powi(2));
        assert!((fd - exact).abs() <= 1e-5 * scale.max(1.0), "z={z} r={r} w={w}: {fd} vs {exact}");
    }
}

#[test]
fn three_routes_agree() {
    let spec = QuadratureSpec::default();
    let tf = TestFunction::new(3.0, 3.0).unwrap();
    for z in [Complex64::new(0.4, 0.1), Complex64::new(1.5, -0.7), Complex64::new(-2.0, 2.5)] {
        let a = h_direct(&tf, z, &spec).unwrap();
        let b = h_laplacian(&tf, z, &spec).unwrap();
        let c = h_weighted(&tf, z, &spec).unwrap();
        let tol = 1e-6 * (1.0 + a.value.norm());
        assert!((a.value - b.value).norm() <= tol + a.truncation + b.truncation, "{a:?} vs {b:?}");
        assert!((a.value - c.value).norm() <= tol + a.truncation + c.truncation, "{a:?} vs {c:?}");
    }
}

#[test]
fn fourier_form_matches_second_route() {
    let spec = QuadratureSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (k, p) in [(2.0, 2.0), (4.0, 4.0), (2.0, 8.0), (3.0, 1.0)] {
        let tf = TestFunction::new(k, p).unwrap();
        for _ in 0..4 {
            let z = Complex64::from_polar(rng.gen_range(0.1..25.0), rng.gen_range(-3.1..3.1));
            let a = h_weighted(&tf, z, &spec).unwrap().value.re;
            let b = h_fourier(&tf, z, &spec).unwrap().value.re;
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "K={k} P={p} z={z}: {a} vs {b}");
        }
    }
}
