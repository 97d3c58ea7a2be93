use num_complex::Complex64;
use picard_core::quadform::{quadform_b_complex, quadform_terms, CoeffSeq, QuadFormQuery};
use picard_core::GaussInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_seq(n: f64, seed: u64) -> CoeffSeq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = CoeffSeq::support(n).len();
    let vals: Vec<Complex64> = (0..len).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    CoeffSeq::from_values(n, &vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_is_real(seed in any::<u64>(), n in 1.5f64..5.0, th in (-2.0f64..2.0, -2.0f64..2.0), c in (1i64..8, -8i64..8)) {
        let theta = Complex64::new(th.0, th.1);
        prop_assume!(theta.norm() > 1e-3);
        let q = QuadFormQuery::new(theta, GaussInt::new(c.0, c.1), random_seq(n, seed)).unwrap();
        let b = quadform_b_complex(&q).unwrap();
        prop_assert!(b.im.abs() <= 1e-9 * (1.0 + b.re.abs()), "{b}");
    }

    #[test]
    fn conjugation_covariance(seed in any::<u64>(), n in 1.5f64..5.0, th in (-2.0f64..2.0, -2.0f64..2.0), c in (1i64..8, -8i64..8)) {
        let theta = Complex64::new(th.0, th.1);
        let c = GaussInt::new(c.0, c.1);
        let terms = random_seq(n, seed).terms();
        let conj_terms: Vec<(GaussInt, Complex64)> = terms.iter().map(|(m, b)| (m.conj(), b.conj())).collect();
        let b = quadform_terms(theta, c, &terms).unwrap();
        let bc = quadform_terms(theta.conj(), c.conj(), &conj_terms).unwrap();
        prop_assert!((b.conj() - bc).norm() <= 1e-9 * (1.0 + b.norm()), "{b} vs {bc}");
    }
}

#[test]
fn trivial_modulus_is_real() {
    let seq = random_seq(3.0, 9);
    let q = QuadFormQuery::new(Complex64::new(0.3, 0.1), GaussInt::new(1, 0), seq).unwrap();
    assert!(quadform_b_complex(&q).unwrap().im.abs() < 1e-9);
}
