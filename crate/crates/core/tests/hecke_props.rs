use num_complex::Complex64;
use picard_core::factor::ideal_divisors;
use picard_core::gaussian::{gcd, ideals_in_norm_range};
use picard_core::hecke::{dirichlet_factorization_check, zeta_euler, DivisorData, PrimeTable};
use picard_core::{GaussInt, IdealRep};
use proptest::prelude::*;

fn tau_ik(n: GaussInt, kappa: f64, p: i64) -> f64 {
    DivisorData::new(IdealRep::new(n).unwrap()).unwrap().tau_ik(kappa, p)
}

#[test]
fn hecke_relation_on_a_grid() {
    let ideals = ideals_in_norm_range(1, 200);
    for (kappa, p) in [(0.0, 0), (1.3, 2), (0.7, -1)] {
        for m in &ideals {
            for n in &ideals {
                let (m, n) = (m.gen(), n.gen());
                let lhs = tau_ik(m, kappa, p) * tau_ik(n, kappa, p);
                let g = IdealRep::new(gcd(m, n).unwrap()).unwrap();
                let mut rhs = 0.0;
                for d in ideal_divisors(g).unwrap() {
                    let d2 = d.gen() * d.gen();
                    rhs += tau_ik((m * n).exact_div(d2).unwrap(), kappa, p);
                }
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()), "({m}),({n}) at ({kappa},{p})");
            }
        }
    }
}

#[test]
fn dirichlet_factorization_at_three_halves() {
    for (kappa, p) in [(0.0, 0), (1.3, 2), (0.7, -1)] {
        let chk = dirichlet_factorization_check(1.5, kappa, p, 3000, 200_000).unwrap();
        assert!(chk.holds(), "{chk:?}");
    }
}

#[test]
fn euler_product_tracks_direct_sum_at_two() {
    let table = PrimeTable::new(20_000).unwrap();
    let e = zeta_euler(Complex64::new(2.0, 0.5), 1, &table).unwrap();
    let (d, tail) = picard_core::hecke::zeta_direct(Complex64::new(2.0, 0.5), 1, 400_000).unwrap();
    assert!((e.value - d).norm() < 1e-3 + tail);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplicative_on_coprime(a in (1i64..25, 0i64..25), b in (1i64..25, 0i64..25), s in (-1.5f64..1.5, -2.0f64..2.0), p in -3i64..4) {
        let (m, n) = (GaussInt::new(a.0, a.1), GaussInt::new(b.0, b.1));
        prop_assume!(gcd(m, n).unwrap().is_unit());
        let s = Complex64::new(s.0, s.1);
        let t = |z: GaussInt| DivisorData::new(IdealRep::new(z).unwrap()).unwrap().tau(s, p);
        let lhs = t(m * n);
        let rhs = t(m) * t(n);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn symmetric_under_negation(a in (1i64..40, 0i64..40), s in (-1.5f64..1.5, -2.0f64..2.0), p in -3i64..4) {
        let dd = DivisorData::new(IdealRep::new(GaussInt::new(a.0, a.1)).unwrap()).unwrap();
        let s = Complex64::new(s.0, s.1);
        let x = dd.tau(s, p);
        prop_assert!((x - dd.tau(-s, -p)).norm() <= 1e-12 * (1.0 + x.norm()));
    }
}
