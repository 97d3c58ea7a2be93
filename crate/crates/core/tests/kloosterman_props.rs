use picard_core::factor::gaussian_primes_up_to;
use picard_core::gaussian::{ideals_in_norm_range, UNITS};
use picard_core::kloosterman::{inverse_pairs_naive, kloosterman_from_pairs, KloostermanTable};
use picard_core::GaussInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gi(rng: &mut ChaCha8Rng) -> GaussInt {
    GaussInt::new(rng.gen_range(-60..=60), rng.gen_range(-60..=60))
}

#[test]
fn realness_and_symmetry_to_norm_300() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for c in ideals_in_norm_range(1, 300) {
        let t = KloostermanTable::new(c.gen()).unwrap();
        for _ in 0..8 {
            let (m, n) = (random_gi(&mut rng), random_gi(&mut rng));
            let s = t.sum(m, n);
            assert!(s.im.abs() < 1e-9, "Im S({m},{n};{c}) = {}", s.im);
            assert!((s.re - t.sum(n, m).re).abs() < 1e-9, "symmetry at c = {c}");
        }
    }
}

#[test]
fn table_matches_pair_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in ideals_in_norm_range(1, 60) {
        let pairs = inverse_pairs_naive(c.gen()).unwrap();
        let t = KloostermanTable::new(c.gen()).unwrap();
        assert_eq!(pairs.len(), t.phi());
        for _ in 0..5 {
            let (m, n) = (random_gi(&mut rng), random_gi(&mut rng));
            let naive = kloosterman_from_pairs(&pairs, m, n, c.gen());
            assert!((t.sum(m, n) - naive).norm() < 1e-9);
        }
    }
}

#[test]
fn weil_bound_for_small_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for pi in gaussian_primes_up_to(2000).unwrap() {
        let t = KloostermanTable::new(pi).unwrap();
        let (m, n) = loop {
            let (m, n) = (random_gi(&mut rng), random_gi(&mut rng));
            if !pi.divides(m * n) {
                break (m, n);
            }
        };
        assert!(t.sum(m, n).norm() <= 2.0 * pi.abs() + 1e-9, "Weil fails at {pi}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unit_twist(ca in 1i64..12, cb in 0i64..12, m in (-30i64..30, -30i64..30), n in (-30i64..30, -30i64..30), k in 0usize..4) {
        let c = GaussInt::new(ca, cb);
        let (m, n) = (GaussInt::new(m.0, m.1), GaussInt::new(n.0, n.1));
        let u = UNITS[k];
        let uinv = u.unit_inverse().unwrap();
        let t = KloostermanTable::new(c).unwrap();
        prop_assert!((t.sum(u * m, uinv * n) - t.sum(m, n)).norm() < 1e-9);
    }

    #[test]
    fn depends_on_residues_only(ca in 1i64..9, cb in 0i64..9, m in (-20i64..20, -20i64..20), n in (-20i64..20, -20i64..20), s in (-3i64..3, -3i64..3)) {
        let c = GaussInt::new(ca, cb);
        let (m, n) = (GaussInt::new(m.0, m.1), GaussInt::new(n.0, n.1));
        let shift = GaussInt::new(s.0, s.1) * c;
        let t = KloostermanTable::new(c).unwrap();
        prop_assert!((t.sum(m + shift, n) - t.sum(m, n)).norm() < 1e-9);
    }
}
