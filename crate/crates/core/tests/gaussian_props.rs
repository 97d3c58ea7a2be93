use std::collections::BTreeMap;

use picard_core::factor::{factor, ideal_divisors};
use picard_core::gaussian::{div_rem, gcd, gcd_ext, inv_mod, UNITS};
use picard_core::residue::ResidueSystem;
use picard_core::{GaussInt, IdealRep};
use proptest::prelude::*;

fn gi() -> impl Strategy<Value = GaussInt> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn nonzero() -> impl Strategy<Value = GaussInt> {
    gi().prop_filter("nonzero", |z| !z.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn euclidean_division(a in gi(), b in nonzero()) {
        let (q, r) = div_rem(a, b).unwrap();
        prop_assert_eq!(q * b + r, a);
        prop_assert!(2 * r.norm() <= b.norm());
    }

    #[test]
    fn bezout(a in nonzero(), b in nonzero()) {
        let (g, x, y) = gcd_ext(a, b).unwrap();
        prop_assert_eq!(a * x + b * y, g);
        prop_assert!(g.divides(a) && g.divides(b));
        prop_assert_eq!(gcd(a, b).unwrap(), g.canonical());
    }

    #[test]
    fn canonical_is_idempotent_and_unique(z in nonzero()) {
        let c = z.canonical();
        prop_assert_eq!(c.canonical(), c);
        let hits = UNITS.iter().filter(|&&u| (u * z).canonical() == u * z).count();
        prop_assert_eq!(hits, 1);
        for u in UNITS {
            prop_assert_eq!((u * z).canonical(), c);
        }
    }

    #[test]
    fn factor_multiplies_back(a in -316i64..=316, b in -316i64..=316) {
        let z = GaussInt::new(a, b);
        prop_assume!(!z.is_zero() && z.norm() <= 100_000);
        prop_assert_eq!(factor(z).unwrap().expand().unwrap(), z);
    }

    #[test]
    fn divisor_count_is_multiplicative(a in nonzero_small(), b in nonzero_small()) {
        prop_assume!(gcd(a, b).unwrap().is_unit());
        let m = IdealRep::new(a).unwrap();
        let n = IdealRep::new(b).unwrap();
        let mn = IdealRep::new(a * b).unwrap();
        let d = |k: IdealRep| ideal_divisors(k).unwrap().len();
        prop_assert_eq!(d(mn), d(m) * d(n));
    }
}

fn nonzero_small() -> impl Strategy<Value = GaussInt> {
    (-40i64..40, -40i64..40).prop_map(|(a, b)| GaussInt::new(a, b)).prop_filter("nonzero", |z| !z.is_zero())
}

#[test]
fn inverse_sweep_up_to_norm_500() {
    let mut moduli = 0;
    for c in picard_core::gaussian::ideals_in_norm_range(1, 500) {
        let c = c.gen();
        let rs = ResidueSystem::new(c).unwrap();
        for &a in rs.reps() {
            if gcd(a, c).unwrap().is_unit() {
                let inv = inv_mod(a, c).unwrap();
                assert!(c.divides(a * inv - GaussInt::new(1, 0)), "{a} * {inv} != 1 mod {c}");
            } else {
                assert!(inv_mod(a, c).is_err());
            }
        }
        moduli += 1;
    }
    assert!(moduli > 300);
}

#[test]
fn factor_multiplies_back_exhaustive_to_norm_20000() {
    for a in 0..=141i64 {
        for b in 0..=141i64 {
            let z = GaussInt::new(a, b);
            if z.is_zero() || z.norm() > 20_000 {
                continue;
            }
            assert_eq!(factor(z).unwrap().expand().unwrap(), z);
        }
    }
}

#[test]
fn divisors_count_ideals_by_norm() {
    let n = IdealRep::new(GaussInt::new(25, 0)).unwrap();
    let mut by_norm: BTreeMap<u128, usize> = BTreeMap::new();
    for d in ideal_divisors(n).unwrap() {
        *by_norm.entry(d.norm()).or_default() += 1;
    }
    // (5) = (2+i)(2-i), so (25) has 3 * 3 divisors
    assert_eq!(by_norm.values().sum::<usize>(), 9);
    assert_eq!(by_norm[&25], 3);
}
