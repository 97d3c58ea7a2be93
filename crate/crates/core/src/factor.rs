//! Factorization into Gaussian primes, ideal divisors, and prime tables.
//!
//! Trial division of the norm by rational primes up to [`TRIAL_LIMIT`];
//! split primes `p = 1 mod 4` are found as `gcd(p, x + i)` with `x^2 = -1 mod p`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gaussian::{gcd, GaussInt, IdealRep, ONE};

pub const TRIAL_LIMIT: u64 = 1_000_000;

static SMALL_PRIMES: OnceLock<Vec<u64>> = OnceLock::new();

/// Rational primes up to `limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    SMALL_PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The canonical Gaussian prime of norm `p` for a rational prime `p = 1 mod 4`
/// (or `p = 2`). The other one is its conjugate, canonicalized.
pub fn split_prime(p: u64) -> Result<GaussInt> {
    if p == 2 {
        return Ok(GaussInt::new(1, 1));
    }
    if p % 4 != 1 {
        return Err(Error::Domain(format!("{p} does not split in Z[i]")));
    }
    let mut x = 0;
    for c in 2..p {
        if pow_mod(c, (p - 1) / 2, p) == p - 1 {
            x = pow_mod(c, (p - 1) / 4, p);
            break;
        }
    }
    let pi = gcd(GaussInt::from_int(p as i64), GaussInt::new(x as i64, 1))?;
    debug_assert_eq!(pi.norm(), p as u128);
    Ok(pi)
}

/// `n = unit * prod(prime^exp)`, primes canonical and pairwise non-associate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: GaussInt,
    pub factors: Vec<(GaussInt, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Result<GaussInt> {
        let mut acc = self.unit;
        for &(p, e) in &self.factors {
            acc = acc.checked_mul(p.pow(e)?)?;
        }
        Ok(acc)
    }

    /// Number of ideal divisors, `prod(e_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }
}

fn strip(n: &mut GaussInt, p: GaussInt) -> u32 {
    let mut e = 0;
    while p.divides(*n) {
        *n = n.exact_div(p).expect("divisibility checked");
        e += 1;
    }
    e
}

pub fn factor(n: GaussInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let mut rest = n;
    let mut remaining_norm = n.checked_norm()?;
    let mut factors = Vec::new();
    for &q in small_primes() {
        if q * q > remaining_norm {
            break;
        }
        if remaining_norm % q != 0 {
            continue;
        }
        if q % 4 == 3 {
            let e = strip(&mut rest, GaussInt::from_int(q as i64));
            factors.push((GaussInt::from_int(q as i64), e));
        } else {
            let pi = split_prime(q)?;
            let e = strip(&mut rest, pi);
            if e > 0 {
                factors.push((pi, e));
            }
            if q != 2 {
                let pib = pi.conj().canonical();
                let e = strip(&mut rest, pib);
                if e > 0 {
                    factors.push((pib, e));
                }
            }
        }
        remaining_norm = rest.norm() as u64;
    }
    if remaining_norm > 1 {
        let r = remaining_norm;
        let last = *small_primes().last().expect("nonempty table");
        let prime_norm = if r <= last * last { true } else { is_prime_u64(r) };
        if prime_norm {
            let pi = rest.canonical();
            strip(&mut rest, pi);
            factors.push((pi, 1));
        } else {
            let s = (r as f64).sqrt().round() as u64;
            if s * s == r && s % 4 == 3 && is_prime_u64(s) {
                let q = GaussInt::from_int(s as i64);
                let e = strip(&mut rest, q);
                factors.push((q, e));
            } else {
                return Err(Error::FactorizationBudget(n));
            }
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by_key(|&(p, _)| IdealRep::new(p).expect("nonzero"));
    Ok(Factorization { unit: rest, factors })
}

/// All ideal divisors of `(n)`, canonical, sorted by norm then `(re, im)`.
pub fn ideal_divisors(n: IdealRep) -> Result<Vec<IdealRep>> {
    let f = factor(n.gen())?;
    let mut divs = vec![ONE];
    for &(p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = *d;
            next.push(acc);
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
                next.push(acc);
            }
        }
        divs = next;
    }
    let mut out: Vec<IdealRep> = divs
        .into_iter()
        .map(IdealRep::new)
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Number of ideal divisors of `(n)`.
pub fn divisor_count(n: GaussInt) -> Result<u64> {
    Ok(factor(n)?.divisor_count())
}

/// Canonical Gaussian primes with norm `<= limit`, sorted by norm.
pub fn gaussian_primes_up_to(limit: u64) -> Result<Vec<GaussInt>> {
    let mut out = Vec::new();
    for p in primes_up_to(limit) {
        match p % 4 {
            2 => out.push(GaussInt::new(1, 1)),
            1 => {
                let pi = split_prime(p)?;
                out.push(pi);
                out.push(pi.conj().canonical());
            }
            _ => {
                if (p as u128) * (p as u128) <= limit as u128 {
                    out.push(GaussInt::from_int(p as i64));
                }
            }
        }
    }
    out.sort_by_key(|&z| IdealRep::new(z).expect("nonzero"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussInt {
        GaussInt::new(a, b)
    }

    #[test]
    fn factor_examples() {
        let f = factor(g(2, 0)).unwrap();
        assert_eq!(f.factors, vec![(g(1, 1), 2)]);
        assert_eq!(f.unit, g(0, -1));
        assert_eq!(f.expand().unwrap(), g(2, 0));

        let f = factor(g(1, 1)).unwrap();
        assert_eq!(f.unit, g(1, 0));
        assert_eq!(f.factors, vec![(g(1, 1), 1)]);

        let f = factor(g(5, 0)).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|&(p, e)| p.norm() == 5 && e == 1));
        assert_eq!(f.expand().unwrap(), g(5, 0));
        assert!(factor(g(0, 0)).is_err());
    }

    #[test]
    fn large_prime_norm() {
        // 1_000_003 is prime and = 3 mod 4; 1_000_033 = 1 mod 4 is prime.
        let q = g(1_000_003, 0);
        let f = factor(q).unwrap();
        assert_eq!(f.factors, vec![(q, 1)]);
        let pi = split_prime(1_000_033).unwrap();
        let z = pi * g(3, 0) * g(1, 1);
        assert_eq!(factor(z).unwrap().expand().unwrap(), z);
    }

    #[test]
    fn multiply_back_identity_small() {
        for a in -40..=40i64 {
            for b in -40..=40i64 {
                let z = g(a, b);
                if z.is_zero() {
                    continue;
                }
                let f = factor(z).unwrap();
                assert_eq!(f.expand().unwrap(), z);
                assert!(f.unit.is_unit());
            }
        }
    }

    #[test]
    fn divisor_examples() {
        let d = ideal_divisors(IdealRep::new(g(1, 1)).unwrap()).unwrap();
        assert_eq!(d.iter().map(|r| r.gen()).collect::<Vec<_>>(), vec![g(1, 0), g(1, 1)]);
        let d = ideal_divisors(IdealRep::unit()).unwrap();
        assert_eq!(d, vec![IdealRep::unit()]);
        let d = ideal_divisors(IdealRep::new(g(2, 0)).unwrap()).unwrap();
        assert_eq!(
            d.iter().map(|r| r.gen()).collect::<Vec<_>>(),
            vec![g(1, 0), g(1, 1), g(2, 0)]
        );
    }

    #[test]
    fn gaussian_prime_table() {
        let ps = gaussian_primes_up_to(50).unwrap();
        let norms: Vec<u128> = ps.iter().map(|p| p.norm()).collect();
        assert_eq!(norms, vec![2, 5, 5, 9, 13, 13, 17, 17, 29, 29, 37, 37, 41, 41, 49]);
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let table = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime_u64(n), table.binary_search(&n).is_ok(), "{n}");
        }
    }
}
