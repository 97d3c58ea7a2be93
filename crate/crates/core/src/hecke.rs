//! Hecke zeta functions `zeta(s, p) = sum over ideals of chi_{4p}(n) N(n)^{-s}`,
//! divisor sums `tau_{s,p}`, the Dedekind zeta of Q(i), and Euler products on
//! the line `Re s = 1`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::factor::{gaussian_primes_up_to, ideal_divisors};
use crate::gaussian::{GaussInt, IdealRep};

/// `arg(n)`; `chi_{4p}(n) = exp(4 i p arg n)`.
fn arg(n: GaussInt) -> f64 {
    (n.im as f64).atan2(n.re as f64)
}

/// The Grössencharakter `chi_{4p}(n) = (n/|n|)^{4p}`.
pub fn chi(p: i64, n: GaussInt) -> Result<Complex64> {
    if n.is_zero() {
        return Err(Error::Domain("chi at zero".into()));
    }
    Ok(Complex64::from_polar(1.0, 4.0 * p as f64 * arg(n)))
}

/// Partial sum over ideals of norm `<= x` plus the tail bound
/// `4 x^{1-sigma} sigma / (sigma - 1)`.
///
/// The bound follows from partial summation with the ideal count
/// `A(t) <= 2t` (at most `pi t / 4 + O(sqrt t)` lattice points in a quarter disc).
pub fn zeta_direct(s: Complex64, p: i64, x: u64) -> Result<(Complex64, f64)> {
    let sigma = s.re;
    if sigma <= 1.0 {
        return Err(Error::Domain(format!("zeta_direct needs Re s > 1, got {s}")));
    }
    let mut re = crate::quadrature::KahanSum::default();
    let mut im = crate::quadrature::KahanSum::default();
    let amax = (x as f64).sqrt().floor() as i64 + 1;
    for a in 1..=amax {
        for b in 0..=amax {
            let nn = (a * a + b * b) as u64;
            if nn > x {
                break;
            }
            let phase = 4.0 * p as f64 * (b as f64).atan2(a as f64);
            let term = Complex64::from_polar(1.0, phase) * (-s * (nn as f64).ln()).exp();
            re.add(term.re);
            im.add(term.im);
        }
    }
    let xf = (x.max(1)) as f64;
    let tail = 4.0 * xf.powf(1.0 - sigma) * sigma / (sigma - 1.0);
    Ok((Complex64::new(re.value(), im.value()), tail))
}

// B_{2j} / (2j)!
const EM_COEFF: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
];

/// Hurwitz zeta `sum_{k >= 0} (k + a)^{-s}` by Euler-Maclaurin, `s != 1`, `a > 0`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    let n = 30usize.max((s.norm() * 1.5) as usize);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let big = n as f64 + a;
    let lnb = big.ln();
    sum += (-(s - 1.0) * lnb).exp() / (s - 1.0);
    sum += 0.5 * (-s * lnb).exp();
    // rising factorial s (s+1) ... (s + 2j - 2) times big^{-s-2j+1}
    let mut rising = s;
    let mut power = (-(s + 1.0) * lnb).exp();
    for (j, c) in EM_COEFF.iter().enumerate() {
        sum += c * rising * power;
        let k = 2.0 * j as f64 + 1.0;
        rising *= (s + k) * (s + k + 1.0);
        power /= big * big;
    }
    Ok(sum)
}

/// Riemann zeta via Hurwitz.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// Dedekind zeta of Q(i): `zeta(s) L(s, chi_{-4}) = zeta(s, 0)`.
pub fn dedekind_zeta(s: Complex64) -> Result<Complex64> {
    let l = (-s * 4f64.ln()).exp() * (hurwitz_zeta(s, 0.25)? - hurwitz_zeta(s, 0.75)?);
    Ok(riemann_zeta(s)? * l)
}

/// Canonical Gaussian primes up to a norm bound, stored as `(ln N, arg)`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<(u64, f64, f64)>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        let primes = gaussian_primes_up_to(limit)?
            .into_iter()
            .map(|pi| {
                let n = pi.norm() as u64;
                (n, (n as f64).ln(), arg(pi))
            })
            .collect();
        Ok(PrimeTable { limit, primes })
    }

    /// Shared cached table for `limit`.
    pub fn cached(limit: u64) -> Result<Arc<PrimeTable>> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PrimeTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("prime cache poisoned").get(&limit) {
            return Ok(t.clone());
        }
        let t = Arc::new(PrimeTable::new(limit)?);
        cache.lock().expect("prime cache poisoned").insert(limit, t.clone());
        Ok(t)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `ln` of the truncated Euler product for `zeta(s, p)` at cutoffs `limit/2` and `limit`.
    fn log_product(&self, s: Complex64, p: i64) -> (Complex64, Complex64) {
        let half = self.limit / 2;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut at_half = None;
        for &(n, lnn, theta) in &self.primes {
            if at_half.is_none() && n > half {
                at_half = Some(acc);
            }
            let z = Complex64::from_polar(1.0, 4.0 * p as f64 * theta) * (-s * lnn).exp();
            acc -= (1.0 - z).ln();
        }
        (at_half.unwrap_or(acc), acc)
    }
}

/// Euler-product value with its cutoff-halving self-consistency estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerValue {
    pub value: Complex64,
    /// `|value(X) - value(X/2)|`; heuristic, not a bound.
    pub heuristic_error: f64,
}

/// `zeta(s, p)` by a truncated Euler product over primes in `table`.
pub fn zeta_euler(s: Complex64, p: i64, table: &PrimeTable) -> Result<EulerValue> {
    if p == 0 && (s - 1.0).norm() == 0.0 {
        return Err(Error::Pole("zeta(s, 0) at s = 1".into()));
    }
    let (half, full) = table.log_product(s, p);
    let value = full.exp();
    Ok(EulerValue {
        value,
        heuristic_error: (value - half.exp()).norm(),
    })
}

/// `zeta(1 + 2 i kappa, 2p)` over Gaussian primes of norm `<= x`.
pub fn zeta_oneline(kappa: f64, p: i64, x: u64) -> Result<EulerValue> {
    if kappa == 0.0 && p == 0 {
        return Err(Error::Pole("zeta(1, 0)".into()));
    }
    let table = PrimeTable::cached(x)?;
    zeta_euler(Complex64::new(1.0, 2.0 * kappa), 2 * p, &table)
}

/// Divisor data of an ideal: for each factorization `(a)(b) = (n)` the pair
/// `(ln N(a) - ln N(b), arg a - arg b)`.
#[derive(Debug, Clone)]
pub struct DivisorData {
    n: IdealRep,
    pairs: Vec<(f64, f64)>,
}

impl DivisorData {
    pub fn new(n: IdealRep) -> Result<Self> {
        let nn = n.gen();
        let pairs = ideal_divisors(n)?
            .into_iter()
            .map(|a| {
                let b = nn.exact_div(a.gen())?;
                let ln = (a.norm() as f64).ln() - (b.norm() as f64).ln();
                Ok((ln, arg(a.gen()) - arg(b)))
            })
            .collect::<Result<_>>()?;
        Ok(DivisorData { n, pairs })
    }

    pub fn ideal(&self) -> IdealRep {
        self.n
    }

    pub fn count(&self) -> usize {
        self.pairs.len()
    }

    /// `tau_{s,p}(n)`.
    pub fn tau(&self, s: Complex64, p: i64) -> Complex64 {
        let pf = 4.0 * p as f64;
        self.pairs
            .iter()
            .map(|&(ln, th)| (s * ln + Complex64::new(0.0, pf * th)).exp())
            .sum()
    }

    /// `tau_{i kappa, p}(n)`, real for real `kappa`.
    pub fn tau_ik(&self, kappa: f64, p: i64) -> f64 {
        let pf = 4.0 * p as f64;
        self.pairs.iter().map(|&(ln, th)| (kappa * ln + pf * th).cos()).sum()
    }
}

/// `tau_{s,p}(n) = sum over (a)(b) = (n) of chi_{4p}(a/b) |a/b|^{2s}`.
pub fn tau(s: Complex64, p: i64, n: IdealRep) -> Result<Complex64> {
    Ok(DivisorData::new(n)?.tau(s, p))
}

/// Residual of the Dirichlet-series identity
/// `sum tau_{i kappa, p}(n) N(n)^{-s} = zeta(s - i kappa, p) zeta(s + i kappa, -p)`
/// at real `s > 1`, with the combined bound it must respect.
#[derive(Debug, Clone, Copy)]
pub struct DirichletCheck {
    pub residual: f64,
    pub tau_tail_bound: f64,
    pub product_error_bound: f64,
}

impl DirichletCheck {
    pub fn holds(&self) -> bool {
        self.residual <= self.tau_tail_bound + self.product_error_bound
    }
}

/// `x` truncates the `tau` series, `y` the two zeta factors.
pub fn dirichlet_factorization_check(sigma: f64, kappa: f64, p: i64, x: u64, y: u64) -> Result<DirichletCheck> {
    if sigma <= 1.0 {
        return Err(Error::Domain("need sigma > 1".into()));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut d_sum = 0.0;
    for n in crate::gaussian::ideals_in_norm_range(1, x) {
        let dd = DivisorData::new(n)?;
        let w = (n.norm() as f64).powf(-sigma);
        sum += dd.tau_ik(kappa, p) * w;
        d_sum += dd.count() as f64 * w;
    }
    let s = Complex64::new(sigma, 0.0);
    let (z1, t1) = zeta_direct(s - Complex64::new(0.0, kappa), p, y)?;
    let (z2, t2) = zeta_direct(s + Complex64::new(0.0, kappa), -p, y)?;
    // |tau_{i kappa, p}(n)| <= d(n) and sum d(n) N^{-sigma} = zeta_K(sigma)^2
    let zk = dedekind_zeta(s)?.re;
    let tau_tail_bound = (zk * zk - d_sum).max(0.0) + 1e-12 * zk * zk;
    let product_error_bound = z1.norm() * t2 + z2.norm() * t1 + t1 * t2;
    Ok(DirichletCheck {
        residual: (sum - z1 * z2).norm(),
        tau_tail_bound,
        product_error_bound,
    })
}

/// `zeta(2, 0) = zeta(2) * Catalan`, for reference checks.
pub fn zeta_2_0() -> f64 {
    PI * PI / 6.0 * 0.915_965_594_177_219
}
