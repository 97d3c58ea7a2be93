//! Quadratic forms with Kloosterman sums
//!
//! `B(theta, c, N) = sum_{m,n} b_m conj(b_n) S(m, n; c) cos(4 pi Re(sqrt(mn) theta / c))`
//!
//! over canonical ideal generators `N < |n| <= sqrt(2) N`, the three bound
//! ratios against their envelopes, the smooth bump `eta`, and a numerical
//! Poisson-summation check for the lattice sums that appear when `B` is opened up.
//!
//! `sqrt(mn)` is `sqrt(m) sqrt(n)` with principal roots; for canonical
//! generators (argument in `[0, pi/2)`) each root has argument in `[0, pi/4)`.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bessel::{bessel_j_int_orders, bessel_j_miller};
use crate::error::{Error, Result};
use crate::factor::divisor_count;
use crate::gaussian::{ideals_in_norm_range, GaussInt, IdealRep};
use crate::kloosterman::{additive_char, KloostermanTable};
use crate::quadrature::{gl_rule, QuadratureSpec};

/// Cap on `(support size)^2 * phi(c)` for a single evaluation of `B`.
pub const QUADFORM_BUDGET: u128 = 1 << 34;

/// Exponent used in the third envelope `|N c / theta| N^eps`.
pub const RATIO3_EPS: f64 = 0.1;

/// A finitely supported coefficient sequence on ideals `N < |n| <= sqrt(2) N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    n: f64,
    values: BTreeMap<IdealRep, Complex64>,
}

impl CoeffSeq {
    pub fn new(n: f64, entries: impl IntoIterator<Item = (IdealRep, Complex64)>) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain(format!("support parameter N = {n}")));
        }
        let mut values = BTreeMap::new();
        for (k, v) in entries {
            if !in_support(n, k.norm()) {
                return Err(Error::Domain(format!("ideal {k} outside N < |n| <= sqrt(2) N for N = {n}")));
            }
            if v != Complex64::new(0.0, 0.0) {
                values.insert(k, v);
            }
        }
        Ok(CoeffSeq { n, values })
    }

    pub fn empty(n: f64) -> Result<Self> {
        Self::new(n, std::iter::empty())
    }

    /// All ideals in the support window, in [`IdealRep`] order.
    pub fn support(n: f64) -> Vec<IdealRep> {
        let lo = (n * n).floor() as u64;
        let hi = (2.0 * n * n).floor() as u64;
        ideals_in_norm_range(lo, hi)
            .into_iter()
            .filter(|k| in_support(n, k.norm()))
            .collect()
    }

    /// Sequence with `values[i]` on the `i`-th ideal of [`CoeffSeq::support`].
    pub fn from_values(n: f64, values: &[Complex64]) -> Result<Self> {
        let sup = Self::support(n);
        if values.len() != sup.len() {
            return Err(Error::Domain(format!(
                "support has {} ideals, got {} values",
                sup.len(),
                values.len()
            )));
        }
        Self::new(n, sup.into_iter().zip(values.iter().copied()))
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: &IdealRep) -> Complex64 {
        self.values.get(k).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IdealRep, &Complex64)> {
        self.values.iter()
    }

    /// `||b||_2^2`.
    pub fn norm2_sq(&self) -> f64 {
        self.values.values().map(|v| v.norm_sqr()).sum()
    }

    /// Terms as `(generator, coefficient)` pairs.
    pub fn terms(&self) -> Vec<(GaussInt, Complex64)> {
        self.values.iter().map(|(k, v)| (k.gen(), *v)).collect()
    }
}

fn in_support(n: f64, norm: u128) -> bool {
    let x = norm as f64;
    x > n * n && x <= 2.0 * n * n
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadFormQuery {
    pub theta: Complex64,
    pub c: GaussInt,
    pub seq: CoeffSeq,
}

impl QuadFormQuery {
    pub fn new(theta: Complex64, c: GaussInt, seq: CoeffSeq) -> Result<Self> {
        if theta == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("theta must be nonzero".into()));
        }
        if c.is_zero() {
            return Err(Error::Domain("modulus zero".into()));
        }
        Ok(QuadFormQuery { theta, c, seq })
    }
}

/// The double sum over arbitrary generator/coefficient pairs, returned as a
/// complex number so that realness can be tested.
pub fn quadform_terms(theta: Complex64, c: GaussInt, terms: &[(GaussInt, Complex64)]) -> Result<Complex64> {
    if c.is_zero() {
        return Err(Error::Domain("modulus zero".into()));
    }
    let table = KloostermanTable::new(c)?;
    let work = (terms.len() as u128).pow(2) * table.phi() as u128;
    if work > QUADFORM_BUDGET {
        return Err(Error::Budget(format!("{work} Kloosterman terms exceed {QUADFORM_BUDGET}")));
    }
    let roots: Vec<Complex64> = terms.iter().map(|(m, _)| m.to_complex().sqrt()).collect();
    let scale = theta / c.to_complex();
    let rows: Vec<Complex64> = terms
        .par_iter()
        .zip(roots.par_iter())
        .map(|(&(m, bm), &rm)| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&(n, bn), &rn) in terms.iter().zip(&roots) {
                let s = table.sum(m, n).re;
                let phase = (4.0 * PI * (rm * rn * scale).re).cos();
                acc += bm * bn.conj() * (s * phase);
            }
            acc
        })
        .collect();
    Ok(rows.into_iter().sum())
}

pub fn quadform_b_complex(q: &QuadFormQuery) -> Result<Complex64> {
    quadform_terms(q.theta, q.c, &q.seq.terms())
}

/// `B(theta, c, N)`; the imaginary part of the double sum is dropped.
pub fn quadform_b(q: &QuadFormQuery) -> Result<f64> {
    Ok(quadform_b_complex(q)?.re)
}

/// The three envelopes evaluated at `q`, without `||b||^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelopes {
    pub weil: f64,
    pub hybrid: f64,
    pub dual: Option<f64>,
}

pub fn envelopes(q: &QuadFormQuery) -> Result<Envelopes> {
    let n = q.seq.n();
    let c = q.c.abs();
    let tau = divisor_count(q.c)? as f64;
    let t = q.theta.norm();
    let weil = tau * tau * c * n * n;
    let hybrid = c * c + n * n + n * c * t * (2.0 + n * t).ln();
    let dual = ratio3_proviso(q).then(|| n * c / t * n.powf(RATIO3_EPS));
    Ok(Envelopes { weil, hybrid, dual })
}

fn ratio3_proviso(q: &QuadFormQuery) -> bool {
    q.theta.norm() < 2f64.powf(0.125) && q.c.abs() < q.seq.n()
}

fn ratio(b: f64, envelope: f64, norm2: f64) -> f64 {
    if norm2 == 0.0 {
        0.0
    } else {
        b.abs() / (envelope * norm2)
    }
}

/// `|B| / (tau(c)^2 |c| N^2 ||b||^2)`.
pub fn bound_ratio_1(q: &QuadFormQuery) -> Result<f64> {
    let e = envelopes(q)?;
    Ok(ratio(quadform_b(q)?, e.weil, q.seq.norm2_sq()))
}

/// `|B| / ((|c|^2 + N^2 + |N c theta| log(2 + |N theta|)) ||b||^2)`.
pub fn bound_ratio_2(q: &QuadFormQuery) -> Result<f64> {
    let e = envelopes(q)?;
    Ok(ratio(quadform_b(q)?, e.hybrid, q.seq.norm2_sq()))
}

/// `|B| / (|N c / theta| N^0.1 ||b||^2)`; needs `|theta| < 2^(1/8)` and `|c| < N`.
pub fn bound_ratio_3(q: &QuadFormQuery) -> Result<f64> {
    let e = envelopes(q)?;
    let dual = e.dual.ok_or_else(|| {
        Error::Precondition(format!(
            "third bound needs |theta| < 2^(1/8) and |c| < N (|theta| = {}, |c| = {}, N = {})",
            q.theta.norm(),
            q.c.abs(),
            q.seq.n()
        ))
    })?;
    Ok(ratio(quadform_b(q)?, dual, q.seq.norm2_sq()))
}

/// All applicable ratios from one evaluation of `B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRatios {
    pub b: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: Option<f64>,
}

pub fn bound_ratios(q: &QuadFormQuery) -> Result<BoundRatios> {
    let b = quadform_b(q)?;
    let e = envelopes(q)?;
    let n2 = q.seq.norm2_sq();
    Ok(BoundRatios {
        b,
        r1: ratio(b, e.weil, n2),
        r2: ratio(b, e.hybrid, n2),
        r3: e.dual.map(|d| ratio(b, d, n2)),
    })
}

fn psi(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

fn smooth_step(t: f64) -> f64 {
    let a = psi(t);
    let b = psi(1.0 - t);
    a / (a + b)
}

/// Left end of the bump support, `2^(-1/6)`.
pub fn bump_lo() -> f64 {
    2f64.powf(-1.0 / 6.0)
}

/// Smooth bump: 0 outside `(2^(-1/6), 2)`, 1 on `[1, sqrt 2]`,
/// `exp(-1/x)` transitions in between.
pub fn smooth_bump(t: f64) -> f64 {
    let lo = bump_lo();
    if t <= lo || t >= 2.0 {
        0.0
    } else if t < 1.0 {
        smooth_step((t - lo) / (1.0 - lo))
    } else if t <= SQRT_2 {
        1.0
    } else {
        smooth_step((2.0 - t) / (2.0 - SQRT_2))
    }
}

/// Both sides of `sum_m f(m) = sum_u fhat(u)` for
/// `f(z) = eta(|z|/N) e[a z] cos(4 pi Re(b sqrt z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// Dual terms summed.
    pub terms: usize,
    /// Largest `|fhat(u)|` on the outermost unit shell kept.
    pub tail: f64,
    /// Sum of per-term quadrature error estimates.
    pub quad_error: f64,
}

impl PoissonCheck {
    pub fn discrepancy(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

/// Dual radius past which the dropped `fhat(u)` total well under `1e-6`.
pub fn poisson_default_radius(n: f64) -> f64 {
    (270.0 / n).max(6.0)
}

/// Lattice side: `sum over m in Z[i]` of `f(m)`.
pub fn poisson_lattice_sum(a: Complex64, b: Complex64, n: f64) -> Complex64 {
    let r = (2.0 * n).ceil() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for x in -r..=r {
        for y in -r..=r {
            let m = Complex64::new(x as f64, y as f64);
            let eta = smooth_bump(m.norm() / n);
            if eta == 0.0 {
                continue;
            }
            let osc = (4.0 * PI * (b * m.sqrt()).re).cos();
            acc += additive_char(a * m) * (eta * osc);
        }
    }
    acc
}

/// `int_0^{2 pi} e[A rho^2 e^{2 i phi}] cos(4 pi Re(B rho e^{i phi})) d phi` by Jacobi-Anger.
fn angular(a: Complex64, b: Complex64, rho: f64) -> Complex64 {
    let x = TAU * a.norm() * rho * rho;
    let y = 4.0 * PI * b.norm() * rho;
    let mut acc = Complex64::new(libm::j0(x) * libm::j0(y), 0.0);
    if y > 0.0 && x > 0.0 {
        let gamma = a.arg() - 2.0 * b.arg();
        let all = bessel_j_miller(y, 0);
        let jy: Vec<f64> = all.iter().skip(2).step_by(2).copied().collect();
        let jx = bessel_j_int_orders(jy.len(), x);
        let mut mi = Complex64::new(1.0, 0.0);
        for (k, &v) in jy.iter().enumerate() {
            mi *= Complex64::new(0.0, -1.0);
            let k1 = k + 1;
            acc += mi * (2.0 * jx[k1] * v * (k1 as f64 * gamma).cos());
        }
    }
    acc * TAU
}

/// `fhat(u)` in the chart `z = N w^2`:
/// `2 N^2 int eta(|w|^2) |w|^2 e[(a-u) N w^2] cos(4 pi Re(b sqrt(N) w)) dA_w`.
/// Returns the value and the difference against a rule with doubled panels.
pub fn poisson_dual_term(a: Complex64, b: Complex64, n: f64, u: GaussInt, spec: &QuadratureSpec) -> (Complex64, f64) {
    let big_a = (a - u.to_complex()) * n;
    let big_b = b * n.sqrt();
    let lo = 2f64.powf(-1.0 / 12.0);
    let knots = [lo, 1.0, 2f64.powf(0.25), SQRT_2];
    let freq = 4.0 * PI * big_a.norm() * SQRT_2 + 4.0 * PI * big_b.norm() + 1.0;
    let h = (3.0 / freq).min(0.01) / spec.refine;
    let rule = gl_rule(spec.order);
    let integrate = |h: f64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for w in knots.windows(2) {
            let panels = ((w[1] - w[0]) / h).ceil().max(1.0) as usize;
            let step = (w[1] - w[0]) / panels as f64;
            for k in 0..panels {
                let mid = w[0] + step * (k as f64 + 0.5);
                for &(x, wt) in rule.iter() {
                    let rho = mid + 0.5 * step * x;
                    let r2 = rho * rho;
                    let radial = smooth_bump(r2) * r2 * rho;
                    if radial != 0.0 {
                        acc += angular(big_a, big_b, rho) * (radial * 0.5 * step * wt);
                    }
                }
            }
        }
        acc * (2.0 * n * n)
    };
    let coarse = integrate(h);
    let fine = integrate(h / 2.0);
    (fine, (fine - coarse).norm())
}

/// Lattice sum against the dual sum over `u in Z[i]` with `|u - a| <= radius`.
///
/// Requires `N <= 30`. When no lattice point lies in the support of `f`
/// (`N <= 1/2`) both sides are returned as exact zeros.
pub fn poisson_check(a: Complex64, b: Complex64, n: f64, radius: f64, spec: &QuadratureSpec) -> Result<PoissonCheck> {
    if !(n > 0.0 && n <= 30.0) {
        return Err(Error::Precondition(format!("Poisson check needs 0 < N <= 30, got {n}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("dual radius {radius}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if 2.0 * n <= 1.0 {
        return Ok(PoissonCheck { lhs: zero, rhs: zero, terms: 0, tail: 0.0, quad_error: 0.0 });
    }
    let lhs = poisson_lattice_sum(a, b, n);
    let r = (radius + 1.0).ceil() as i64;
    let (cx, cy) = (a.re.round() as i64, a.im.round() as i64);
    let mut us: Vec<(f64, GaussInt)> = Vec::new();
    for x in cx - r..=cx + r {
        for y in cy - r..=cy + r {
            let u = GaussInt::new(x, y);
            let d = (a - u.to_complex()).norm();
            if d <= radius {
                us.push((d, u));
            }
        }
    }
    us.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.re.cmp(&q.1.re)).then(p.1.im.cmp(&q.1.im)));
    let vals: Vec<(Complex64, f64)> = us
        .par_iter()
        .map(|&(_, u)| poisson_dual_term(a, b, n, u, spec))
        .collect();
    let mut rhs = zero;
    let mut quad_error = 0.0;
    let mut tail: f64 = 0.0;
    for (&(d, _), &(v, e)) in us.iter().zip(&vals) {
        rhs += v;
        quad_error += e;
        if d > radius - 1.0 {
            tail = tail.max(v.norm());
        }
    }
    Ok(PoissonCheck { lhs, rhs, terms: us.len(), tail, quad_error })
}
