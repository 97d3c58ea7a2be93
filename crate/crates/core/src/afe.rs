//! Weights of the approximate functional equations at the central point.
//!
//! `gamma(s, kappa, p) = Gamma(s + (i kappa + |p|)/2) Gamma(s + (-i kappa + |p|)/2)`,
//! `G(v) = gamma(1/2 + v) / gamma(1/2) * exp(v^2)`, and
//!
//! ```text
//! V1(y) = 1/(2 pi i) int_{eps-iU}^{eps+iU} G(v) y^{-v} dv / v
//! V2(y) = 1/(2 pi i) int_{eps-iU}^{eps+iU} zeta_K(1 + 2v) G(v)^2 y^{-v} dv / v
//! ```
//!
//! The vertical integrals use composite Gauss-Legendre in `t = Im v`. An
//! [`AfeKernel`] stores the `y`-independent part of the integrand at the nodes,
//! so many `y` can be evaluated for one `(kappa, p)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::gaussian::ideals_in_norm_range;
use crate::hecke::dedekind_zeta;
use crate::quadrature::{gl_breakpoints, gl_nodes};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfeConfig {
    pub eps: f64,
    pub u: f64,
}

impl AfeConfig {
    pub fn new(eps: f64, u: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 0.25) {
            return Err(Error::Domain(format!("contour abscissa eps = {eps} not in (0, 1/4]")));
        }
        if !(u > 0.0 && u.is_finite()) {
            return Err(Error::Domain(format!("contour height U = {u}")));
        }
        Ok(AfeConfig { eps, u })
    }

    /// `eps = 0.1`, `U = log(K^2 + P^2)`.
    pub fn for_box(k: f64, p: f64) -> Result<Self> {
        Self::new(0.1, (k * k + p * p).ln())
    }
}

/// Which weight: `V1` (first moment) or `V2` (second moment).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    V1,
    V2,
}

impl Weight {
    pub fn q(self) -> u32 {
        match self {
            Weight::V1 => 1,
            Weight::V2 => 2,
        }
    }
}

fn ln_gamma_factor(s: Complex64, kappa: f64, p: i64) -> Result<Complex64> {
    let shift = Complex64::new(p.unsigned_abs() as f64, kappa) / 2.0;
    Ok(ln_gamma(s + shift)? + ln_gamma(s + shift.conj())?)
}

pub fn gamma_factor(s: Complex64, kappa: f64, p: i64) -> Result<Complex64> {
    Ok(ln_gamma_factor(s, kappa, p)?.exp())
}

/// `G(v, kappa, p)`; exactly 1 at `v = 0`.
pub fn g_weight(v: Complex64, kappa: f64, p: i64) -> Result<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    let top = ln_gamma_factor(half + v, kappa, p)?;
    let bottom = ln_gamma_factor(half, kappa, p)?;
    Ok((top - bottom + v * v).exp())
}

/// The quantity whose size bounds the dropped part of the contour:
/// `(K^2+P^2)^eps / (y^eps exp(U^2/2))` for `V1`, with `exp(U^2)` for `V2`.
pub fn truncation_envelope(w: Weight, y: f64, k: f64, p: f64, cfg: &AfeConfig) -> f64 {
    let u2 = match w {
        Weight::V1 => cfg.u * cfg.u / 2.0,
        Weight::V2 => cfg.u * cfg.u,
    };
    (k * k + p * p).powf(cfg.eps) / (y.powf(cfg.eps) * u2.exp())
}

fn integrand_factor(w: Weight, v: Complex64, kappa: f64, p: i64) -> Result<Complex64> {
    let g = g_weight(v, kappa, p)?;
    Ok(match w {
        Weight::V1 => g / v,
        Weight::V2 => dedekind_zeta(1.0 + 2.0 * v)? * g * g / v,
    })
}

/// Panel ends on `[-U, U]`: uniform at the oscillation scale of `y^{-it}` and
/// `G`, graded towards `t = 0` where `1/v` has its pole at distance `dist`.
fn breakpoints(u: f64, dist: f64, log_y: f64, kappa: f64) -> Vec<f64> {
    let osc = log_y.abs() + 2.0 * u + kappa.abs() + 4.0;
    let panels = ((2.0 * u * osc / 6.0).ceil() as usize).max(4);
    let mut ts: Vec<f64> = (0..=panels).map(|k| -u + 2.0 * u * k as f64 / panels as f64).collect();
    let mut r = dist / 2.0;
    while r < u {
        ts.push(r);
        ts.push(-r);
        r *= 2.0;
    }
    ts.push(0.0);
    ts.sort_by(f64::total_cmp);
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    ts
}

/// Precomputed vertical contour for one `(kappa, p)`.
#[derive(Debug, Clone)]
pub struct AfeKernel {
    weight: Weight,
    cfg: AfeConfig,
    // (v, dt * factor(v) / 2 pi)
    nodes: Vec<(Complex64, Complex64)>,
}

impl AfeKernel {
    /// Nodes resolve `y^{-it}` for `|ln y| <= log_y_max`.
    pub fn new(weight: Weight, kappa: f64, p: i64, cfg: AfeConfig, log_y_max: f64) -> Result<Self> {
        let ts = breakpoints(cfg.u, cfg.eps, log_y_max, kappa);
        let mut nodes = Vec::with_capacity(ts.len() * 20);
        for w in ts.windows(2) {
            for (t, wt) in gl_nodes(w[0], w[1], 1, 20) {
                let v = Complex64::new(cfg.eps, t);
                nodes.push((v, integrand_factor(weight, v, kappa, p)? * (wt / (2.0 * PI))));
            }
        }
        Ok(AfeKernel { weight, cfg, nodes })
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn config(&self) -> AfeConfig {
        self.cfg
    }

    pub fn eval(&self, y: f64) -> Result<Complex64> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(Error::Domain(format!("AFE weight needs y > 0, got {y}")));
        }
        let ly = y.ln();
        Ok(self.nodes.iter().map(|&(v, f)| f * (-v * ly).exp()).sum())
    }
}

/// A weight value with its truncation envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AfeValue {
    pub value: Complex64,
    pub envelope: f64,
}

impl AfeValue {
    pub fn flagged(&self, tol: f64) -> bool {
        self.envelope > tol
    }
}

fn weight_value(w: Weight, y: f64, kappa: f64, p: i64, cfg: &AfeConfig) -> Result<AfeValue> {
    let kernel = AfeKernel::new(w, kappa, p, *cfg, y.ln())?;
    // the envelope is stated for the box containing (kappa, p)
    let envelope = truncation_envelope(w, y, kappa.abs().max(1.0), (p.unsigned_abs() as f64).max(1.0), cfg);
    Ok(AfeValue { value: kernel.eval(y)?, envelope })
}

pub fn v1(y: f64, kappa: f64, p: i64, cfg: &AfeConfig) -> Result<AfeValue> {
    weight_value(Weight::V1, y, kappa, p, cfg)
}

pub fn v2(y: f64, kappa: f64, p: i64, cfg: &AfeConfig) -> Result<AfeValue> {
    weight_value(Weight::V2, y, kappa, p, cfg)
}

/// `V1` through the rectangle `[sigma, eps] x [-U, U]`: the residue `G(0) = 1`
/// plus the left side at `Re v = sigma` and the two horizontal sides.
/// Needs `-1/2 < sigma < 0`, which keeps the poles of `G` outside.
pub fn v1_shifted(y: f64, kappa: f64, p: i64, cfg: &AfeConfig, sigma: f64) -> Result<Complex64> {
    if !(sigma > -0.5 && sigma < 0.0) {
        return Err(Error::Domain(format!("shifted abscissa {sigma} not in (-1/2, 0)")));
    }
    let ly = y.ln();
    let f = |v: Complex64| -> Complex64 {
        g_weight(v, kappa, p).map(|g| g * (-v * ly).exp() / v).unwrap_or(Complex64::new(f64::NAN, 0.0))
    };
    let u = cfg.u;
    let ts = breakpoints(u, -sigma, ly, kappa);
    // left side, traversed downwards: -i int f(sigma + it) dt
    let left = gl_breakpoints(&ts, 20, |t| f(Complex64::new(sigma, t))) * Complex64::new(0.0, -1.0);
    let xs: Vec<f64> = (0..=8).map(|k| sigma + (cfg.eps - sigma) * k as f64 / 8.0).collect();
    // bottom rightwards, top leftwards
    let bottom = gl_breakpoints(&xs, 20, |x| f(Complex64::new(x, -u)));
    let top = -gl_breakpoints(&xs, 20, |x| f(Complex64::new(x, u)));
    let contour = (left + bottom + top) / Complex64::new(0.0, 2.0 * PI);
    Ok(Complex64::new(1.0, 0.0) - contour)
}

/// `sum over ideals with norm <= X` of `|V_q(pi^{2q} N(n))| / |n|`, reported at each requested `X`.
pub fn truncation_profile(kernel: &AfeKernel, bounds: &[u64]) -> Result<Vec<(u64, f64)>> {
    let xmax = bounds.iter().copied().max().unwrap_or(0);
    let q = kernel.weight().q() as i32;
    let mut counts = vec![0u32; xmax as usize + 1];
    for k in ideals_in_norm_range(0, xmax) {
        counts[k.norm() as usize] += 1;
    }
    let pq = PI.powi(2 * q);
    let mut sorted = bounds.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = 0.0;
    let mut next = 1usize;
    for x in sorted {
        while next as u64 <= x {
            if counts[next] > 0 {
                let nf = next as f64;
                acc += counts[next] as f64 * kernel.eval(pq * nf)?.norm() / nf.sqrt();
            }
            next += 1;
        }
        out.push((x, acc));
    }
    Ok(out)
}

/// Norm bound `X` with `X^{1/2} = (K^2 + P^2)^{q/2 + 0.1}`.
pub fn truncation_norm(w: Weight, k: f64, p: f64) -> u64 {
    let e = w.q() as f64 / 2.0 + 0.1;
    (k * k + p * p).powf(2.0 * e).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_factor_examples() {
        assert_abs_diff_eq!(gamma_factor(c(0.5, 0.0), 0.0, 0).unwrap().re, PI, epsilon = 1e-13);
        assert_abs_diff_eq!(gamma_factor(c(1.0, 0.0), 0.0, 2).unwrap().re, 1.0, epsilon = 1e-13);
        let g = gamma_factor(c(0.7, 0.0), 1.3, 2).unwrap();
        assert!(g.im.abs() < 1e-14 * g.re.abs());
        assert!(gamma_factor(c(-1.0, 0.0), 0.0, 0).is_err());
    }

    #[test]
    fn g_is_one_at_origin() {
        for kappa in [0.0, 1.0, 10.0] {
            for p in [0, 1, 5] {
                assert_eq!(g_weight(c(0.0, 0.0), kappa, p).unwrap(), c(1.0, 0.0));
            }
        }
    }

    #[test]
    fn g_reflection_product() {
        let v = c(0.1, 0.0);
        let (kappa, p) = (2.5, 3);
        let lhs = g_weight(v, kappa, p).unwrap() * g_weight(-v, kappa, p).unwrap() * (-2.0 * v * v).exp();
        let g0 = gamma_factor(c(0.5, 0.0), kappa, p).unwrap();
        let rhs = gamma_factor(c(0.5, 0.0) + v, kappa, p).unwrap() * gamma_factor(c(0.5, 0.0) - v, kappa, p).unwrap() / (g0 * g0);
        assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn v1_reference_values() {
        // high-precision contour integrals at eps = 0.1, U = log 18
        let cfg = AfeConfig::for_box(3.0, 3.0).unwrap();
        let v = v1(PI * PI, 3.0, 3, &cfg).unwrap().value;
        assert_abs_diff_eq!(v.re, 0.316830750247616, epsilon = 1e-12);
        assert!(v.im.abs() < 1e-12);
        let v = v1(PI * PI * 100.0, 0.0, 0, &cfg).unwrap().value;
        assert_abs_diff_eq!(v.re, 1.96227537367927e-6, epsilon = 1e-15);
        for (y, expect) in [(1e-6, 0.999999916759143), (0.3, 0.821287801671903), (20.0, 0.0794082583378544)] {
            assert_abs_diff_eq!(v1(y, 1.5, 2, &cfg).unwrap().value.re, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn shifted_contour_agrees() {
        let cfg = AfeConfig::for_box(3.0, 3.0).unwrap();
        for y in [1e-6, 0.3, 20.0] {
            let direct = v1(y, 1.5, 2, &cfg).unwrap().value;
            let shifted = v1_shifted(y, 1.5, 2, &cfg, -0.2).unwrap();
            assert_abs_diff_eq!((direct - shifted).norm(), 0.0, epsilon = 1e-11);
        }
    }
}
