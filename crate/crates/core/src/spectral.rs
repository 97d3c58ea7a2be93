//! The Gaussian test function `h`, its Plancherel integral, and the Bessel
//! integral `H(z)` by three routes: directly over the spectrum, and through
//! the two `(r, omega)` representations with `k, theta` (second-derivative
//! form) and with the weight `sinh^2 r + sin^2 omega`.
//!
//! Measures are plain Lebesgue in `kappa` and `r`, counting in `p`, and
//! Lebesgue in `omega` over one period `[0, pi)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bessel::{bessel_j_int_orders, kernel_bold_j};
use crate::error::{Error, Result};
use crate::quadrature::{gl_composite, gl_rule, QuadratureSpec};

/// `h(kappa, p) = exp(-(kappa/K)^2 - (p/P)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub k: f64,
    pub p: f64,
}

impl TestFunction {
    pub fn new(k: f64, p: f64) -> Result<Self> {
        if !(k >= 0.5 && p >= 0.5 && k.is_finite() && p.is_finite()) {
            return Err(Error::Domain(format!("test function needs K, P >= 1/2, got ({k}, {p})")));
        }
        Ok(TestFunction { k, p })
    }

    pub fn h(&self, kappa: f64, p: i64) -> f64 {
        (-(kappa / self.k).powi(2) - (p as f64 / self.p).powi(2)).exp()
    }

    /// `|p|` beyond which the Gaussian weight is negligible for the direct route.
    pub fn p_cutoff(&self) -> i64 {
        (8.0 * self.p).ceil() as i64 + 40
    }
}

/// `H = sum_p int h(kappa, p) (kappa^2 + p^2) d kappa` with closed-form Gaussian moments.
pub fn plancherel_h(tf: &TestFunction) -> f64 {
    let sp = PI.sqrt();
    let m0 = sp * tf.k;
    let m2 = sp * tf.k.powi(3) / 2.0;
    let mut total = m2;
    let mut p = 1i64;
    loop {
        let w = (-(p as f64 / tf.p).powi(2)).exp();
        let term = 2.0 * w * (m2 + m0 * (p * p) as f64);
        total += term;
        if term < 1e-18 * total {
            break;
        }
        p += 1;
    }
    total
}

/// Leading term `(pi/2) K P (K^2 + P^2)`.
pub fn plancherel_asymptotic(tf: &TestFunction) -> f64 {
    PI / 2.0 * tf.k * tf.p * (tf.k * tf.k + tf.p * tf.p)
}

/// `H` by Gauss-Legendre in `kappa` over `[-12K, 12K]` and a direct `p` sum.
pub fn plancherel_h_numeric(tf: &TestFunction) -> f64 {
    let pmax = tf.p_cutoff();
    let panels = 48;
    let mut total = 0.0;
    for p in -pmax..=pmax {
        let pf = (p * p) as f64;
        total += gl_composite(-12.0 * tf.k, 12.0 * tf.k, panels, 20, |k| tf.h(k, p) * (k * k + pf));
    }
    total
}

/// `trh(r, w) = cosh r cos w + i sinh r sin w`.
pub fn trh(r: f64, w: f64) -> Complex64 {
    Complex64::new(r.cosh() * w.cos(), r.sinh() * w.sin())
}

/// `Re(e^{i phi} trh(r, w)) = cosh r cos w cos phi - sinh r sin w sin phi`.
pub fn trh_phase(r: f64, w: f64, phi: f64) -> f64 {
    r.cosh() * w.cos() * phi.cos() - r.sinh() * w.sin() * phi.sin()
}

/// `k(r)`, `k''(r)`, `theta(w)`, `theta''(w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KTheta {
    pub k: f64,
    pub k2: f64,
    pub theta: f64,
    pub theta2: f64,
}

pub fn k_of(tf: &TestFunction, r: f64) -> (f64, f64) {
    let kk = tf.k * tf.k;
    let k = PI.sqrt() * tf.k * (-kk * r * r).exp();
    (k, k * (4.0 * kk * kk * r * r - 2.0 * kk))
}

/// Periodized Gaussian `theta(w) = sqrt(pi) P sum_q exp(-(P (w + pi q))^2)` and its second derivative.
pub fn theta_of(tf: &TestFunction, w: f64) -> (f64, f64) {
    let pp = tf.p * tf.p;
    let w0 = w - PI * (w / PI).round();
    let c = PI.sqrt() * tf.p;
    let mut th = 0.0;
    let mut th2 = 0.0;
    let mut q = 0i64;
    loop {
        let mut any = false;
        for s in if q == 0 { vec![0i64] } else { vec![q, -q] } {
            let u = w0 + PI * s as f64;
            let g = (-pp * u * u).exp();
            if g >= 1e-18 {
                any = true;
            }
            th += c * g;
            th2 += c * g * (4.0 * pp * pp * u * u - 2.0 * pp);
        }
        if !any && q > 0 {
            break;
        }
        q += 1;
    }
    (th, th2)
}

pub fn k_theta(tf: &TestFunction, r: f64, w: f64) -> KTheta {
    let (k, k2) = k_of(tf, r);
    let (theta, theta2) = theta_of(tf, w);
    KTheta { k, k2, theta, theta2 }
}

/// A Bessel-integral value with the estimated truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HValue {
    pub value: Complex64,
    pub truncation: f64,
}

/// `H(z) = sum_p int h(kappa, p) boldJ_{i kappa, p}(z) (kappa^2 + p^2) d kappa`.
///
/// The `(kappa, p) -> (-kappa, -p)` symmetry of both `h` and bold `J` halves
/// the domain to `kappa in [0, 8K]`, all `|p| <= 8P + 40`.
pub fn h_direct(tf: &TestFunction, z: Complex64, spec: &QuadratureSpec) -> Result<HValue> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("H(z) at z = 0".into()));
    }
    let kmax = 8.0 * tf.k;
    let panels = spec.panels(kmax * (1.0 + z.norm().ln().abs()) / 2.0 + 8.0);
    let pmax = tf.p_cutoff();
    let rows: Vec<Result<Complex64>> = (-pmax..=pmax)
        .into_par_iter()
        .map(|p| {
            let pf = (p * p) as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            let rule = gl_rule(spec.order);
            let h = kmax / panels as f64;
            for j in 0..panels {
                let mid = h * (j as f64 + 0.5);
                for &(x, w) in rule.iter() {
                    let kappa = mid + 0.5 * h * x;
                    let weight = tf.h(kappa, p) * (kappa * kappa + pf);
                    if weight == 0.0 {
                        continue;
                    }
                    acc += kernel_bold_j(kappa, p, z)? * (weight * w * 0.5 * h);
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for r in rows {
        total += r?;
    }
    let truncation = plancherel_h(tf) * (-(64.0f64)).exp() + (-(tf.p_cutoff() as f64 / tf.p).powi(2)).exp();
    Ok(HValue {
        value: 2.0 * total,
        truncation,
    })
}

/// Radial truncation `R` for the `(r, omega)` routes.
pub fn r_cutoff(tf: &TestFunction) -> f64 {
    (10.0 / tf.k + 2.0).min(7.0 / tf.k)
}

/// Integrates `f(r, w) * cos(2 Re(z trh(r, w)))` over `[-R, R] x [0, pi)`.
///
/// `r` uses Gauss-Legendre panels no wider than one local oscillation of the
/// phase (`2|z| cosh r`) or a fifth of the Gaussian width; `omega` uses the
/// trapezoid rule, which is spectrally accurate because every integrand here
/// is `pi`-periodic. The `omega` node count grows with the phase bandwidth at `r`.
fn dual_integral<F>(tf: &TestFunction, z: Complex64, spec: &QuadratureSpec, weight: F) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let big_r = r_cutoff(tf);
    let az = z.norm();
    let mut breaks = vec![0.0];
    let mut r = 0.0;
    while r < big_r {
        let h = (PI / (2.0 * az * r.cosh() + 1.0)).min(0.2 / tf.k) / spec.refine;
        r = (r + h).min(big_r);
        breaks.push(r);
    }
    let rule = gl_rule(spec.order);
    let nodes: Vec<(f64, f64)> = breaks
        .windows(2)
        .flat_map(|w| {
            let (a, b) = (w[0], w[1]);
            let rule = rule.clone();
            (0..rule.len()).map(move |i| {
                let (x, wt) = rule[i];
                (0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * wt)
            })
        })
        .collect();
    let rows: Vec<f64> = nodes
        .par_iter()
        .map(|&(r, wr)| {
            let band = 2.0 * az * r.cosh() + 12.0 * tf.p + 40.0;
            let n = ((band * spec.refine).ceil() as usize).max(64);
            let h = PI / n as f64;
            let mut acc = 0.0;
            for j in 0..n {
                let w = h * j as f64;
                let phase = 2.0 * (z * trh(r, w)).re;
                let phase_neg = 2.0 * (z * trh(-r, w)).re;
                acc += weight(r, w) * phase.cos() + weight(-r, w) * phase_neg.cos();
            }
            acc * h * wr
        })
        .collect();
    rows.iter().sum()
}

/// `H(z) = - int int cos(2 Re(z trh)) (k'' theta + k theta'') dr dw`.
pub fn h_laplacian(tf: &TestFunction, z: Complex64, spec: &QuadratureSpec) -> Result<HValue> {
    let v = dual_integral(tf, z, spec, |r, w| {
        let kt = k_theta(tf, r, w);
        -(kt.k2 * kt.theta + kt.k * kt.theta2)
    });
    Ok(HValue {
        value: Complex64::new(v, 0.0),
        truncation: r_truncation(tf),
    })
}

/// `H(z) = |2z|^2 int int cos(2 Re(z trh)) (sinh^2 r + sin^2 w) k theta dr dw`.
pub fn h_weighted(tf: &TestFunction, z: Complex64, spec: &QuadratureSpec) -> Result<HValue> {
    let v = dual_integral(tf, z, spec, |r, w| {
        let (k, _) = k_of(tf, r);
        let (th, _) = theta_of(tf, w);
        (r.sinh().powi(2) + w.sin().powi(2)) * k * th
    });
    Ok(HValue {
        value: Complex64::new(4.0 * z.norm_sqr() * v, 0.0),
        truncation: 4.0 * z.norm_sqr() * r_truncation(tf),
    })
}

/// `H(z)` by the second route with the `omega` integral done in closed form.
///
/// With `Re(z trh(r, w)) = A cos(w + d)`, Jacobi-Anger and the Fourier series
/// `theta(w) = sum_k t_k e^{2ikw}`, `t_k = exp(-(k/P)^2)`, give at each `r`
/// `pi [f_0 J_0(2A) + 2 sum_{k>0} (-1)^k f_k J_2k(2A) cos(2kd)]` with
/// `f_k = (sinh^2 r + 1/2) t_k - (t_{k-1} + t_{k+1}) / 4`.
/// Only the `r` integral is numerical, so the cost is linear in `|z|`.
pub fn h_fourier(tf: &TestFunction, z: Complex64, spec: &QuadratureSpec) -> Result<HValue> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("H(z) at z = 0".into()));
    }
    let kmax = (6.3 * tf.p).ceil() as usize + 1;
    let t: Vec<f64> = (0..=kmax + 1).map(|k| (-(k as f64 / tf.p).powi(2)).exp()).collect();
    let big_r = r_cutoff(tf);
    let az = z.norm();
    let mut breaks = vec![0.0];
    let mut r: f64 = 0.0;
    while r < big_r {
        let h = (TAU / (2.0 * az * r.cosh() + 1.0)).min(0.2 / tf.k).min(0.05) / spec.refine;
        r = (r + h).min(big_r);
        breaks.push(r);
    }
    let rule = gl_rule(spec.order);
    let at = |r: f64| -> f64 {
        let (k, _) = k_of(tf, r);
        let s = r.sinh().powi(2);
        let w = Complex64::new(z.re * r.cosh(), z.im * r.sinh());
        let a = w.norm();
        let rot = if a > 0.0 { (w / a) * (w / a) } else { Complex64::new(1.0, 0.0) };
        let j = bessel_j_int_orders(2 * kmax, 2.0 * a);
        let mut acc = ((s + 0.5) * t[0] - 0.5 * t[1]) * j[0];
        let mut phase = Complex64::new(1.0, 0.0);
        for kk in 1..=kmax {
            phase *= rot;
            let f = (s + 0.5) * t[kk] - 0.25 * (t[kk - 1] + t[kk + 1]);
            let sign = if kk % 2 == 0 { 1.0 } else { -1.0 };
            acc += 2.0 * sign * f * j[2 * kk] * phase.re;
        }
        PI * k * acc
    };
    let panels: Vec<f64> = breaks
        .par_windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            rule.iter().map(|&(x, wt)| wt * at(0.5 * (a + b) + half * x)).sum::<f64>() * half
        })
        .collect();
    // the integrand is even in r
    let v = 2.0 * panels.iter().sum::<f64>();
    Ok(HValue {
        value: Complex64::new(4.0 * z.norm_sqr() * v, 0.0),
        truncation: 4.0 * z.norm_sqr() * r_truncation(tf),
    })
}

/// `int int (sinh^2 r + sin^2 w) k theta dr dw`, the z-free envelope of the second route.
pub fn weighted_envelope(tf: &TestFunction, spec: &QuadratureSpec) -> f64 {
    dual_integral(tf, Complex64::new(0.0, 0.0), spec, |r, w| {
        let (k, _) = k_of(tf, r);
        let (th, _) = theta_of(tf, w);
        (r.sinh().powi(2) + w.sin().powi(2)) * k * th
    })
}

fn r_truncation(tf: &TestFunction) -> f64 {
    let r = r_cutoff(tf);
    PI.sqrt() * tf.k * (-(tf.k * r).powi(2)).exp() * r.sinh().powi(2).max(1.0) * PI * tf.k.powi(4) * r * r
}

/// Second-order Laplacian check: `(d_r^2 + d_w^2) cos(2 Re(z trh)) = -4 |z|^2 (sinh^2 r + sin^2 w) cos(2 Re(z trh))`.
/// Returns `(finite-difference value, closed form)`.
pub fn laplacian_identity(z: Complex64, r: f64, w: f64, step: f64) -> (f64, f64) {
    let f = |r: f64, w: f64| (2.0 * (z * trh(r, w)).re).cos();
    let c = f(r, w);
    let fd = (f(r + step, w) + f(r - step, w) + f(r, w + step) + f(r, w - step) - 4.0 * c) / (step * step);
    let exact = -4.0 * z.norm_sqr() * (r.sinh().powi(2) + w.sin().powi(2)) * c;
    (fd, exact)
}
