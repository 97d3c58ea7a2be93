//! Quadrature building blocks: composite Gauss-Legendre, periodic trapezoid,
//! Wynn's epsilon algorithm, compensated summation.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::ops::{Add, Mul};
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;

/// Controls every numerical integral: tolerance, rule order, panel density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Target absolute/relative tolerance for tail and truncation estimates.
    pub tol: f64,
    /// Gauss-Legendre nodes per panel.
    pub order: usize,
    /// Multiplier on the default panel count (and node counts for trapezoid rules).
    pub refine: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            tol: 1e-9,
            order: 20,
            refine: 1.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec {
            tol,
            ..Self::default()
        }
    }

    pub fn panels(&self, base: f64) -> usize {
        ((base * self.refine).ceil() as usize).max(1)
    }
}

type Rule = Arc<Vec<(f64, f64)>>;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, cached per order.
pub fn gl_rule(order: usize) -> Rule {
    static CACHE: OnceLock<Mutex<HashMap<usize, Rule>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("rule cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| {
            let n = NonZeroUsize::new(order.max(1)).expect("nonzero");
            let mut pairs = GaussLegendre::new(n).as_node_weight_pairs().to_vec();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            Arc::new(pairs)
        })
        .clone()
}

/// Values that can be integrated: reals and complex numbers.
pub trait Scalar: Copy + Default + Add<Output = Self> + Mul<f64, Output = Self> {}
impl<T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>> Scalar for T {}

/// Composite Gauss-Legendre over `[a, b]` with `panels` equal panels.
pub fn gl_composite<T: Scalar>(a: f64, b: f64, panels: usize, order: usize, mut f: impl FnMut(f64) -> T) -> T {
    let rule = gl_rule(order);
    let h = (b - a) / panels as f64;
    let mut acc = T::default();
    for k in 0..panels {
        let lo = a + h * k as f64;
        let mid = lo + 0.5 * h;
        let mut panel = T::default();
        for &(x, w) in rule.iter() {
            panel = panel + f(mid + 0.5 * h * x) * w;
        }
        acc = acc + panel * (0.5 * h);
    }
    acc
}

/// Gauss-Legendre over consecutive breakpoints `[x0, x1], [x1, x2], ...`.
pub fn gl_breakpoints<T: Scalar>(points: &[f64], order: usize, mut f: impl FnMut(f64) -> T) -> T {
    let mut acc = T::default();
    for w in points.windows(2) {
        acc = acc + gl_composite(w[0], w[1], 1, order, &mut f);
    }
    acc
}

/// Nodes and weights of a composite rule, for callers that precompute integrands.
pub fn gl_nodes(a: f64, b: f64, panels: usize, order: usize) -> Vec<(f64, f64)> {
    let rule = gl_rule(order);
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * order);
    for k in 0..panels {
        let mid = a + h * (k as f64 + 0.5);
        for &(x, w) in rule.iter() {
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

/// Trapezoid rule for a `period`-periodic integrand over one period starting at `a`.
pub fn trapezoid_periodic<T: Scalar>(a: f64, period: f64, n: usize, mut f: impl FnMut(f64) -> T) -> T {
    let h = period / n as f64;
    let mut acc = T::default();
    for k in 0..n {
        acc = acc + f(a + h * k as f64);
    }
    acc * h
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
///
/// Returns the accelerated limit and an error estimate (difference of the
/// last two diagonal estimates).
pub fn wynn_epsilon(partial: &[f64]) -> (f64, f64) {
    let n = partial.len();
    if n == 0 {
        return (0.0, f64::INFINITY);
    }
    if n < 3 {
        let last = partial[n - 1];
        let err = if n == 2 { (partial[1] - partial[0]).abs() } else { f64::INFINITY };
        return (last, err);
    }
    // e[k][j]: column k of the epsilon table
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut estimates = vec![partial[n - 1]];
    for k in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let d = cur[j + 1] - cur[j];
            let base = prev[j + 1];
            next.push(if d == 0.0 { f64::INFINITY } else { base + 1.0 / d });
        }
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        prev = cur;
        cur = next;
        if k % 2 == 0 {
            estimates.push(*cur.last().expect("nonempty"));
        }
        if cur.len() < 2 {
            break;
        }
    }
    let m = estimates.len();
    let best = estimates[m - 1];
    let err = if m >= 2 {
        (estimates[m - 1] - estimates[m - 2]).abs()
    } else {
        (partial[n - 1] - partial[n - 2]).abs()
    };
    (best, err)
}

/// Kahan-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn rule_is_sorted_and_exact() {
        let r = gl_rule(5);
        assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
        let s: f64 = r.iter().map(|&(x, w)| w * x.powi(8)).sum();
        assert_abs_diff_eq!(s, 2.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn composite_real_and_complex() {
        let v = gl_composite(0.0, PI, 4, 10, f64::sin);
        assert_abs_diff_eq!(v, 2.0, epsilon = 1e-14);
        let v = gl_composite(0.0, 1.0, 3, 10, |x| Complex64::new(0.0, x).exp());
        let exact = (Complex64::new(0.0, 1.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert_abs_diff_eq!((v - exact).norm(), 0.0, epsilon = 1e-14);
        let nodes = gl_nodes(0.0, PI, 4, 10);
        let v2: f64 = nodes.iter().map(|&(x, w)| w * x.sin()).sum();
        assert_abs_diff_eq!(v2, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn trapezoid_is_spectral_on_periodic() {
        let v = trapezoid_periodic(0.0, 2.0 * PI, 32, |t| (3.0 * t.cos()).exp());
        // 2 pi I_0(3)
        assert_abs_diff_eq!(v, 2.0 * PI * 4.880792585865024, epsilon = 1e-12);
    }

    #[test]
    fn wynn_accelerates_alternating_series() {
        let mut s = 0.0;
        let partial: Vec<f64> = (0..14)
            .map(|k| {
                s += if k % 2 == 0 { 1.0 } else { -1.0 } / (k as f64 + 1.0);
                s
            })
            .collect();
        let (v, err) = wynn_epsilon(&partial);
        assert_abs_diff_eq!(v, 2f64.ln(), epsilon = 1e-10);
        assert!(err < 1e-8);
    }
}
