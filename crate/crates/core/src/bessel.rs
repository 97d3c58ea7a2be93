//! Bessel functions of complex order, the product kernels `J_{nu,p}` and
//! bold `J_{nu,p}`, and the real-line integral representations.
//!
//! Series path: `J_mu(z) = (z/2)^mu * Jt_mu((z/2)^2)` with the entire reduced
//! series `Jt_mu(w) = sum (-w)^n / (n! Gamma(mu + n + 1))`.
//!
//! Integral path: after `y = e^r` and folding `r -> -r`,
//! `bold J_{i kappa, p}(x e^{i phi}) = 8 pi (-1)^p int_0^inf J_{2p}(2 x rho(r))
//! Re(conj(chi_{2p}(cosh(r + i phi))) e^{2 i kappa r}) dr`
//! with `rho(r) = |cosh(r + i phi)| = sqrt(sinh^2 r + cos^2 phi)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::ddouble::Cdd;
use crate::error::{Error, Result};
use crate::gamma::recip_gamma;
use crate::quadrature::{gl_composite, trapezoid_periodic, wynn_epsilon, QuadratureSpec};

/// Largest `|z|` accepted by the power series.
pub const SERIES_LIMIT: f64 = 30.0;

/// Offset used to resolve the removable singularity of bold `J` at `kappa = 0`.
pub const KAPPA_EPS: f64 = 1e-4;

const MAX_TERMS: usize = 600;

/// Peak term over result beyond which the series is resummed in double-double.
const CANCELLATION: f64 = 1e3;

/// Reduced series value and the number of terms used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
}

fn negative_integer(mu: Complex64) -> Option<u32> {
    if mu.im == 0.0 && mu.re < 0.0 && mu.re == mu.re.round() {
        Some((-mu.re) as u32)
    } else {
        None
    }
}

/// `Jt_mu(w) = sum_n (-w)^n / (n! Gamma(mu + n + 1))`.
pub fn reduced_series(mu: Complex64, w: Complex64) -> SeriesValue {
    if let Some(k) = negative_integer(mu) {
        // Jt_{-k}(w) = (-w)^k Jt_k(w)
        let inner = reduced_series(Complex64::new(k as f64, 0.0), w);
        return SeriesValue {
            value: (-w).powu(k) * inner.value,
            terms: inner.terms,
        };
    }
    let start = recip_gamma(mu + 1.0);
    let mut term = start;
    let mut sum = term;
    let mut peak = term.norm();
    let settle = 2.0 * w.norm().sqrt() + mu.norm() + 2.0;
    let mut n = 0;
    while n < MAX_TERMS {
        n += 1;
        term *= -w / (n as f64 * (mu + n as f64));
        sum += term;
        peak = peak.max(term.norm());
        if n as f64 > settle && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        if term.norm() == 0.0 {
            break;
        }
    }
    if peak > CANCELLATION * sum.norm() {
        // more than three digits cancelled: redo the sum in double-double
        let dw = Cdd::new(-w);
        let dmu = Cdd::new(mu);
        let mut t = Cdd::new(start);
        let mut acc = t;
        for k in 1..=n {
            let kk = Cdd::new(Complex64::new(k as f64, 0.0));
            t = t.mul(dw).div(kk.mul(dmu.add(kk)));
            acc = acc.add(t);
        }
        sum = acc.to_c64();
    }
    SeriesValue { value: sum, terms: n + 1 }
}

/// `J_nu(z)` by the power series, principal branch of `(z/2)^nu`.
pub fn bessel_j_series(nu: Complex64, z: Complex64) -> Result<Complex64> {
    Ok(bessel_j_series_detail(nu, z)?.value)
}

pub fn bessel_j_series_detail(nu: Complex64, z: Complex64) -> Result<SeriesValue> {
    check_regime(z)?;
    let half = z / 2.0;
    let s = reduced_series(nu, half * half);
    Ok(SeriesValue {
        value: (nu * half.ln()).exp() * s.value,
        terms: s.terms,
    })
}

fn check_regime(z: Complex64) -> Result<()> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("Bessel series at z = 0".into()));
    }
    if !(z.norm() <= SERIES_LIMIT) {
        return Err(Error::Regime {
            abs_z: z.norm(),
            limit: SERIES_LIMIT,
        });
    }
    Ok(())
}

/// `J_{nu,p}(z) = J_{nu+p}(z) J_{nu-p}(conj z)`.
///
/// The two branch factors are paired as `|z/2|^{2 nu} (z/|z|)^{2p}`, i.e. the
/// conjugate factor uses `arg(conj z) = -arg(z)`. This agrees with the
/// principal branch off the negative real axis and keeps the kernel exactly
/// even there too.
pub fn kernel_j(nu: Complex64, p: i64, z: Complex64) -> Result<Complex64> {
    check_regime(z)?;
    let half = z / 2.0;
    let w = half * half;
    let a = reduced_series(nu + p as f64, w).value;
    let b = reduced_series(nu - p as f64, w.conj()).value;
    let theta = z.arg();
    let prefactor = (2.0 * nu * half.norm().ln()).exp() * Complex64::from_polar(1.0, 2.0 * p as f64 * theta);
    Ok(prefactor * a * b)
}

fn bold_j_raw(nu: Complex64, p: i64, z: Complex64) -> Result<Complex64> {
    let diff = kernel_j(-nu, -p, z)? - kernel_j(nu, p, z)?;
    Ok(2.0 * PI * PI / (PI * nu).sin() * diff)
}

/// Bold `J_{i kappa, p}(z) = 2 pi^2 / sin(pi nu) (J_{-nu,-p}(z) - J_{nu,p}(z))`, `nu = i kappa`.
///
/// For `|kappa| < KAPPA_EPS` the value is interpolated linearly between
/// `kappa = -KAPPA_EPS` and `kappa = KAPPA_EPS`; at `kappa = 0` this is the
/// symmetric average, accurate to `O(KAPPA_EPS^2)`.
pub fn kernel_bold_j(kappa: f64, p: i64, z: Complex64) -> Result<Complex64> {
    if kappa.abs() >= KAPPA_EPS {
        return bold_j_raw(Complex64::new(0.0, kappa), p, z);
    }
    bold_j_offset(kappa, p, z, KAPPA_EPS)
}

/// Linear interpolation of bold `J` across `[-eps, eps]`, evaluated at `kappa`.
pub fn bold_j_offset(kappa: f64, p: i64, z: Complex64, eps: f64) -> Result<Complex64> {
    let plus = bold_j_raw(Complex64::new(0.0, eps), p, z)?;
    let minus = bold_j_raw(Complex64::new(0.0, -eps), p, z)?;
    let t = (kappa + eps) / (2.0 * eps);
    Ok(minus * (1.0 - t) + plus * t)
}

/// Number of trapezoid nodes for `J_{2p}(x)`.
pub fn trapezoid_nodes(p: i64, x: f64) -> usize {
    64 * (1 + ((x.abs() + 2.0 * p.unsigned_abs() as f64) / 8.0).ceil() as usize)
}

/// `J_{2p}(x) = (-1)^p / (2 pi) int_0^{2 pi} cos(2 p w + x cos w) dw`, trapezoid rule.
pub fn bessel_2p_real(p: i64, x: f64) -> f64 {
    let n = trapezoid_nodes(p, x);
    let pf = 2.0 * p as f64;
    let v = trapezoid_periodic(0.0, 2.0 * PI, n, |w| (pf * w + x * w.cos()).cos()) / (2.0 * PI);
    if p.rem_euclid(2) == 0 {
        v
    } else {
        -v
    }
}

/// `|J_{2p}(x)| sqrt(x) / sqrt(1 + p^2)`, the constant in the uniform bound.
pub fn bessel_bound_constant(p: i64, x: f64) -> f64 {
    bessel_2p_real(p, x).abs() * x.sqrt() / (1.0 + (p * p) as f64).sqrt()
}

/// `J_0(y), ..., J_n(y)` by Miller's backward recurrence, with `n >= min_order`
/// and past the point where `J_n(y)` drops below `1e-18`.
/// Normalized by `J_0 + 2 sum J_2k = 1`. Needs `y > 0`.
pub fn bessel_j_miller(y: f64, min_order: usize) -> Vec<f64> {
    let n = (2 * ((y + 10.0 * y.cbrt() + 25.0) / 2.0).ceil() as usize).max(min_order);
    let start = n + 30;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-30;
    for k in (1..=start).rev() {
        vals[k - 1] = 2.0 * k as f64 / y * vals[k] - vals[k + 1];
        if vals[k - 1].abs() > 1e250 {
            for v in vals[k - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let norm = vals[0] + 2.0 * vals.iter().skip(2).step_by(2).sum::<f64>();
    vals.truncate(n + 1);
    vals.iter().map(|v| v / norm).collect()
}

/// `J_0(x), ..., J_kmax(x)`: forward recurrence when every order is below `x`, Miller otherwise.
pub fn bessel_j_int_orders(kmax: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut out = vec![0.0; kmax + 1];
        out[0] = 1.0;
        return out;
    }
    if x <= kmax as f64 {
        let mut out = bessel_j_miller(x, kmax);
        out.truncate(kmax + 1);
        return out;
    }
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(libm::j0(x));
    if kmax >= 1 {
        out.push(libm::j1(x));
    }
    for k in 2..=kmax {
        out.push(2.0 * (k - 1) as f64 / x * out[k - 1] - out[k - 2]);
    }
    out
}

/// Both sides of `conj(chi_{2p}(a)) J_{2p}(|a|) = 1/(2 pi i^{2p}) int exp(2ipw + i Re(a e^{iw})) dw`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedBessel {
    pub direct: Complex64,
    pub quadrature: Complex64,
}

pub fn rotated_bessel(a: Complex64, p: i64) -> Result<RotatedBessel> {
    if a.norm() == 0.0 {
        return Err(Error::Domain("rotated Bessel at a = 0".into()));
    }
    let r = a.norm();
    let chi_bar = Complex64::from_polar(1.0, -2.0 * p as f64 * a.arg());
    let direct = chi_bar * bessel_2p_real(p, r);
    let n = trapezoid_nodes(p, r);
    let pf = 2.0 * p as f64;
    let integral = trapezoid_periodic(0.0, 2.0 * PI, n, |w| {
        let phase = pf * w + (a * Complex64::from_polar(1.0, w)).re;
        Complex64::from_polar(1.0, phase)
    });
    let sign = if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(RotatedBessel {
        direct,
        quadrature: integral * sign / (2.0 * PI),
    })
}

/// `Y(z) = |z + 1/z|` and `E(z) = (z + 1/z) / |z + 1/z|` (with `E = 1` where `Y = 0`).
pub fn y_and_e(z: Complex64) -> (f64, Complex64) {
    let s = z + 1.0 / z;
    let y = s.norm();
    if y == 0.0 {
        (0.0, Complex64::new(1.0, 0.0))
    } else {
        (y, s / y)
    }
}

/// Integral-path value with its tail error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralValue {
    pub value: f64,
    pub error: f64,
}

/// Bold `J_{i kappa, p}(x e^{i phi})` from the real-line integral.
///
/// `[0, r0]` is integrated in `r` by Gauss-Legendre panels sized to the local
/// oscillation, where `r0 >= 1` is where `2 x rho` reaches `40 + 4p^2`. Beyond
/// `r0` the variable is `t = 2 x rho(r)`, integrated over consecutive
/// intervals of length `pi`, and the resulting partial sums are accelerated
/// by Wynn's epsilon algorithm, whose last-step difference is the tail estimate.
pub fn kernel_bold_j_integral(kappa: f64, p: i64, x: f64, phi: f64, spec: &QuadratureSpec) -> Result<IntegralValue> {
    if !(x > 0.0) {
        return Err(Error::Domain("polar modulus must be positive".into()));
    }
    let c2 = phi.cos().powi(2);
    let rho = |r: f64| (r.sinh().powi(2) + c2).sqrt();
    let pf = 2.0 * p as f64;
    let angular = |r: f64| -> f64 {
        // Re(conj(chi_{2p}(cosh(r + i phi))) e^{2 i kappa r})
        let ch = Complex64::new(r.cosh() * phi.cos(), r.sinh() * phi.sin());
        let ang = if ch.norm() == 0.0 { 0.0 } else { ch.arg() };
        (2.0 * kappa * r - pf * ang).cos()
    };
    let t_switch = 40.0 + 4.0 * (p * p) as f64;
    let r0 = if 2.0 * x * rho(1.0) >= t_switch {
        1.0
    } else {
        let u = ((t_switch / (2.0 * x)).powi(2) - c2).max(0.0).sqrt();
        u.asinh().max(1.0)
    };
    // inner panels
    let mut inner = 0.0;
    let mut r = 0.0;
    while r < r0 {
        let freq = 2.0 * x * r.cosh() + 2.0 * kappa.abs() + pf.abs() + 1.0;
        let h = (2.0 / freq / spec.refine).min(0.25).min(r0 - r);
        inner += gl_composite(r, r + h, 1, spec.order, |r| bessel_2p_real(p, 2.0 * x * rho(r)) * angular(r));
        r += h;
    }
    // tail in t
    let t0 = 2.0 * x * rho(r0);
    let inv4x2 = 1.0 / (4.0 * x * x);
    let tail_integrand = |t: f64| -> f64 {
        let u = (t * t * inv4x2 - c2).max(0.0).sqrt();
        let r = u.asinh();
        let drdt = t * inv4x2 / (u * (1.0 + u * u).sqrt());
        bessel_2p_real(p, t) * angular(r) * drdt
    };
    let mut partial = Vec::new();
    let mut acc = 0.0;
    let mut best = (0.0, f64::INFINITY);
    let max_intervals = 400;
    let order = spec.order.max(16);
    for k in 0..max_intervals {
        let a = t0 + PI * k as f64;
        acc += gl_composite(a, a + PI, 1, order, tail_integrand);
        partial.push(acc);
        if partial.len() >= 8 && partial.len() % 2 == 0 {
            let window = &partial[partial.len().saturating_sub(24)..];
            best = wynn_epsilon(window);
            if best.1 < spec.tol * 0.01 * (1.0 + (inner + best.0).abs()) {
                break;
            }
        }
    }
    let scale = 8.0 * PI * if p.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let value = scale * (inner + best.0);
    let error = 8.0 * PI * best.1;
    if error > spec.tol * (1.0 + value.abs()) {
        return Err(Error::Accuracy {
            achieved: error,
            tolerance: spec.tol,
        });
    }
    Ok(IntegralValue { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_reference_values() {
        assert_abs_diff_eq!(bessel_j_series(c(0.0, 0.0), c(1.0, 0.0)).unwrap().re, 0.7651976865579666, epsilon = 1e-14);
        assert_abs_diff_eq!(bessel_j_series(c(1.0, 0.0), c(2.5, 0.0)).unwrap().re, 0.4970941024642741, epsilon = 1e-14);
        // J_{1/2}(x) = sqrt(2/(pi x)) sin x
        let x = 3.7;
        let v = bessel_j_series(c(0.5, 0.0), c(x, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, (2.0 / (PI * x)).sqrt() * x.sin(), epsilon = 1e-14);
        // J_{-1}(z) = -J_1(z)
        let z = c(1.3, -0.4);
        let a = bessel_j_series(c(-1.0, 0.0), z).unwrap();
        let b = bessel_j_series(c(1.0, 0.0), z).unwrap();
        assert_abs_diff_eq!((a + b).norm(), 0.0, epsilon = 1e-14);
        assert!(matches!(bessel_j_series(c(0.0, 0.0), c(31.0, 0.0)), Err(Error::Regime { .. })));
    }

    #[test]
    fn small_argument_limits() {
        let tiny = c(1e-8, 0.0);
        assert_abs_diff_eq!(bessel_j_series(c(0.0, 0.0), tiny).unwrap().re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_j_series(c(2.0, 0.0), tiny).unwrap().norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn order_continuity() {
        let nu = c(0.3, 0.2);
        let z = c(2.0, 1.0);
        let a = bessel_j_series(nu, z).unwrap();
        let b = bessel_j_series(nu + 1e-6, z).unwrap();
        assert!((a - b).norm() < 1e-4);
    }

    #[test]
    fn kernel_evenness_and_realness() {
        let nu = c(0.0, 1.0);
        for z in [c(2.0, 1.0), c(-1.5, 0.0), c(0.0, 3.0), c(-0.7, -2.2)] {
            let a = kernel_j(nu, 1, z).unwrap();
            let b = kernel_j(nu, 1, -z).unwrap();
            assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
        }
        let x = 1.7;
        let v = kernel_j(c(0.4, 0.0), 0, c(x, 0.0)).unwrap();
        let j = bessel_j_series(c(0.4, 0.0), c(x, 0.0)).unwrap();
        assert_abs_diff_eq!((v - j * j).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn bold_kernel_symmetries() {
        let z = c(1.0, 1.0);
        let a = kernel_bold_j(1.0, 2, z).unwrap();
        let b = kernel_bold_j(1.0, 2, -z).unwrap();
        assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()));
        let m = kernel_bold_j(-1.0, -2, z).unwrap();
        assert!((a - m).norm() <= 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn bold_kernel_at_zero_is_minus_four_pi_squared_j0_y0() {
        // J_0(1) Y_0(1)
        let j0 = 0.7651976865579666;
        let y0 = 0.08825696421567696;
        let v = kernel_bold_j(0.0, 0, c(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, -4.0 * PI * PI * j0 * y0, epsilon = 1e-7);
    }

    #[test]
    fn real_order_quadrature() {
        assert_abs_diff_eq!(bessel_2p_real(0, 0.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(bessel_2p_real(3, 0.0), 0.0, epsilon = 1e-15);
        let s = bessel_j_series(c(2.0, 0.0), c(1.0, 0.0)).unwrap().re;
        assert_abs_diff_eq!(bessel_2p_real(1, 1.0), s, epsilon = 1e-14);
        assert_abs_diff_eq!(bessel_2p_real(-1, 1.0), s, epsilon = 1e-14);
        let cst = bessel_bound_constant(5, 200.0);
        assert!(cst.is_finite() && cst < 1.0);
    }

    #[test]
    fn rotated_examples() {
        let r = rotated_bessel(c(2.5, 0.0), 2).unwrap();
        assert_abs_diff_eq!(r.direct.re, bessel_2p_real(2, 2.5), epsilon = 1e-15);
        let r = rotated_bessel(c(0.0, 3.0), 0).unwrap();
        assert_abs_diff_eq!(r.direct.re, bessel_2p_real(0, 3.0), epsilon = 1e-15);
        let r = rotated_bessel(Complex64::from_polar(2.0, PI / 3.0), 1).unwrap();
        assert!((r.direct - r.quadrature).norm() < 1e-9);
    }

    #[test]
    fn y_e_examples() {
        let (y, e) = y_and_e(c(1.0, 0.0));
        assert_abs_diff_eq!(y, 2.0);
        assert_abs_diff_eq!((e - 1.0).norm(), 0.0);
        let (y, _) = y_and_e(c(0.0, 1.0));
        assert_abs_diff_eq!(y, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn integral_path_matches_series() {
        let spec = QuadratureSpec::default();
        let z = Complex64::from_polar(2.0, PI / 4.0);
        let s = kernel_bold_j(1.0, 1, z).unwrap();
        let i = kernel_bold_j_integral(1.0, 1, 2.0, PI / 4.0, &spec).unwrap();
        assert!((s.re - i.value).abs() <= 1e-6 * (1.0 + s.norm()), "{s} vs {}", i.value);
        assert!(s.im.abs() <= 1e-9 * (1.0 + s.norm()));
    }

    #[test]
    fn integer_orders_match_jn() {
        for x in [1e-3, 0.3, 7.0, 29.5, 30.5, 250.0] {
            let v = bessel_j_int_orders(30, x);
            assert_eq!(v.len(), 31);
            for (k, &j) in v.iter().enumerate() {
                assert_abs_diff_eq!(j, libm::jn(k as i32, x), epsilon = 1e-13);
            }
        }
        for y in [1e-6, 0.4, 3.0, 12.0] {
            for (k, &j) in bessel_j_miller(y, 0).iter().enumerate() {
                assert_abs_diff_eq!(j, libm::jn(k as i32, y), epsilon = 1e-14);
            }
        }
    }
}
