//! Complex log-Gamma and friends.
//!
//! `ln_gamma` uses the Stirling series with 12 Bernoulli terms after shifting
//! `Re z` above 15 by the recurrence, and the reflection formula for `Re z < 1/2`.
//! Relative accuracy is about `1e-14` for `|Im z| <= 1e3`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const SHIFT: f64 = 15.0;

// B_{2k} / (2k (2k-1)), k = 1..12
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
];

/// `sin(pi w)` with exact reduction of `Re w` modulo 2, so integer points are exact zeros.
pub fn sin_pi(w: Complex64) -> Complex64 {
    let n = w.re.round();
    let s = (PI * Complex64::new(w.re - n, w.im)).sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

/// Principal-ish `ln sin(pi w)`, stable for large `|Im w|`.
pub fn ln_sin_pi(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > 1.0 {
        // sin(pi w) = e^{-i pi w} (1 - e^{2 i pi w}) / (-2i)
        -i * PI * w - Complex64::new(0.0, -2.0).ln() + (1.0 - (2.0 * i * PI * w).exp()).ln()
    } else if w.im < -1.0 {
        ln_sin_pi(w.conj()).conj()
    } else {
        sin_pi(w).ln()
    }
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Gamma(z)`; the imaginary part is continuous along horizontal lines
/// but is not normalized to the principal branch.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Gamma at {z}")));
    }
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma_unchecked(1.0 - z);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `1 / Gamma(z)`, entire; exactly zero at the poles of Gamma.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    (-ln_gamma_unchecked(z)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_values() {
        assert_relative_eq!(gamma(c(0.5, 0.0)).unwrap().re, PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(c(5.0, 0.0)).unwrap().re, 24.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(c(-0.5, 0.0)).unwrap().re, -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(c(1e-3, 0.0)).unwrap().re, 999.423772484595, max_relative = 1e-12);
        assert!(gamma(c(-3.0, 0.0)).is_err());
        assert_eq!(recip_gamma(c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn complex_reference() {
        // |Gamma(1/2 + i t)|^2 = pi / cosh(pi t)
        for t in [0.3, 2.0, 10.0, 60.0] {
            let g = ln_gamma(c(0.5, t)).unwrap();
            assert_relative_eq!(2.0 * g.re, (PI / (PI * t).cosh()).ln(), max_relative = 1e-13, epsilon = 1e-13);
        }
        // |Gamma(i t)|^2 = pi / (t sinh(pi t))
        for t in [0.1, 1.0, 7.5] {
            let g = ln_gamma(c(0.0, t)).unwrap();
            assert_relative_eq!(2.0 * g.re, (PI / (t * (PI * t).sinh())).ln(), max_relative = 1e-13, epsilon = 1e-13);
        }
    }

    #[test]
    fn recurrence_and_reflection() {
        for z in [c(0.3, 0.2), c(-2.7, 1.1), c(3.0, -4.0), c(-0.4, -9.0), c(12.0, 30.0)] {
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert_relative_eq!((lhs - rhs).norm() / lhs.norm(), 0.0, epsilon = 1e-12);
            let refl = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (PI * z).sin();
            assert_relative_eq!((refl - PI).norm(), 0.0, epsilon = 1e-11 * refl.norm().max(1.0));
        }
    }

    #[test]
    fn ln_sin_matches_direct_in_overlap() {
        for w in [c(0.3, 1.5), c(-2.2, -3.0), c(7.1, 2.0)] {
            let a = ln_sin_pi(w).exp();
            let b = (PI * w).sin();
            assert_relative_eq!((a - b).norm() / b.norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn sin_pi_is_exact_near_integers() {
        let v = sin_pi(c(-2.0, 1e-4));
        assert_eq!(v.re, 0.0);
        assert_relative_eq!(v.im, (PI * 1e-4).sinh(), max_relative = 1e-15);
        assert_relative_eq!(sin_pi(c(3.5, 0.0)).re, -1.0, max_relative = 1e-15);
    }
}
