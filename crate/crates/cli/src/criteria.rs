//! Acceptance checks 1 to 11. Each returns a [`CriterionReport`]; every
//! tolerance is a named constant here.

use std::f64::consts::{FRAC_PI_6, PI};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use picard_core::afe::{
    g_weight, truncation_envelope, truncation_norm, truncation_profile, v1, v2, AfeConfig, AfeKernel, Weight,
};
use picard_core::bessel::{bessel_2p_real, bessel_j_series, kernel_bold_j, kernel_bold_j_integral};
use picard_core::factor::{gaussian_primes_up_to, ideal_divisors};
use picard_core::gaussian::{gcd, ideals_in_norm_range};
use picard_core::hecke::{dirichlet_factorization_check, DivisorData};
use picard_core::kloosterman::{inverse_pairs_naive, kloosterman_from_pairs, KloostermanTable};
use picard_core::quadform::{poisson_check, poisson_default_radius};
use picard_core::spectral::{h_direct, h_laplacian, h_weighted, plancherel_h, plancherel_h_numeric, TestFunction};
use picard_core::{GaussInt, IdealRep, QuadratureSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Distribution, Format, SequenceConfig, SweepConfig};
use crate::quadform::ratio_rows;
use crate::sieve::sieve_rows;

pub const KLOOSTERMAN_TOL: f64 = 1e-9;
pub const KLOOSTERMAN_MAX_NORM: i64 = 200;
pub const KLOOSTERMAN_PAIRS: usize = 20;
pub const KLOOSTERMAN_TIME: Duration = Duration::from_secs(30);
pub const WEIL_MAX_NORM: u64 = 10_000;
pub const WEIL_SLACK: f64 = 1e-9;
pub const BESSEL_CROSS_TOL: f64 = 1e-6;
pub const BESSEL_REAL_TOL: f64 = 1e-10;
pub const H_ROUTES_TOL: f64 = 1e-4;
pub const H_ROUTES_TIME: Duration = Duration::from_secs(120);
pub const PLANCHEREL_TOL: f64 = 1e-8;
pub const PLANCHEREL_16PI_TOL: f64 = 1e-6;
pub const HECKE_TOL: f64 = 1e-12;
pub const HECKE_MAX_NORM: u64 = 200;
pub const RATIO_GROWTH: f64 = 1.5;
pub const POISSON_TOL: f64 = 1e-6;
pub const G_ORIGIN_TOL: f64 = 1e-12;
pub const TRUNCATION_TOL: f64 = 1e-6;
/// Reference point for the stabilized sum, as a multiple of the truncation norm.
pub const TRUNCATION_REFERENCE: u64 = 64;
pub const SIEVE_CONSTANT: f64 = 1.0;
pub const SIEVE_TIME: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} ({}): {} [{:.1} s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn report(id: u8, title: &'static str, start: Instant, body: impl FnOnce() -> Result<(bool, String), String>) -> CriterionReport {
    let (passed, detail) = match body() {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every nonzero `c` (all associates) with `norm(c) <= max`.
fn all_moduli(max: i64) -> Vec<GaussInt> {
    let r = (max as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let n = a * a + b * b;
            if n > 0 && n <= max {
                out.push(GaussInt::new(a, b));
            }
        }
    }
    out.sort_by_key(|c| (c.norm(), c.re, c.im));
    out
}

fn random_pairs(seed: u64, count: usize) -> Vec<(GaussInt, GaussInt)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = || GaussInt::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
    (0..count).map(|_| (g(), g())).collect()
}

pub fn c1() -> CriterionReport {
    let start = Instant::now();
    report(1, "Kloosterman oracle equivalence", start, || {
        let moduli = all_moduli(KLOOSTERMAN_MAX_NORM);
        let worst = moduli
            .par_iter()
            .map(|&c| -> picard_core::Result<f64> {
                let table = KloostermanTable::new(c)?;
                let pairs = inverse_pairs_naive(c)?;
                let seed = (c.re as u64) << 32 ^ c.im as u64;
                Ok(random_pairs(seed, KLOOSTERMAN_PAIRS)
                    .into_iter()
                    .map(|(m, n)| (table.sum(m, n) - kloosterman_from_pairs(&pairs, m, n, c)).norm())
                    .fold(0.0, f64::max))
            })
            .collect::<picard_core::Result<Vec<f64>>>()
            .map_err(s)?
            .into_iter()
            .fold(0.0, f64::max);
        let t = start.elapsed();
        Ok((
            worst <= KLOOSTERMAN_TOL && t < KLOOSTERMAN_TIME,
            format!("{} moduli, max |fast - naive| = {worst:.2e}, {:.1} s", moduli.len(), t.as_secs_f64()),
        ))
    })
}

pub fn c2() -> CriterionReport {
    let start = Instant::now();
    report(2, "Kloosterman structure", start, || {
        let moduli = all_moduli(KLOOSTERMAN_MAX_NORM);
        let (imag, sym) = moduli
            .par_iter()
            .map(|&c| -> picard_core::Result<(f64, f64)> {
                let table = KloostermanTable::new(c)?;
                let seed = (c.re as u64) << 32 ^ c.im as u64 ^ 0x5eed;
                let mut im: f64 = 0.0;
                let mut sy: f64 = 0.0;
                for (m, n) in random_pairs(seed, KLOOSTERMAN_PAIRS) {
                    let a = table.sum(m, n);
                    im = im.max(a.im.abs());
                    sy = sy.max((a - table.sum(n, m)).norm());
                }
                Ok((im, sy))
            })
            .collect::<picard_core::Result<Vec<_>>>()
            .map_err(s)?
            .into_iter()
            .fold((0.0f64, 0.0f64), |a, b| (a.0.max(b.0), a.1.max(b.1)));
        let primes = gaussian_primes_up_to(WEIL_MAX_NORM).map_err(s)?;
        let weil = primes
            .par_iter()
            .map(|&pi| -> picard_core::Result<f64> {
                let table = KloostermanTable::new(pi)?;
                let mut worst: f64 = 0.0;
                for (m, n) in random_pairs(pi.norm() as u64 ^ (pi.re as u64) << 20, 3) {
                    if pi.divides(m * n) {
                        continue;
                    }
                    worst = worst.max(table.sum(m, n).norm() / (2.0 * pi.abs()));
                }
                Ok(worst)
            })
            .collect::<picard_core::Result<Vec<f64>>>()
            .map_err(s)?
            .into_iter()
            .fold(0.0, f64::max);
        Ok((
            imag <= KLOOSTERMAN_TOL && sym <= KLOOSTERMAN_TOL && weil <= 1.0 + WEIL_SLACK,
            format!(
                "max |Im S| = {imag:.2e}, max |S(m,n) - S(n,m)| = {sym:.2e}, {} primes, max |S|/(2|c|) = {weil:.4}",
                primes.len()
            ),
        ))
    })
}

pub fn bessel_grid() -> Vec<(f64, i64, Complex64)> {
    let zs = [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::from_polar(3.0, FRAC_PI_6),
        Complex64::new(0.0, 5.0),
    ];
    let mut out = Vec::new();
    for kappa in [0.0, 1.0, 2.5] {
        for p in [0, 1, 3] {
            for z in zs {
                out.push((kappa, p, z));
            }
        }
    }
    out
}

pub fn c3() -> CriterionReport {
    let start = Instant::now();
    report(3, "Bessel cross-representation", start, || {
        let spec = QuadratureSpec::default();
        let mut cross: f64 = 0.0;
        for (kappa, p, z) in bessel_grid() {
            let series = kernel_bold_j(kappa, p, z).map_err(s)?;
            let integral = kernel_bold_j_integral(kappa, p, z.norm(), z.arg(), &spec).map_err(s)?;
            let d = (series - Complex64::new(integral.value, 0.0)).norm() / (1.0 + series.norm());
            cross = cross.max(d);
        }
        let mut real: f64 = 0.0;
        for p in 0..=10i64 {
            for k in 1..=40 {
                let x = 0.5 * k as f64;
                let series = bessel_j_series(Complex64::new(2.0 * p as f64, 0.0), Complex64::new(x, 0.0)).map_err(s)?;
                real = real.max((bessel_2p_real(p, x) - series.re).abs());
            }
        }
        Ok((
            cross <= BESSEL_CROSS_TOL && real <= BESSEL_REAL_TOL,
            format!("36-point grid max rel = {cross:.2e}; J_2p quadrature vs series max = {real:.2e}"),
        ))
    })
}

pub fn c4() -> CriterionReport {
    let start = Instant::now();
    report(4, "Bessel integral three routes", start, || {
        let spec = QuadratureSpec::default();
        let zs = [
            Complex64::new(0.3, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::from_polar(4.0, PI / 7.0),
            Complex64::new(0.0, 5.0),
        ];
        let mut worst: f64 = 0.0;
        for k in [2.0, 4.0] {
            for p in [2.0, 4.0] {
                let tf = TestFunction::new(k, p).map_err(s)?;
                for z in zs {
                    let a = h_direct(&tf, z, &spec).map_err(s)?.value;
                    let b = h_laplacian(&tf, z, &spec).map_err(s)?.value;
                    let c = h_weighted(&tf, z, &spec).map_err(s)?.value;
                    for (x, y) in [(a, b), (a, c), (b, c)] {
                        worst = worst.max((x - y).norm() / x.norm().max(y.norm()));
                    }
                }
            }
        }
        let t = start.elapsed();
        Ok((
            worst <= H_ROUTES_TOL && t < H_ROUTES_TIME,
            format!("16 points, max pairwise rel = {worst:.2e}, {:.1} s", t.as_secs_f64()),
        ))
    })
}

pub fn c5() -> CriterionReport {
    let start = Instant::now();
    report(5, "Plancherel integral", start, || {
        let mut worst: f64 = 0.0;
        for k in [2.0, 4.0, 8.0] {
            for p in [2.0, 4.0, 8.0] {
                let tf = TestFunction::new(k, p).map_err(s)?;
                let closed = plancherel_h(&tf);
                worst = worst.max((closed - plancherel_h_numeric(&tf)).abs() / closed);
            }
        }
        let h22 = plancherel_h(&TestFunction::new(2.0, 2.0).map_err(s)?);
        let off = (h22 - 16.0 * PI).abs();
        Ok((
            worst <= PLANCHEREL_TOL && off <= PLANCHEREL_16PI_TOL,
            format!("max rel numeric vs closed = {worst:.2e}; H(2,2) = {h22:.10} (16 pi off by {off:.2e})"),
        ))
    })
}

pub const HECKE_POINTS: [(f64, i64); 3] = [(0.0, 0), (1.3, 2), (0.7, -1)];

pub fn c6() -> CriterionReport {
    let start = Instant::now();
    report(6, "Hecke relation", start, || {
        let ideals = ideals_in_norm_range(0, HECKE_MAX_NORM);
        let data: Vec<DivisorData> = ideals.iter().map(|&i| DivisorData::new(i)).collect::<picard_core::Result<_>>().map_err(s)?;
        let worst = (0..ideals.len())
            .into_par_iter()
            .map(|i| -> picard_core::Result<f64> {
                let mut w: f64 = 0.0;
                let m = ideals[i].gen();
                for j in 0..ideals.len() {
                    let n = ideals[j].gen();
                    let g = IdealRep::new(gcd(m, n)?)?;
                    let divs = ideal_divisors(g)?;
                    let mut terms = Vec::with_capacity(divs.len());
                    for d in divs {
                        let q = (m * n).exact_div(d.gen() * d.gen())?;
                        terms.push(DivisorData::new(IdealRep::new(q)?)?);
                    }
                    for (kappa, p) in HECKE_POINTS {
                        let lhs = data[i].tau_ik(kappa, p) * data[j].tau_ik(kappa, p);
                        let rhs: f64 = terms.iter().map(|t| t.tau_ik(kappa, p)).sum();
                        w = w.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
                    }
                }
                Ok(w)
            })
            .collect::<picard_core::Result<Vec<f64>>>()
            .map_err(s)?
            .into_iter()
            .fold(0.0, f64::max);
        let mut dirichlet = Vec::new();
        for (kappa, p) in HECKE_POINTS {
            dirichlet.push(dirichlet_factorization_check(1.5, kappa, p, 3000, 200_000).map_err(s)?);
        }
        let ok = dirichlet.iter().all(|d| d.holds());
        let res = dirichlet.iter().map(|d| format!("{:.1e}<={:.1e}", d.residual, d.tau_tail_bound + d.product_error_bound));
        Ok((
            worst <= HECKE_TOL && ok,
            format!(
                "{} ideals, max rel = {worst:.2e}; Dirichlet at s = 1.5: {}",
                ideals.len(),
                res.collect::<Vec<_>>().join(", ")
            ),
        ))
    })
}

/// Grid for the bound-ratio sweep.
pub fn ratio_config(seeds: usize) -> SweepConfig {
    SweepConfig {
        n: vec![4.0, 8.0, 16.0],
        sequence: SequenceConfig {
            seed: Some(20_240_601),
            count: seeds,
            ..SequenceConfig::default()
        },
        ..SweepConfig::default()
    }
}

pub fn c7() -> CriterionReport {
    let start = Instant::now();
    report(7, "bound-ratio sweeps", start, || {
        let cfg = ratio_config(50);
        let rows = ratio_rows(&cfg).map_err(s)?;
        let mut maxima = Vec::new();
        let mut finite = true;
        for &n in &cfg.n {
            let mut m = [0.0f64; 3];
            for r in rows.iter().filter(|r| r.n == n) {
                let r3 = r.ratios.r3.ok_or(format!("proviso fails at N = {n}, c = {}", r.c))?;
                for (slot, v) in m.iter_mut().zip([r.ratios.r1, r.ratios.r2, r3]) {
                    finite &= v.is_finite();
                    *slot = slot.max(v);
                }
            }
            maxima.push(m);
        }
        let mut growth: f64 = 0.0;
        for w in maxima.windows(2) {
            for (hi, lo) in w[1].iter().zip(&w[0]) {
                growth = growth.max(hi / lo);
            }
        }
        let fmt = |m: &[f64; 3]| format!("({:.3e}, {:.3e}, {:.3e})", m[0], m[1], m[2]);
        Ok((
            finite && growth <= RATIO_GROWTH,
            format!(
                "{} queries; maxima N=4 {}, N=8 {}, N=16 {}; max growth on doubling {growth:.3}",
                rows.len(),
                fmt(&maxima[0]),
                fmt(&maxima[1]),
                fmt(&maxima[2])
            ),
        ))
    })
}

/// `(a, b, N)` grid for the Poisson check.
pub fn poisson_grid() -> Vec<(Complex64, Complex64, f64)> {
    vec![
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 20.0),
        (Complex64::new(0.4, -0.2), Complex64::new(0.0, 0.0), 30.0),
        (Complex64::new(0.4, -0.2), Complex64::new(0.05, 0.02), 30.0),
        (Complex64::new(0.0, 0.0), Complex64::new(0.08, 0.0), 25.0),
    ]
}

pub fn c8() -> CriterionReport {
    let start = Instant::now();
    report(8, "Poisson summation", start, || {
        let spec = QuadratureSpec::default();
        let mut ok = true;
        let mut parts = Vec::new();
        for (a, b, n) in poisson_grid() {
            let chk = poisson_check(a, b, n, poisson_default_radius(n), &spec).map_err(s)?;
            let d = chk.discrepancy();
            let rel = d / chk.lhs.norm().max(1.0);
            ok &= rel <= POISSON_TOL;
            parts.push(format!("N={n}: {rel:.1e}"));
        }
        let empty = poisson_check(Complex64::new(0.3, 0.1), Complex64::new(0.2, 0.0), 0.45, 6.0, &spec).map_err(s)?;
        let zero = empty.lhs == Complex64::new(0.0, 0.0) && empty.rhs == Complex64::new(0.0, 0.0);
        Ok((ok && zero, format!("rel discrepancy {}; empty support gives (0, 0): {zero}", parts.join(", "))))
    })
}

/// Criterion 9 split into its three parts so that each can be reported.
#[derive(Debug, Clone, PartialEq)]
pub struct AfeParts {
    pub g_origin: f64,
    pub doubling_ok: bool,
    pub doubling_worst: f64,
    /// `(weight, kappa, p, X0, S(X0), S(64 X0))`.
    pub truncation: Vec<(Weight, f64, i64, u64, f64, f64)>,
}

impl AfeParts {
    pub fn g_ok(&self) -> bool {
        self.g_origin <= G_ORIGIN_TOL
    }

    pub fn truncation_ok(&self) -> bool {
        self.truncation.iter().all(|t| (t.5 - t.4).abs() <= TRUNCATION_TOL)
    }
}

pub fn afe_parts() -> picard_core::Result<AfeParts> {
    let mut g_origin: f64 = 0.0;
    for kappa in [0.0, 1.0, 10.0] {
        for p in [0, 1, 5] {
            g_origin = g_origin.max((g_weight(Complex64::new(0.0, 0.0), kappa, p)? - 1.0).norm());
        }
    }
    let (k, pp) = (3.0, 3.0);
    let cfg = AfeConfig::for_box(k, pp)?;
    let cfg2 = AfeConfig::new(cfg.eps, 2.0 * cfg.u)?;
    let mut doubling_ok = true;
    let mut doubling_worst: f64 = 0.0;
    for (kappa, p) in [(0.0, 0), (1.5, 1), (3.0, 3)] {
        for y in [1e-3, 0.1, 1.0, 10.0, 100.0] {
            for w in [Weight::V1, Weight::V2] {
                let (a, b) = match w {
                    Weight::V1 => (v1(y, kappa, p, &cfg)?.value, v1(y, kappa, p, &cfg2)?.value),
                    Weight::V2 => (v2(y, kappa, p, &cfg)?.value, v2(y, kappa, p, &cfg2)?.value),
                };
                let env = truncation_envelope(w, y, k, pp, &cfg);
                let d = (a - b).norm();
                doubling_ok &= d <= env;
                doubling_worst = doubling_worst.max(d / env);
            }
        }
    }
    let mut truncation = Vec::new();
    for (w, kappa, p) in [(Weight::V1, 3.0, 3), (Weight::V1, 0.0, 0), (Weight::V2, 3.0, 3)] {
        let x0 = truncation_norm(w, k, pp);
        let kernel = AfeKernel::new(w, kappa, p, cfg, (PI.powi(2 * w.q() as i32) * (TRUNCATION_REFERENCE * x0) as f64).ln())?;
        let prof = truncation_profile(&kernel, &[x0, TRUNCATION_REFERENCE * x0])?;
        truncation.push((w, kappa, p, x0, prof[0].1, prof[1].1));
    }
    Ok(AfeParts {
        g_origin,
        doubling_ok,
        doubling_worst,
        truncation,
    })
}

pub fn c9() -> CriterionReport {
    let start = Instant::now();
    report(9, "AFE weights", start, || {
        let parts = afe_parts().map_err(s)?;
        let trunc: Vec<String> = parts
            .truncation
            .iter()
            .map(|(w, kappa, p, x0, a, b)| format!("{w:?}({kappa},{p}) S({x0})={a:.6} S(64X0)={b:.6}"))
            .collect();
        Ok((
            parts.g_ok() && parts.doubling_ok && parts.truncation_ok(),
            format!(
                "|G(0)-1| = {:.1e}; U-doubling max diff/envelope = {:.1e}; truncation {} ({})",
                parts.g_origin,
                parts.doubling_worst,
                if parts.truncation_ok() { "stable" } else { "NOT stable" },
                trunc.join("; ")
            ),
        ))
    })
}

pub fn sieve_config() -> SweepConfig {
    SweepConfig {
        k: vec![2.0, 4.0],
        p: vec![2.0, 4.0],
        n: vec![2.0, 4.0, 8.0],
        sequence: SequenceConfig {
            seed: Some(20_240_602),
            count: 20,
            ..SequenceConfig::default()
        },
        ..SweepConfig::default()
    }
}

pub fn c10() -> CriterionReport {
    let start = Instant::now();
    report(10, "Eisenstein sieve", start, || {
        let rows = sieve_rows(&sieve_config()).map_err(s)?;
        let max = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
        let nonneg = rows.iter().all(|r| r.value >= 0.0);
        let zeta = rows.iter().map(|r| r.zeta_rel_err).fold(0.0, f64::max);
        let quad = rows.iter().map(|r| r.quad_error / r.value.max(1e-300)).fold(0.0, f64::max);
        let t = start.elapsed();
        Ok((
            nonneg && max <= SIEVE_CONSTANT && t < SIEVE_TIME,
            format!(
                "{} rows, max ratio = {max:.4} (constant {SIEVE_CONSTANT}), max quad rel = {quad:.1e}, zeta heuristic rel = {zeta:.1e}",
                rows.len()
            ),
        ))
    })
}

/// A small configuration exercising every randomized table.
pub fn determinism_config() -> SweepConfig {
    SweepConfig {
        k: vec![2.0],
        p: vec![2.0],
        n: vec![2.0],
        cutoff: 16,
        sequence: SequenceConfig {
            seed: Some(11),
            count: 3,
            distribution: Distribution::UnitCircle,
            file: None,
        },
        format: Format::Csv,
        ..SweepConfig::default()
    }
}

pub fn render_all(cfg: &SweepConfig) -> crate::error::CliResult<Vec<Vec<u8>>> {
    Ok(vec![
        crate::phi::run_phi(cfg)?.render(cfg.format)?,
        crate::sieve::run_eisenstein_sieve(cfg)?.render(cfg.format)?,
        crate::quadform::run_quadform(cfg)?.render(cfg.format)?,
    ])
}

pub fn c11() -> CriterionReport {
    let start = Instant::now();
    report(11, "determinism", start, || {
        let cfg = determinism_config();
        let a = render_all(&cfg).map_err(s)?;
        let b = render_all(&cfg).map_err(s)?;
        let bytes: usize = a.iter().map(Vec::len).sum();
        Ok((a == b, format!("3 tables, {bytes} bytes, identical: {}", a == b)))
    })
}

pub fn by_id(id: u8) -> Option<fn() -> CriterionReport> {
    let f: fn() -> CriterionReport = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        10 => c10,
        11 => c11,
        _ => return None,
    };
    Some(f)
}
