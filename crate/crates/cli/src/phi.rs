//! The geometric side: `Phi(c) = sum_{m,n} a_m conj(a_n) S(m, n; c) H(2 pi sqrt(mn) / c)`
//! and the trajectory of `sum_c |Phi(c)| / |c|^2`.
//!
//! `Phi(-c) = Phi(c)` because `S` is real and `H` is even, so the sum runs over
//! one representative of each `c` up to sign (the canonical generator of each
//! ideal and `i` times it) and is doubled.

use std::f64::consts::PI;

use num_complex::Complex64;
use picard_core::kloosterman::KloostermanTable;
use picard_core::quadform::CoeffSeq;
use picard_core::spectral::{h_fourier, TestFunction};
use picard_core::{gaussian, Error, GaussInt, QuadratureSpec};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::CliResult;
use crate::output::{Cell, Table};
use crate::sequence::sequences;

/// Bessel-integral evaluations allowed in one run.
pub const PHI_H_BUDGET: u128 = 1 << 24;
/// `sum_c (support size)^2 phi(c)` allowed in one run.
pub const PHI_KLOOSTERMAN_BUDGET: u128 = 1 << 34;

#[derive(Debug, Clone, PartialEq)]
pub struct PhiRow {
    pub c: GaussInt,
    pub norm: u128,
    pub phi: f64,
    /// `|Phi(c)| / |c|^2`.
    pub scaled: f64,
    /// `2 sum |Phi| / |c|^2` over this row and all earlier ones.
    pub partial: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricSideReport {
    pub rows: Vec<PhiRow>,
    pub cutoff: u64,
    pub total: f64,
    /// Largest partial sum along the trajectory.
    pub sup_partial: f64,
    /// Largest truncation estimate returned by the Bessel integral.
    pub h_truncation: f64,
}

/// One representative of each nonzero `c` up to sign with `norm(c) <= cutoff`, sorted by norm.
pub fn moduli_up_to_sign(cutoff: u64) -> Vec<GaussInt> {
    let mut out = Vec::new();
    for id in gaussian::ideals_in_norm_range(0, cutoff) {
        let c = id.gen();
        out.push(c);
        out.push(GaussInt::new(-c.im, c.re));
    }
    out
}

/// `Phi(c)` for one modulus; with `epsilon_average` the mean over `epsilon in {1, i}`
/// of the sums with `S(m, epsilon n; c)` and `H(2 pi sqrt(epsilon m n) / c)`.
pub fn phi_at(
    c: GaussInt,
    terms: &[(GaussInt, Complex64)],
    tf: &TestFunction,
    spec: &QuadratureSpec,
    epsilon_average: bool,
) -> picard_core::Result<(f64, f64)> {
    if terms.is_empty() {
        return Ok((0.0, 0.0));
    }
    let table = KloostermanTable::new(c)?;
    let roots: Vec<Complex64> = terms.iter().map(|(m, _)| m.to_complex().sqrt()).collect();
    let cc = c.to_complex();
    let units: &[(GaussInt, Complex64)] = if epsilon_average {
        &[
            (GaussInt::new(1, 0), Complex64::new(1.0, 0.0)),
            (GaussInt::new(0, 1), Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)),
        ]
    } else {
        &[(GaussInt::new(1, 0), Complex64::new(1.0, 0.0))]
    };
    let mut total = 0.0;
    let mut trunc: f64 = 0.0;
    for &(eps, root_eps) in units {
        for i in 0..terms.len() {
            for j in i..terms.len() {
                let (m, am) = terms[i];
                let (n, an) = terms[j];
                let weight = if i == j { am.norm_sqr() } else { 2.0 * (am * an.conj()).re };
                if weight == 0.0 {
                    continue;
                }
                let s = table.sum(m, eps * n).re;
                let z = 2.0 * PI * root_eps * roots[i] * roots[j] / cc;
                let h = h_fourier(tf, z, spec)?;
                trunc = trunc.max(h.truncation);
                total += weight * s * h.value.re;
            }
        }
    }
    Ok((total / units.len() as f64, trunc))
}

pub fn run_phi_one(
    seq: &CoeffSeq,
    tf: &TestFunction,
    cutoff: u64,
    spec: &QuadratureSpec,
    epsilon_average: bool,
) -> picard_core::Result<GeometricSideReport> {
    let terms = seq.terms();
    let len = terms.len() as u128;
    // at most 2 * (pi/4 * cutoff + O(sqrt cutoff)) moduli up to sign; 2 * cutoff + 8 covers it
    let moduli_bound = 2 * cutoff as u128 + 8;
    let evals = len * (len + 1) / 2 * moduli_bound * if epsilon_average { 2 } else { 1 };
    if evals > PHI_H_BUDGET {
        return Err(Error::Budget(format!("{evals} Bessel integrals exceed {PHI_H_BUDGET}")));
    }
    // phi(c) < norm(c); the sum over both representatives is at most 2 * cutoff^2 / 2
    let kwork = len * len * (cutoff as u128) * (cutoff as u128);
    if kwork > PHI_KLOOSTERMAN_BUDGET {
        return Err(Error::Budget(format!("{kwork} Kloosterman terms exceed {PHI_KLOOSTERMAN_BUDGET}")));
    }
    let moduli = moduli_up_to_sign(cutoff);
    let values: Vec<picard_core::Result<(f64, f64)>> =
        moduli.par_iter().map(|&c| phi_at(c, &terms, tf, spec, epsilon_average)).collect();
    let mut rows = Vec::with_capacity(moduli.len());
    let mut partial = 0.0;
    let mut sup: f64 = 0.0;
    let mut h_truncation: f64 = 0.0;
    for (c, v) in moduli.into_iter().zip(values) {
        let (phi, trunc) = v?;
        h_truncation = h_truncation.max(trunc);
        let norm = c.norm();
        let scaled = phi.abs() / norm as f64;
        partial += 2.0 * scaled;
        sup = sup.max(partial);
        rows.push(PhiRow {
            c,
            norm,
            phi,
            scaled,
            partial,
        });
    }
    Ok(GeometricSideReport {
        rows,
        cutoff,
        total: partial,
        sup_partial: sup,
        h_truncation,
    })
}

pub const PHI_COLUMNS: [&str; 10] = ["K", "P", "N", "sequence", "c_re", "c_im", "norm", "phi", "phi_over_norm", "partial_sum"];

/// Every `(K, P, N, sequence)` point of the grid; one row per modulus.
pub fn run_phi(cfg: &SweepConfig) -> CliResult<Table> {
    cfg.validate()?;
    let spec = cfg.spec();
    let mut table = Table::new("phi", &PHI_COLUMNS);
    table.note(format!(
        "c runs over one representative per sign class with norm(c) <= {}; partial_sum counts both signs",
        cfg.cutoff
    ));
    if cfg.epsilon_average {
        table.note("phi is averaged over the unit classes {1, i}");
    }
    for &k in &cfg.k {
        for &p in &cfg.p {
            let tf = TestFunction::new(k, p)?;
            for &n in &cfg.n {
                for (idx, seq) in sequences(&cfg.sequence, n)? {
                    let rep = run_phi_one(&seq, &tf, cfg.cutoff, &spec, cfg.epsilon_average)?;
                    table.note(format!(
                        "K={k} P={p} N={n} sequence={idx}: total={} sup_partial={} h_truncation={}",
                        crate::output::shortest(rep.total),
                        crate::output::shortest(rep.sup_partial),
                        crate::output::shortest(rep.h_truncation)
                    ));
                    for r in rep.rows {
                        table.push(vec![
                            Cell::from(k),
                            Cell::from(p),
                            Cell::from(n),
                            Cell::from(idx),
                            Cell::from(r.c.re),
                            Cell::from(r.c.im),
                            Cell::from(r.norm as i64),
                            Cell::from(r.phi),
                            Cell::from(r.scaled),
                            Cell::from(r.partial),
                        ]);
                    }
                }
            }
        }
    }
    Ok(table)
}
