//! The Eisenstein part of the large sieve,
//! `E = int_{|kappa| <= K/2} sum_{|p| <= P/4} |sum_n a_n tau_{i kappa, p}(n)|^2 / |zeta(1 + 2 i kappa, 2p)|^2 d kappa`,
//! against the envelope `(K^2 + P^2)(KP + K^1.1 + P^1.1 + N^2.1 / (KP)) ||a||^2`.
//!
//! Lebesgue measure in `kappa`, counting measure in `p`. At `p = 0` the ball
//! `|kappa| < 1e-3` is left out; the integrand vanishes at `kappa = 0`
//! (`zeta` has its pole there), so the omission is below `1e-6` relative.

use num_complex::Complex64;
use picard_core::hecke::{zeta_oneline, DivisorData};
use picard_core::quadform::CoeffSeq;
use picard_core::quadrature::gl_nodes;
use picard_core::QuadratureSpec;
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::CliResult;
use crate::output::{Cell, Table};
use crate::sequence::sequences;

pub const ZETA_PRIMES: u64 = 10_000;
pub const POLE_BALL: f64 = 1e-3;
pub const EXPONENT: f64 = 1.1;

pub fn envelope(k: f64, p: f64, n: f64, norm2: f64) -> f64 {
    (k * k + p * p) * (k * p + k.powf(EXPONENT) + p.powf(EXPONENT) + n.powf(1.0 + EXPONENT) / (k * p)) * norm2
}

/// Quadrature nodes with `tau` and `1/|zeta|^2` tabulated, shared by all sequences on one window.
pub struct SieveGrid {
    support: Vec<picard_core::IdealRep>,
    /// `(weight, 1/|zeta|^2, tau over the support)` per node, for the coarse and the doubled rule.
    coarse: Vec<(f64, f64, Vec<f64>)>,
    fine: Vec<(f64, f64, Vec<f64>)>,
    /// Largest `heuristic_error / |zeta|` over all nodes.
    pub zeta_rel_err: f64,
}

/// `(fine, weight, 1/|zeta|^2, tau over the support, zeta relative error)`.
type NodeValue = (bool, f64, f64, Vec<f64>, f64);

fn intervals(k: f64, p: i64) -> Vec<(f64, f64, f64)> {
    // (lo, hi, multiplicity)
    let half = k / 2.0;
    if p == 0 {
        vec![(POLE_BALL, half, 2.0)]
    } else {
        vec![(-half, half, 2.0)]
    }
}

impl SieveGrid {
    pub fn new(k: f64, pp: f64, n: f64, spec: &QuadratureSpec) -> CliResult<Self> {
        let support = CoeffSeq::support(n);
        let data: Vec<DivisorData> = support.iter().map(|&id| DivisorData::new(id)).collect::<picard_core::Result<_>>()?;
        let pmax = (pp / 4.0).floor() as i64;
        let freq = 2.0 * (2.0 * n * n).max(2.0).ln() + 4.0;
        let mut nodes: Vec<(bool, f64, i64, f64)> = Vec::new();
        for p in 0..=pmax {
            for (lo, hi, mult) in intervals(k, p) {
                if hi <= lo {
                    continue;
                }
                let panels = spec.panels((hi - lo) * freq / std::f64::consts::PI).max(2);
                for (fine, np) in [(false, panels), (true, 2 * panels)] {
                    for (x, w) in gl_nodes(lo, hi, np, spec.order) {
                        nodes.push((fine, x, p, w * mult));
                    }
                }
            }
        }
        let evaluated: Vec<picard_core::Result<NodeValue>> = nodes
            .par_iter()
            .map(|&(fine, kappa, p, w)| {
                let z = zeta_oneline(kappa, p, ZETA_PRIMES)?;
                let inv = 1.0 / z.value.norm_sqr();
                let tau = data.iter().map(|d| d.tau_ik(kappa, p)).collect();
                Ok((fine, w, inv, tau, z.heuristic_error / z.value.norm()))
            })
            .collect();
        let mut coarse = Vec::new();
        let mut fine_nodes = Vec::new();
        let mut zeta_rel_err: f64 = 0.0;
        for e in evaluated {
            let (fine, w, inv, tau, err) = e?;
            zeta_rel_err = zeta_rel_err.max(err);
            if fine {
                fine_nodes.push((w, inv, tau));
            } else {
                coarse.push((w, inv, tau));
            }
        }
        Ok(SieveGrid {
            support,
            coarse,
            fine: fine_nodes,
            zeta_rel_err,
        })
    }

    fn rule(nodes: &[(f64, f64, Vec<f64>)], a: &[Complex64]) -> f64 {
        nodes
            .iter()
            .map(|(w, inv, tau)| {
                let s: Complex64 = a.iter().zip(tau).map(|(x, t)| x * t).sum();
                w * inv * s.norm_sqr()
            })
            .sum()
    }

    /// `(E, |E_fine - E_coarse|)`; `E` is the doubled-panel value.
    pub fn eval(&self, seq: &CoeffSeq) -> (f64, f64) {
        let a: Vec<Complex64> = self.support.iter().map(|id| seq.get(id)).collect();
        let coarse = Self::rule(&self.coarse, &a);
        let fine = Self::rule(&self.fine, &a);
        (fine, (fine - coarse).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SieveRow {
    pub k: f64,
    pub p: f64,
    pub n: f64,
    pub sequence: usize,
    pub norm2: f64,
    pub value: f64,
    pub quad_error: f64,
    pub zeta_rel_err: f64,
    pub envelope: f64,
    pub ratio: f64,
}

pub fn sieve_rows(cfg: &SweepConfig) -> CliResult<Vec<SieveRow>> {
    cfg.validate()?;
    let spec = cfg.spec();
    let mut rows = Vec::new();
    for &k in &cfg.k {
        for &p in &cfg.p {
            for &n in &cfg.n {
                let grid = SieveGrid::new(k, p, n, &spec)?;
                for (idx, seq) in sequences(&cfg.sequence, n)? {
                    let (value, quad_error) = grid.eval(&seq);
                    let norm2 = seq.norm2_sq();
                    let env = envelope(k, p, n, norm2);
                    rows.push(SieveRow {
                        k,
                        p,
                        n,
                        sequence: idx,
                        norm2,
                        value,
                        quad_error,
                        zeta_rel_err: grid.zeta_rel_err,
                        envelope: env,
                        ratio: if env > 0.0 { value / env } else { 0.0 },
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub const SIEVE_COLUMNS: [&str; 10] =
    ["K", "P", "N", "sequence", "norm2_sq", "eisenstein", "quad_error", "zeta_rel_err", "envelope", "ratio"];

pub fn run_eisenstein_sieve(cfg: &SweepConfig) -> CliResult<Table> {
    let rows = sieve_rows(cfg)?;
    let mut table = Table::new("sieve", &SIEVE_COLUMNS);
    table.note("the cuspidal part is not computed: E alone under the envelope is a necessary condition only");
    table.note(format!(
        "zeta on the 1-line from an Euler product over norms <= {ZETA_PRIMES}; zeta_rel_err is a cutoff-halving heuristic"
    ));
    let max = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    table.note(format!("max ratio {}", crate::output::shortest(max)));
    for r in rows {
        table.push(vec![
            Cell::from(r.k),
            Cell::from(r.p),
            Cell::from(r.n),
            Cell::from(r.sequence),
            Cell::from(r.norm2),
            Cell::from(r.value),
            Cell::from(r.quad_error),
            Cell::from(r.zeta_rel_err),
            Cell::from(r.envelope),
            Cell::from(r.ratio),
        ]);
    }
    Ok(table)
}
