//! Bound-ratio sweep for the quadratic forms `B(theta, c, N)`.

use num_complex::Complex64;
use picard_core::quadform::{bound_ratios, BoundRatios, QuadFormQuery};
use picard_core::GaussInt;
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::error::CliResult;
use crate::output::{Cell, Table};
use crate::sequence::sequences;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub c: GaussInt,
    pub theta: Complex64,
    pub n: f64,
    pub sequence: usize,
    pub ratios: BoundRatios,
}

pub fn ratio_rows(cfg: &SweepConfig) -> CliResult<Vec<RatioRow>> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for &n in &cfg.n {
        for (idx, seq) in sequences(&cfg.sequence, n)? {
            for c in cfg.moduli() {
                for theta in cfg.thetas() {
                    jobs.push((c, theta, n, idx, seq.clone()));
                }
            }
        }
    }
    let out: Vec<picard_core::Result<RatioRow>> = jobs
        .into_par_iter()
        .map(|(c, theta, n, sequence, seq)| {
            let q = QuadFormQuery::new(theta, c, seq)?;
            Ok(RatioRow {
                c,
                theta,
                n,
                sequence,
                ratios: bound_ratios(&q)?,
            })
        })
        .collect();
    Ok(out.into_iter().collect::<picard_core::Result<_>>()?)
}

pub const RATIO_COLUMNS: [&str; 11] =
    ["N", "sequence", "c_re", "c_im", "theta_re", "theta_im", "B", "ratio_1", "ratio_2", "ratio_3", "proviso"];

pub fn run_quadform(cfg: &SweepConfig) -> CliResult<Table> {
    let rows = ratio_rows(cfg)?;
    let mut table = Table::new("quadform", &RATIO_COLUMNS);
    table.note("implied constants are unspecified: ratios are reported, with grid maxima below");
    let max = |f: fn(&RatioRow) -> Option<f64>| rows.iter().filter_map(f).fold(0.0, f64::max);
    table.note(format!(
        "max ratio_1={} ratio_2={} ratio_3={}",
        crate::output::shortest(max(|r| Some(r.ratios.r1))),
        crate::output::shortest(max(|r| Some(r.ratios.r2))),
        crate::output::shortest(max(|r| r.ratios.r3)),
    ));
    for r in rows {
        table.push(vec![
            Cell::from(r.n),
            Cell::from(r.sequence),
            Cell::from(r.c.re),
            Cell::from(r.c.im),
            Cell::from(r.theta.re),
            Cell::from(r.theta.im),
            Cell::from(r.ratios.b),
            Cell::from(r.ratios.r1),
            Cell::from(r.ratios.r2),
            Cell::from(r.ratios.r3),
            Cell::from(r.ratios.r3.is_some()),
        ]);
    }
    Ok(table)
}
