//! Named groups of acceptance criteria.

use crate::criteria::{by_id, CriterionReport};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table};

pub const SELECTORS: [(&str, &[u8]); 14] = [
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]),
    ("gaussian", &[1, 2]),
    ("kloosterman", &[1, 2]),
    ("bessel", &[3]),
    ("bessel-cross", &[3]),
    ("spectral", &[4, 5]),
    ("plancherel", &[5]),
    ("hecke", &[6]),
    ("quadform", &[7, 8]),
    ("poisson", &[8]),
    ("afe", &[9]),
    ("sieve", &[10]),
    ("determinism", &[11]),
    ("fast", &[2, 3, 5, 6, 8, 11]),
];

/// Criterion ids for a selector: a group name, `cN` or `N`.
pub fn resolve(selector: &str) -> CliResult<Vec<u8>> {
    if let Some((_, ids)) = SELECTORS.iter().find(|(name, _)| *name == selector) {
        return Ok(ids.to_vec());
    }
    let digits = selector.strip_prefix('c').unwrap_or(selector);
    match digits.parse::<u8>() {
        Ok(id) if by_id(id).is_some() => Ok(vec![id]),
        _ => {
            let names: Vec<&str> = SELECTORS.iter().map(|(n, _)| *n).collect();
            Err(CliError::Config(format!(
                "unknown suite '{selector}'; expected one of {} or c1..c11",
                names.join(", ")
            )))
        }
    }
}

pub const SUITE_COLUMNS: [&str; 5] = ["criterion", "title", "passed", "seconds", "detail"];

/// Runs the selected criteria, calling `progress` after each one.
pub fn run_suites_with(selector: &str, mut progress: impl FnMut(&CriterionReport)) -> CliResult<(Table, Vec<CriterionReport>)> {
    let ids = resolve(selector)?;
    let mut table = Table::new("suites", &SUITE_COLUMNS);
    table.note(format!("selector {selector}"));
    let mut reports = Vec::with_capacity(ids.len());
    for id in ids {
        let rep = by_id(id).expect("resolved ids exist")();
        progress(&rep);
        table.push(vec![
            Cell::from(rep.id as i64),
            Cell::from(rep.title),
            Cell::from(rep.passed),
            Cell::from(rep.elapsed.as_secs_f64()),
            Cell::from(rep.detail.clone()),
        ]);
        reports.push(rep);
    }
    Ok((table, reports))
}

/// Runs the selected criteria; `Err(SuiteFailure)` if any failed.
pub fn run_suites(selector: &str) -> CliResult<Table> {
    let (table, reports) = run_suites_with(selector, |_| {})?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::SuiteFailure(failed));
    }
    Ok(table)
}
