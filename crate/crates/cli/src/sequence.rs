//! Coefficient sequences on the window `N^2 < norm <= 2 N^2`.

use std::path::Path;

use num_complex::Complex64;
use picard_core::quadform::CoeffSeq;
use picard_core::{GaussInt, IdealRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::config::{Distribution, SequenceConfig};
use crate::error::{CliError, CliResult};

/// Stream for sequence `index` at window `n`; independent of how many other
/// sequences or windows are requested.
fn rng_for(seed: u64, n: f64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n.to_bits().rotate_left(17));
    rng.set_stream(index as u64);
    rng
}

pub fn random_sequence(n: f64, dist: Distribution, seed: u64, index: usize) -> CliResult<CoeffSeq> {
    let len = CoeffSeq::support(n).len();
    let mut rng = rng_for(seed, n, index);
    let values: Vec<Complex64> = match dist {
        Distribution::UnitCircle => (0..len)
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect(),
        Distribution::PlusMinusOne => (0..len)
            .map(|_| Complex64::new(if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0))
            .collect(),
        Distribution::File => return Err(CliError::Config("file distribution is not random".into())),
    };
    Ok(CoeffSeq::from_values(n, &values)?)
}

#[derive(Debug, Deserialize)]
struct FileRow {
    re: i64,
    im: i64,
    value_re: f64,
    value_im: f64,
}

/// Reads `re,im,value_re,value_im` rows; entries outside the window of `n` are skipped.
pub fn file_sequence(path: &Path, n: f64) -> CliResult<CoeffSeq> {
    let mut rdr = csv::Reader::from_path(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let (lo, hi) = (n * n, 2.0 * n * n);
    let mut entries = Vec::new();
    for row in rdr.deserialize::<FileRow>() {
        let row = row?;
        let id = IdealRep::new(GaussInt::new(row.re, row.im))?;
        let norm = id.norm() as f64;
        if norm > lo && norm <= hi {
            entries.push((id, Complex64::new(row.value_re, row.value_im)));
        }
    }
    Ok(CoeffSeq::new(n, entries)?)
}

/// The sequences requested by `cfg` at window `n`, in index order.
pub fn sequences(cfg: &SequenceConfig, n: f64) -> CliResult<Vec<(usize, CoeffSeq)>> {
    match cfg.distribution {
        Distribution::File => {
            let path = cfg.file.as_ref().ok_or_else(|| CliError::Config("missing sequence file".into()))?;
            Ok(vec![(0, file_sequence(path, n)?)])
        }
        dist => {
            let seed = cfg.seed.ok_or_else(|| CliError::Config("missing seed".into()))?;
            (0..cfg.count).map(|i| Ok((i, random_sequence(n, dist, seed, i)?))).collect()
        }
    }
}
