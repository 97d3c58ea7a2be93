//! Sweep configuration, read from JSON and overridden by command-line flags.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use picard_core::{GaussInt, QuadratureSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    #[default]
    UnitCircle,
    PlusMinusOne,
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceConfig {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub distribution: Distribution,
    /// Number of random sequences per grid point.
    #[serde(default = "one")]
    pub count: usize,
    /// CSV with columns `re,im,value_re,value_im`; required for `file`.
    #[serde(default)]
    pub file: Option<PathBuf>,
}

fn one() -> usize {
    1
}

impl Default for SequenceConfig {
    fn default() -> Self {
        SequenceConfig {
            seed: None,
            distribution: Distribution::UnitCircle,
            count: 1,
            file: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub tol: f64,
    pub order: usize,
    pub refine: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let q = QuadratureSpec::default();
        QuadratureConfig {
            tol: q.tol,
            order: q.order,
            refine: q.refine,
        }
    }
}

impl From<QuadratureConfig> for QuadratureSpec {
    fn from(q: QuadratureConfig) -> Self {
        QuadratureSpec {
            tol: q.tol,
            order: q.order,
            refine: q.refine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_k")]
    pub k: Vec<f64>,
    #[serde(default = "default_k")]
    pub p: Vec<f64>,
    #[serde(default = "default_n")]
    pub n: Vec<f64>,
    /// Moduli for the quadratic-form sweep, as `[re, im]`.
    #[serde(default = "default_c")]
    pub c: Vec<[i64; 2]>,
    /// Values of theta, as `[re, im]`.
    #[serde(default = "default_theta")]
    pub theta: Vec<[f64; 2]>,
    #[serde(default)]
    pub sequence: SequenceConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    /// Largest `norm(c)` in the geometric-side sum.
    #[serde(default = "default_cutoff")]
    pub cutoff: u64,
    /// Average the geometric side over the unit classes `{1, i}`.
    #[serde(default)]
    pub epsilon_average: bool,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

fn default_k() -> Vec<f64> {
    vec![2.0]
}

fn default_n() -> Vec<f64> {
    vec![4.0]
}

fn default_c() -> Vec<[i64; 2]> {
    vec![[1, 0], [1, 1], [2, 0], [2, 1], [3, 0]]
}

fn default_theta() -> Vec<[f64; 2]> {
    let r = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
    vec![[0.1, 0.0], [r, r], [1.05, 0.0]]
}

fn default_cutoff() -> u64 {
    4096
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            k: default_k(),
            p: default_k(),
            n: default_n(),
            c: default_c(),
            theta: default_theta(),
            sequence: SequenceConfig::default(),
            quadrature: QuadratureConfig::default(),
            cutoff: default_cutoff(),
            epsilon_average: false,
            out: None,
            format: Format::Csv,
        }
    }
}

impl SweepConfig {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: SweepConfig = serde_json::from_str(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        for (name, grid) in [("k", &self.k), ("p", &self.p), ("n", &self.n)] {
            if grid.is_empty() {
                return bad(format!("grid `{name}` is empty"));
            }
            if let Some(v) = grid.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
                return bad(format!("grid `{name}` has non-positive value {v}"));
            }
        }
        if let Some(v) = self.k.iter().chain(&self.p).find(|v| **v < 0.5) {
            return bad(format!("K and P must be at least 1/2, got {v}"));
        }
        if self.c.is_empty() || self.theta.is_empty() {
            return bad("c and theta lists must be non-empty".into());
        }
        if self.c.iter().any(|c| c[0] == 0 && c[1] == 0) {
            return bad("modulus c = 0".into());
        }
        if self.theta.iter().any(|t| t[0] == 0.0 && t[1] == 0.0) {
            return bad("theta = 0".into());
        }
        match self.sequence.distribution {
            Distribution::File => {
                if self.sequence.file.is_none() {
                    return bad("distribution `file` needs `sequence.file`".into());
                }
            }
            _ => {
                if self.sequence.seed.is_none() {
                    return bad("random sequences need a seed (`--seed` or `sequence.seed`)".into());
                }
            }
        }
        if self.sequence.count == 0 {
            return bad("sequence.count must be positive".into());
        }
        let q = &self.quadrature;
        if !(q.tol > 0.0 && q.order >= 2 && q.order <= 64 && q.refine > 0.0) {
            return bad(format!("bad quadrature settings {q:?}"));
        }
        if self.cutoff == 0 {
            return bad("cutoff must be positive".into());
        }
        Ok(())
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.quadrature.into()
    }

    pub fn moduli(&self) -> Vec<GaussInt> {
        self.c.iter().map(|c| GaussInt::new(c[0], c[1])).collect()
    }

    pub fn thetas(&self) -> Vec<Complex64> {
        self.theta.iter().map(|t| Complex64::new(t[0], t[1])).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_need_a_seed() {
        let mut cfg = SweepConfig::default();
        assert!(matches!(cfg.validate(), Err(CliError::Config(_))));
        cfg.sequence.seed = Some(1);
        cfg.validate().unwrap();
    }

    #[test]
    fn json_round_trip_and_unknown_fields() {
        let cfg: SweepConfig = serde_json::from_str(r#"{"k": [2, 4], "sequence": {"seed": 3, "count": 5}}"#).unwrap();
        assert_eq!(cfg.k, vec![2.0, 4.0]);
        assert_eq!(cfg.sequence.count, 5);
        assert_eq!(cfg.cutoff, 4096);
        assert!(serde_json::from_str::<SweepConfig>(r#"{"kk": [1]}"#).is_err());
        let back: SweepConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn empty_grid_rejected() {
        let mut cfg = SweepConfig::default();
        cfg.sequence.seed = Some(1);
        cfg.n.clear();
        assert!(cfg.validate().is_err());
    }
}
