//! Sweeps and acceptance checks over `picard-core`, shared by the `picard` binary and the tests.

pub mod config;
pub mod criteria;
pub mod error;
pub mod output;
pub mod phi;
pub mod quadform;
pub mod sequence;
pub mod sieve;
pub mod suites;

pub use config::SweepConfig;
pub use criteria::CriterionReport;
pub use error::{CliError, CliResult};
pub use output::Table;
pub use phi::{run_phi, run_phi_one, GeometricSideReport};
pub use quadform::run_quadform;
pub use sieve::run_eisenstein_sieve;
pub use suites::run_suites;
