//! Numerical toolkit for the Kuznetsov formula over the Gaussian integers.

pub mod afe;
pub mod bessel;
mod ddouble;
pub mod error;
pub mod factor;
pub mod gamma;
pub mod gaussian;
pub mod hecke;
pub mod kloosterman;
pub mod quadform;
pub mod quadrature;
pub mod residue;
pub mod spectral;

pub use error::{Error, Result};
pub use gaussian::{GaussInt, IdealRep};
pub use quadrature::QuadratureSpec;
