//! Exact construction and verification of the coefficient matrices that
//! govern Q-linear relations among the double zeta functions ζ(−c, s+c).

pub mod analytic;
pub mod cli;
pub mod coeffs;
pub mod emit;
pub mod error;
pub mod exactnum;
pub mod numeval;
pub mod relations;
pub mod report;
pub mod trilinalg;

pub use error::{Error, Result};
pub use exactnum::Rational;
