//! Exact and high-precision machinery for studying how the zeros of integer
//! polynomials distribute around sets of logarithmic capacity one.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`intpoly`] — exact integer-coefficient polynomials: evaluation,
//!   derivatives, resultants and discriminants.
//! * [`families`] — generators for the polynomial families used as test
//!   corpora (cyclotomic products, monic Chebyshev polynomials, minimal
//!   polynomials of `4cos^2(pi/p)`, `z^n - 1`).
//! * [`rootfinder`] — all complex roots with per-root error radii, via
//!   simultaneous (Aberth–Ehrlich) iteration and precision escalation.
//! * [`potential`] — capacity-one domains with closed-form Green functions,
//!   equilibrium densities and quadrature of equilibrium integrals.
//! * [`mahler`] — Mahler measure, generalized Mahler measures and
//!   approximate sup-norms on domains.
//! * [`discrepancy`] — zero-distribution statistics and both sides of the
//!   explicit discrepancy inequalities, with pass/fail verdicts.

pub mod discrepancy;
pub mod families;
pub mod intpoly;
pub mod mahler;
pub mod potential;
pub mod rootfinder;

mod dd;
mod extprec;
mod resultant;

use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },

    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooLow { required: usize, found: usize },

    #[error("log of zero")]
    LogOfZero,

    #[error("zero constant term (divide the power of z out first)")]
    ZeroConstantTerm,

    #[error("derivative vanishes near {z}")]
    DerivativeVanishes { z: Complex64 },

    #[error("root finding did not converge: worst residual {worst_residual:.3e} for degree {degree}")]
    NonConvergence { worst_residual: f64, degree: usize },

    #[error("quadrature did not converge: last two estimates {last:.17e}, {prev:.17e}")]
    QuadratureNonConvergence { last: f64, prev: f64 },

    #[error("insufficient precision ({digits} significant digits)")]
    InsufficientPrecision { digits: u32 },

    #[error("polynomial has multiple zeros")]
    MultipleZeros,

    #[error("multiple zeros: energy bound inapplicable")]
    EnergyBoundInapplicable,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("unknown test function: {0}")]
    UnknownTestFunction(String),

}

pub type Result<T> = std::result::Result<T, Error>;
