use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by construction and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point lies outside the open unit disk: |z| = {modulus}")]
    PointOutsideDisk { modulus: f64 },
    #[error("coefficient index must be at least 2, got {n}")]
    IndexBelowTwo { n: usize },
    #[error("coefficient a_{n} must be finite")]
    NonFiniteCoefficient { n: usize },
    #[error("negative-coefficient series requires a_{n} real and >= 0, got {re}+{im}i")]
    InvalidNegativeCoefficient { n: usize, re: f64, im: f64 },
    #[error("alpha must lie in [0, 1), got {value}")]
    InvalidAlpha { value: f64 },
    #[error("beta must lie in [0, 1], got {value}")]
    InvalidBeta { value: f64 },
    #[error("tau must be finite and nonzero")]
    InvalidTau,
    #[error("{operation} requires real tau, got {tau}")]
    NonRealTau {
        operation: &'static str,
        tau: Complex64,
    },
    #[error("{operation} requires a negative-coefficient series")]
    RequiresNegativeT { operation: &'static str },
    #[error("tau magnitude must be positive and finite, got {value}")]
    InvalidTauMagnitude { value: f64 },
    #[error("fill factor must be finite and >= 0, got {value}")]
    InvalidFill { value: f64 },
    #[error("generator needs at least one coefficient slot")]
    EmptyGenerator,
    #[error("non-member margin must be positive and finite, got {value}")]
    InvalidMargin { value: f64 },
    #[error("quotient denominator nearly vanishes at z = {z}")]
    DenominatorNearZero { z: Complex64 },
    #[error("boundary evaluation degenerate: |1 - B| = {gap:e} is below 1e-12")]
    DegenerateBoundary { gap: f64 },
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
    #[error("denominator guard tripped at {failures} of {samples} samples (above 1%)")]
    ExcessiveDenominatorFailures { failures: usize, samples: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
