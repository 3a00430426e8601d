// Copyright 2026 qdm-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation that requires a Hermitian matrix received one that is not.
    #[error("matrix is not Hermitian: max |A - A^H| = {defect:.3e} exceeds {tol:.1e}")]
    NonHermitianInput { defect: f64, tol: f64 },

    /// psd_sqrt received a matrix with an eigenvalue below the clamp window.
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e}")]
    NegativeSpectrum { eigenvalue: f64 },

    /// Bogoliubov transform is undefined at xi = delta = 0.
    #[error("degenerate input: xi and delta are both zero")]
    DegenerateInput,

    /// Jump-operator frequencies must be strictly positive.
    #[error("transition frequency must be positive, got {omega}")]
    NonPositiveFrequency { omega: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("negative rate: {rate:.3e}")]
    NegativeRate { rate: f64 },

    /// The generator's nullspace is not one-dimensional at the requested tolerance.
    #[error("steady state is degenerate: second singular value {second_sv:.3e} below {tol:.1e}")]
    DegenerateSteadyState { second_sv: f64, tol: f64 },

    /// The adaptive integrator could not meet its error target.
    #[error("integrator failed to converge: {0}")]
    NoConvergence(String),

    /// A post-condition check on a computed state failed.
    #[error("tolerance failure: {0}")]
    ToleranceFailure(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A density matrix handed to an observable is not a valid state.
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("config error: {0}")]
    ConfigError(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable code, used to mark failed sweep rows in CSV
    /// output without embedding free-form text.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonHermitianInput { .. } => "non-hermitian-input",
            Error::NegativeSpectrum { .. } => "negative-spectrum",
            Error::DegenerateInput => "degenerate-input",
            Error::NonPositiveFrequency { .. } => "non-positive-frequency",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NegativeRate { .. } => "negative-rate",
            Error::DegenerateSteadyState { .. } => "degenerate-steady-state",
            Error::NoConvergence(_) => "no-convergence",
            Error::ToleranceFailure(_) => "tolerance-failure",
            Error::InvalidParams(_) => "invalid-params",
            Error::InvalidState(_) => "invalid-state",
            Error::ConfigError(_) => "config-error",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
