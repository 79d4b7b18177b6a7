//! Error taxonomy shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while building profiles, propagating states,
/// or assembling reports.
#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate or physical argument lies outside its allowed range.
    #[error("domain error: {0}")]
    Domain(String),

    /// Profile construction rejected: bad geometry, bad samples, bad grid.
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// Run or sweep configuration rejected before any numerics start.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A direction was requested where the field (or vector) vanishes.
    #[error("undefined direction: {0}")]
    UndefinedDirection(String),

    /// The profile drives a component the selected case requires to vanish.
    #[error("case mismatch: {0}")]
    CaseMismatch(String),

    /// A state that must be unit length is not.
    #[error("non-unit {what}: |v| = {norm}")]
    NonUnit { what: String, norm: f64 },

    /// Amplitudes left the phase section that maps back to Stokes space.
    #[error("phase convention violated: residual {residual:.3e} exceeds {tolerance:.1e}")]
    PhaseConvention { residual: f64, tolerance: f64 },

    /// Two tabulated results were combined on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Tabulated profile text could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
