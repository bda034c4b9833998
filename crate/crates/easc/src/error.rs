use serde::Serialize;
use thiserror::Error;

/// Which end of a search band an argmin landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BandEdge {
    Lower,
    Upper,
}

/// Broad classes used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("frequency {omega} outside tabulated band [{lo}, {hi}]")]
    OutOfBand { omega: f64, lo: f64, hi: f64 },
    #[error("negative density {value} at frequency {omega}")]
    NegativeDensity { omega: f64, value: f64 },
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("band [{lo}, {hi}] does not cover required interval [{need_lo}, {need_hi}]")]
    BandTooNarrow {
        lo: f64,
        hi: f64,
        need_lo: f64,
        need_hi: f64,
    },
    #[error("gradient approximation requires a power-law spectrum")]
    GradientUnsupported,
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("no interior minimum of the eigenfrequency distance; argmin at {edge:?} edge {omega}")]
    NoInteriorMinimum { edge: BandEdge, omega: f64 },
    #[error("critical coupling not converged; supremum so far {omega_cp}")]
    NotConverged { omega_cp: f64 },
    #[error("critical coupling unbounded: reservoir spectra have no gradient")]
    Unbounded,
    #[error("time step {dt} exceeds limit {max}")]
    StepTooLarge { dt: f64, max: f64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("t_end {t_end} exceeds half the recurrence time {t_rec}")]
    RecurrenceHorizonExceeded { t_end: f64, t_rec: f64 },
    #[error("propagator fit residual {residual} above threshold")]
    PoorFit { residual: f64 },
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NoInteriorMinimum { .. }
            | Error::NotConverged { .. }
            | Error::Unbounded
            | Error::InvariantViolation(_)
            | Error::PoorFit { .. } => ErrorClass::Numerical,
            _ => ErrorClass::Validation,
        }
    }

    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "invalid_config",
            Error::OutOfBand { .. } => "out_of_band",
            Error::NegativeDensity { .. } => "negative_density",
            Error::InvalidSpectrum(_) => "invalid_spectrum",
            Error::BandTooNarrow { .. } => "band_too_narrow",
            Error::GradientUnsupported => "gradient_unsupported",
            Error::ModeMismatch(_) => "mode_mismatch",
            Error::NoInteriorMinimum { .. } => "no_interior_minimum",
            Error::NotConverged { .. } => "not_converged",
            Error::Unbounded => "unbounded",
            Error::StepTooLarge { .. } => "step_too_large",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::RecurrenceHorizonExceeded { .. } => "recurrence_horizon_exceeded",
            Error::PoorFit { .. } => "poor_fit",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
