//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Source and observation point closer than the singular-separation guard.
    #[error("singular separation: |r - s| = {separation:.3e} m is below the {limit:.3e} m guard")]
    SingularSeparation { separation: f64, limit: f64 },

    /// A vector or sample-set length does not match the expected count.
    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// An element/mode index lies outside its valid range.
    #[error("index {index} out of range 1..={max} for {what}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    /// A configuration value violates its domain (nonpositive length, zero count, ...).
    #[error("invalid {what}: {message}")]
    InvalidConfig { what: &'static str, message: String },

    /// Capacity input failed the Hermitian-symmetry check.
    #[error("matrix is not Hermitian: max |R - R^H| = {residual:.3e} exceeds {tolerance:.3e}")]
    NonHermitianInput { residual: f64, tolerance: f64 },

    /// Matrix dimensions are inconsistent with the declared port/mode counts.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A text input could not be parsed; carries file/line context when known.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A required configuration key is absent.
    #[error("missing key \"{0}\"")]
    MissingKey(String),

    /// A length or unit suffix could not be interpreted.
    #[error("bad unit for key \"{key}\": {message}")]
    BadUnit { key: String, message: String },

    /// A configured value is outside its allowed range.
    #[error("range error for key \"{key}\": {message}")]
    RangeError { key: String, message: String },

    /// Field-export groups disagree on sample positions.
    #[error("inconsistent grid: {0}")]
    InconsistentGrid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
