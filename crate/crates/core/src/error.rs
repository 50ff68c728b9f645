use thiserror::Error;

/// Errors raised by the toolkit. Everything here is an input problem in the
/// CLI's exit-code sense; property failures are reported as values instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("unsupported basis: {0}")]
    UnsupportedBasis(String),

    #[error("invalid Cartan subalgebra: {0}")]
    InvalidCartan(String),

    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),

    #[error("map is not locally inner at the regular element h0 (t = {t})")]
    NotLocallyInner { t: u64 },

    #[error("no regular element annihilated the Cartan part after {attempts} attempts: {detail}")]
    RetriesExhausted { attempts: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
