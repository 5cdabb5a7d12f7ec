use thiserror::Error;

/// Errors raised while building models or evaluating gains.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} = {value} is outside {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid wideband configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid array: {0}")]
    InvalidArray(String),

    #[error("{what} has length {got}, array has {expected} elements")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("point ({x}, {y}) coincides with IRS element {element}")]
    CoincidentPoint { element: usize, x: f64, y: f64 },

    #[error("cascaded response needs at least one path")]
    EmptyPaths,

    #[error("sweep grid is empty: {0}")]
    EmptyGrid(String),

    #[error("subcarrier index {index} out of range for M = {count}")]
    SubcarrierOutOfRange { index: usize, count: usize },

    #[error("gain map is not normalized")]
    NotNormalized,

    #[error("invalid gain map: {0}")]
    InvalidMap(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected: "(0, inf)",
        })
    }
}

/// Validates a normalized cascade direction `nu = sin(chi) - sin(psi)`.
pub(crate) fn direction(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if (-2.0..=2.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected: "[-2, 2]",
        })
    }
}
