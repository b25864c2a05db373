//! Crate-wide error type.
//!
//! Errors split into two broad classes that the CLI maps onto exit codes:
//! file-level failures (I/O, truncated or malformed containers, unsupported
//! encodings) and validation failures (bad dimensions, parameters out of
//! range). [`Error::is_file_error`] encodes that split.

use std::io;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Two rasters that must share a shape do not.
    #[error("{context}: expected {}x{} but got {}x{}", expected.0, expected.1, actual.0, actual.1)]
    DimensionMismatch {
        context: &'static str,
        expected: (usize, usize),
        actual: (usize, usize),
    },

    /// A grid is too small for the requested operation.
    #[error("grid of {height}x{width} is too small: {context}")]
    GridTooSmall {
        context: &'static str,
        height: usize,
        width: usize,
    },

    /// Buffer length does not match the declared dimensions.
    #[error("buffer holds {actual} samples but {height}x{width} needs {expected}")]
    LengthMismatch {
        height: usize,
        width: usize,
        expected: usize,
        actual: usize,
    },

    /// A sample failed validation; the coordinate is named so the operator
    /// can locate it in the source raster.
    #[error("sample {value} at row {row}, column {col} exceeds the {bits}-bit maximum {max}")]
    SampleOutOfRange {
        row: usize,
        col: usize,
        value: u16,
        bits: u8,
        max: u16,
    },

    /// A floating-point sample is NaN, infinite, or outside [0, 1].
    #[error("sample {value} at row {row}, column {col} is outside the normalized range [0, 1]")]
    SampleNotNormalized { row: usize, col: usize, value: f64 },

    /// Caller-supplied parameter rejected before any work was done.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input bytes ended before the structure they promised.
    #[error("truncated file: {0}")]
    Truncated(&'static str),

    /// The container is structurally valid TIFF/PNG but uses a feature
    /// outside the supported subset; the offending tag value is named.
    #[error("unsupported {field} value {value}")]
    Unsupported { field: &'static str, value: u64 },

    /// The container violates its own format rules.
    #[error("malformed file: {0}")]
    Malformed(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    /// Error surfaced by the PNG codec.
    #[error("png error: {0}")]
    Png(String),
}

impl Error {
    /// True for errors caused by the file itself (unreadable, truncated,
    /// malformed, unsupported encoding) rather than by caller parameters.
    pub fn is_file_error(&self) -> bool {
        matches!(
            self,
            Error::Io(_)
                | Error::Truncated(_)
                | Error::Unsupported { .. }
                | Error::Malformed(_)
                | Error::Png(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
