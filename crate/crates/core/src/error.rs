use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while decoding a PGM byte stream.
///
/// Every variant carries the byte offset at which decoding stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmError {
    #[error("bad magic number at byte {offset}: expected P2 or P5")]
    BadMagic { offset: usize },
    #[error("unexpected end of header at byte {offset}: missing {field}")]
    MissingField { field: &'static str, offset: usize },
    #[error("malformed {field} at byte {offset}")]
    InvalidNumber { field: &'static str, offset: usize },
    #[error("maxval {maxval} at byte {offset} exceeds 255")]
    MaxvalTooLarge { maxval: u64, offset: usize },
    #[error("maxval 0 at byte {offset}")]
    ZeroMaxval { offset: usize },
    #[error("width < 3 (got {width}) at byte {offset}")]
    WidthTooSmall { width: u64, offset: usize },
    #[error("height < 3 (got {height}) at byte {offset}")]
    HeightTooSmall { height: u64, offset: usize },
    #[error("truncated payload at byte {offset}: expected {expected} samples, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("sample {value} at byte {offset} exceeds maxval {maxval}")]
    SampleOutOfRange {
        value: u64,
        maxval: u64,
        offset: usize,
    },
}

/// Errors raised while decoding a CSV matrix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("line {line}, column {column}: cannot parse {token:?} as a number")]
    InvalidNumber {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}, column {column}: value is not finite")]
    NonFinite { line: usize, column: usize },
    #[error("line {line}: expected {expected} columns, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is {width}x{height}; both dimensions must be at least 3")]
    TooSmall { width: usize, height: usize },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid dimensions {width}x{height}: {reason}")]
    InvalidDimensions {
        width: usize,
        height: usize,
        reason: &'static str,
    },
    #[error("non-finite value at pixel ({x}, {y})")]
    NonFinite { x: usize, y: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("invalid rectangle [{x0}, {x1}) x [{y0}, {y1}) for a {width}x{height} grid")]
    InvalidRect {
        x0: usize,
        y0: usize,
        x1: usize,
        y1: usize,
        width: usize,
        height: usize,
    },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("numerical instability: non-finite value produced at iteration {iter}")]
    Instability { iter: usize },
    #[error("{path}: {source}")]
    Pgm { path: PathBuf, source: PgmError },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: CsvError },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
