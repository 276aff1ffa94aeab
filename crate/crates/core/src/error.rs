use std::path::PathBuf;

use thiserror::Error;

use crate::geom::{Point, MAX_COORD, MAX_POINTS};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate ({x}, {y}) exceeds the supported magnitude {MAX_COORD}")]
    CoordinateOutOfRange { x: i64, y: i64 },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("point set has {0} points, at most {MAX_POINTS} are supported")]
    TooManyPoints(usize),

    #[error("point {0} occurs more than once")]
    DuplicatePoint(Point),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("construction failed at scale {scale}: {reason}; retry with a larger scale")]
    ConstructionFailed { scale: i64, reason: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("{path}: size {len} bytes is not a multiple of the {record_len}-byte record length")]
    SizeMismatch {
        path: PathBuf,
        len: u64,
        record_len: u64,
    },

    #[error("record index {index} out of range (record count {count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("record {index}: {source}")]
    BadRecord {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
