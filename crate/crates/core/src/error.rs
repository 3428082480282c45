use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad class of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input could not be read or parsed as a grid.
    Malformed,
    /// The input parsed, but violates an operation's precondition.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} needs {expected} cells, got {actual}")]
    CellCount {
        order: usize,
        expected: usize,
        actual: usize,
    },
    #[error("ragged grid: row {row} has {len} entries, expected {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
    #[error("checksum mismatch for fixture file {file}")]
    Checksum { file: String },

    #[error("even order required, got {0}")]
    EvenOrderRequired(usize),
    #[error("order {0} is not a multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("auxiliary value {value} at ({row}, {col}) is outside 0..{order}")]
    AuxValueOutOfRange {
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },
    #[error("cell ({row}, {col}) = {value} is below 1")]
    CellBelowOne { row: usize, col: usize, value: i64 },
    #[error("quotient {quotient} at ({row}, {col}) is outside 0..{order}")]
    QuotientOutOfRange {
        row: usize,
        col: usize,
        quotient: i64,
        order: usize,
    },
    #[error("arithmetic overflow while composing order {0}")]
    Overflow(usize),

    #[error("line of {family} has {actual} cells, expected {expected}")]
    LineLength {
        family: &'static str,
        actual: usize,
        expected: usize,
    },
    #[error("line cell ({row}, {col}) lies outside order {order}")]
    LineOutOfBounds { row: usize, col: usize, order: usize },
    #[error("line repeats cell ({row}, {col})")]
    DuplicateCell { row: usize, col: usize },
    #[error("line index {index} is outside 0..{limit}")]
    ShiftOutOfRange { index: usize, limit: usize },

    #[error("seed has length {actual}, expected {expected}")]
    SeedLength { actual: usize, expected: usize },
    #[error("seed value {value} is outside 0..{order}")]
    SeedValue { value: usize, order: usize },
    #[error("seed is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("band height {band} does not divide order {order}")]
    InvalidBand { band: usize, order: usize },
    #[error("{0} square is not balanced")]
    Unbalanced(&'static str),
    #[error("quotient and remainder squares are not orthogonal")]
    NotOrthogonal,
    #[error("unknown archetype `{0}`")]
    UnknownArchetype(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("order {order} is outside the searchable range 2..={max}")]
    SearchOrder { order: usize, max: usize },
    #[error("order-{0} enumeration is a long run: pass the long-run flag or a node budget")]
    LongRunRequired(usize),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CellCount { .. }
            | Error::Ragged { .. }
            | Error::Parse { .. }
            | Error::Io(_)
            | Error::Checksum { .. } => ErrorKind::Malformed,
            _ => ErrorKind::Precondition,
        }
    }

    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroOrder => "zero_order",
            Error::CellCount { .. } => "cell_count",
            Error::Ragged { .. } => "ragged_grid",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
            Error::Checksum { .. } => "checksum",
            Error::EvenOrderRequired(_) => "even_order_required",
            Error::NotMultipleOfFour(_) => "order_not_multiple_of_4",
            Error::OrderMismatch { .. } => "order_mismatch",
            Error::AuxValueOutOfRange { .. } => "aux_value_out_of_range",
            Error::CellBelowOne { .. } => "cell_below_one",
            Error::QuotientOutOfRange { .. } => "quotient_out_of_range",
            Error::Overflow(_) => "overflow",
            Error::LineLength { .. } => "line_length",
            Error::LineOutOfBounds { .. } => "line_out_of_bounds",
            Error::DuplicateCell { .. } => "duplicate_cell",
            Error::ShiftOutOfRange { .. } => "shift_out_of_range",
            Error::SeedLength { .. } => "seed_length",
            Error::SeedValue { .. } => "seed_value",
            Error::NotPermutation(_) => "not_permutation",
            Error::InvalidBand { .. } => "invalid_band",
            Error::Unbalanced(_) => "unbalanced",
            Error::NotOrthogonal => "not_orthogonal",
            Error::UnknownArchetype(_) => "unknown_archetype",
            Error::UnknownName(_) => "unknown_name",
            Error::SearchOrder { .. } => "search_order",
            Error::LongRunRequired(_) => "long_run_required",
        }
    }
}
