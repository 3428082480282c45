//! Verification, Euler composition, seed-pattern generation and exhaustive
//! search for magic, pandiagonal and Franklin squares.
//!
//! ```
//! use franklin::{classify, decompose, fixture, Label};
//!
//! let sq = fixture("f8_1769").unwrap().square().unwrap().clone();
//! let labels = classify(&sq).labels;
//! assert!(labels.contains(&Label::Franklin));
//! let pair = decompose(&sq).unwrap();
//! assert_eq!(pair.quotient().row(0), &[6, 7, 0, 1, 2, 3, 4, 5]);
//! ```

pub mod compose;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod lines;
pub mod pattern;
pub mod search;
pub mod square;
pub mod verify;

pub use compose::{compose, decompose, is_orthogonal};
pub use error::{Error, ErrorKind, Result};
pub use fixtures::{fixture, Corpus, FixtureEntry, Payload};
pub use lines::{
    bent_diagonal_cells, half_line_cells, pandiagonal_cells, subsquare_cells, Bent, Cell,
    Direction, HalfLine, LineDescriptor, LineFamily,
};
pub use pattern::{canonical_row_seed, find_remainder_seeds, generate, preset, Archetype, Preset, SeedPattern};
pub use search::{search_natural_franklin, search_with, FillOrder, Hooks, Pruning, SearchMode, SearchOptions, SearchOutcome};
pub use square::{aux_constant, is_balanced, is_natural, magic_constant, AuxPair, IndexTargets, Square, Target, Value};
pub use verify::{
    check_lines, classify, verify, Classification, Condition, ConditionResult, Flags, Label,
    LineFailure, PropertyReport, Status,
};
