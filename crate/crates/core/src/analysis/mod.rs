//! Security measurements on plain and encrypted images.
//!
//! Every function here is pure; sampling is driven by an explicit seed.

mod differential;
mod keyspace;
mod report;
mod stats;

pub use differential::{diff_report, npcr, uaci, DiffReport, NpcrDefinition};
pub use keyspace::{keyspace_report, KeyParam, KeyRole, KeySchema, KeySpaceReport, ParamRange};
pub use report::{analyze_image, histogram_csv, scatter_csv, ImageReport};
pub use stats::{
    adjacent_correlation, adjacent_pairs, chi_square_uniform, histogram, mean_intensity,
    CorrelationReport, Direction, CHI_SQUARE_CRITICAL_1PCT,
};

/// Pair count used when none is given.
pub const DEFAULT_PAIRS: usize = 2000;
