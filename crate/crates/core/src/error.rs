use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gale order is undefined for subsets of different cardinality ({0} vs {1})")]
    CardinalityMismatch(usize, usize),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("composition part {part} exceeds grid size {n}")]
    PartTooLarge { part: usize, n: usize },

    #[error("column {col}: content has {got} entries but the column has {want} boxes")]
    ContentMismatch { col: usize, got: usize, want: usize },

    #[error("no flagged filling exists: {0}")]
    NoFilling(String),

    #[error("diagram avoids the forbidden configuration; no dependence witness exists")]
    PatternAbsent,

    #[error("diagram contains the forbidden configuration (i1={i1}, i2={i2}, j1={j1}, j2={j2})")]
    PatternPresent {
        i1: usize,
        i2: usize,
        j1: usize,
        j2: usize,
    },

    #[error("exhaustive verification is capped at n <= {cap} (requested n = {n})")]
    ExhaustiveCap { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
