use std::path::PathBuf;

use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("header declares {declared} crossings but {found} crossing lines were found")]
    CountMismatch { declared: usize, found: usize },

    #[error("line {line}: peer index {peer} is out of range for {nodes} nodes")]
    IndexOutOfRange { line: usize, peer: i64, nodes: usize },

    #[error("node {node} is out of range for a graph with {nodes} nodes")]
    NodeOutOfRange { node: usize, nodes: usize },

    #[error("invalid textile graph:\n{0}")]
    Invalid(ValidationReport),

    #[error("unsupported pattern: {0}")]
    Unsupported(String),

    #[error("neighbourhood size mismatch: {left} vs {right}")]
    KMismatch { left: usize, right: usize },

    #[error("neighbourhood size must be at least 1")]
    ZeroK,

    #[error("{measure} is undefined for empty fingerprints")]
    EmptyOperand { measure: &'static str },

    #[error("cos-tfidf needs corpus statistics")]
    MissingStats,

    #[error("neighbourhood key {0} is not present in the corpus statistics")]
    KeyNotInStats(u32),

    #[error("corpus statistics need at least one fingerprint")]
    EmptyCorpus,

    #[error("distance between items {i} and {j}: {source}")]
    Pair {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),

    #[error("unknown linkage criterion {0:?}")]
    UnknownCriterion(String),

    #[error("ward linkage is defined on euclidean centroids; got measure {0}")]
    WardMeasure(&'static str),

    #[error("invalid cluster count {m} for {n} items")]
    InvalidClusterCount { m: usize, n: usize },

    #[error("max_iter must be at least 1")]
    InvalidMaxIter,

    #[error("query has no relevant items")]
    NoRelevant,

    #[error("no queries to evaluate")]
    NoQueries,

    #[error("cutoff {cutoff} exceeds ranked list length {len}")]
    InvalidCutoff { cutoff: usize, len: usize },

    #[error("partitions cover different item sets ({left} vs {right} items)")]
    PartitionMismatch { left: usize, right: usize },

    #[error("{0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
