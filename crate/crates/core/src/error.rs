use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("instance too large for exact enumeration: {vertices} vertices (limit {limit}); use packing_lower_bound instead")]
    Capacity { vertices: usize, limit: usize },

    #[error("decomposition failed: {reason} (best attempt: {best_cut} cut edges, budget {cut_budget}; weak diameter {best_diameter}, bound {diameter_bound})")]
    Decomposition {
        reason: String,
        best_cut: usize,
        cut_budget: usize,
        best_diameter: usize,
        diameter_bound: usize,
    },

    #[error("partition is not good: property `{property}` violated ({witness})")]
    Partition {
        property: &'static str,
        witness: String,
    },

    #[error("reduction precondition failed: {0}")]
    Reduction(String),

    #[error("reduction collapsed to an empty cycle set after {steps} contract steps")]
    ReductionCollapse { steps: usize },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
