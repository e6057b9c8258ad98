use thiserror::Error;

/// Errors raised while building, converting or checking decompositions.
///
/// Matrix and node indices carried by the variants are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SbdError {
    #[error("cannot parse {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("zero denominator in {text:?}")]
    ZeroDenominator { text: String },

    #[error("singular formula: {what} vanishes")]
    SingularFormula { what: String },

    #[error("nodes {i} and {j} coincide; distinct nodes are required")]
    DistinctNodesRequired { i: usize, j: usize },

    #[error("node {index} = {value} lies outside the domain {domain}")]
    NodeOutsideDomain {
        index: usize,
        value: String,
        domain: String,
    },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: String,
        reason: String,
    },

    #[error("nodes must be nondecreasing in strict mode (node {index} < node {prev})", prev = index - 1)]
    UnsortedNodes { index: usize },

    #[error("zero pivot while eliminating entry ({i}, {j})")]
    SingularPivot { i: usize, j: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("factor sequence cannot be stored in B/C form: {0}")]
    NotRepresentable(String),

    #[error("malformed document: {0}")]
    Document(String),
}

impl SbdError {
    pub(crate) fn singular(what: impl Into<String>) -> Self {
        SbdError::SingularFormula { what: what.into() }
    }
}

pub type Result<T, E = SbdError> = std::result::Result<T, E>;
