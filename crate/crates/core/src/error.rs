use thiserror::Error;

/// Errors raised by model construction and by the lattice computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("poset is invalid: {0}")]
    InvalidPoset(String),

    #[error("size guard exceeded: {what} has {actual} elements, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("element {0} does not belong to this frame")]
    NotAnElement(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("topologies live on different point sets")]
    LabelMismatch,

    #[error("family is not a topology: {0}")]
    InvalidTopology(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("shape mismatch on arrow `{arrow}`: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        arrow: String,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("relation {0} does not vanish on the representation")]
    RelationViolated(usize),

    #[error("total dimension {actual} exceeds bound {bound}")]
    DimensionBound { actual: usize, bound: usize },

    #[error("unsupported characteristic {0}; expected 2, 3 or 5")]
    UnsupportedField(u8),

    #[error("object does not belong to this model: {0}")]
    ObjectMismatch(String),

    #[error("operation not available for this model: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid exact subcategory: {0}")]
    InvalidSubcategory(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid spectral data: {0}")]
    InvalidSpectral(String),

    #[error("unknown flag `{0}`; expected ALL, PP or FG")]
    UnknownFlag(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    /// Two computations that must agree did not. Carries the name of the
    /// violated property.
    #[error("invariant `{check}` violated: {detail}")]
    Invariant { check: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invariant(check: &str, detail: impl Into<String>) -> Error {
    Error::Invariant {
        check: check.to_string(),
        detail: detail.into(),
    }
}
