use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid G-set: {0}")]
    InvalidGSet(String),

    #[error("invalid equivariant map: {0}")]
    InvalidMap(String),

    #[error("objects live over different groups")]
    GroupMismatch,

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("map is not in class `{class}`: {detail}")]
    ClassViolation { class: String, detail: String },

    #[error("construction would need {needed} points, above the bound of {bound}")]
    ResourceLimit { needed: u128, bound: usize },

    #[error("lextensivity violation: {0}")]
    Lextensivity(String),

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("rewrite did not terminate after {0} steps")]
    RewriteDiverged(usize),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGroup(_) => "invalid-group",
            Error::InvalidGSet(_) => "invalid-gset",
            Error::InvalidMap(_) => "invalid-map",
            Error::GroupMismatch => "group-mismatch",
            Error::BoundaryMismatch(_) => "boundary-mismatch",
            Error::ClassViolation { .. } => "class-violation",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::Lextensivity(_) => "lextensivity",
            Error::Shape(_) => "shape",
            Error::Unsupported(_) => "unsupported",
            Error::RewriteDiverged(_) => "rewrite-diverged",
            Error::Input(_) => "input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn boundary(msg: impl Into<String>) -> Error {
    Error::BoundaryMismatch(msg.into())
}
