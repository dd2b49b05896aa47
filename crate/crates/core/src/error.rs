use thiserror::Error;

use crate::model::ValueKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Every unit has fewer than two non-missing values.
    #[error("no pairable units: every unit has fewer than two values")]
    NoPairableUnits,

    /// Expected disagreement is zero, so alpha is undefined.
    #[error("degenerate data: all pooled values are mutually at distance 0, alpha is undefined")]
    DegenerateData,

    #[error("value kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: ValueKind,
        found: ValueKind,
    },

    #[error("matrix shape: {0}")]
    Shape(String),

    #[error("category system: {0}")]
    CategorySystem(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("unknown representation `{0}`")]
    UnknownRepresentation(String),

    #[error("unknown relation `{0}` (expected Increases or Decreases)")]
    UnknownRelation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("insufficient groups: {0}")]
    InsufficientGroups(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable snake_case identifier, used in machine-readable error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NoPairableUnits => "no_pairable_units",
            Error::DegenerateData => "degenerate_data",
            Error::KindMismatch { .. } => "kind_mismatch",
            Error::Shape(_) => "shape",
            Error::CategorySystem(_) => "category_system",
            Error::UnknownMetric(_) => "unknown_metric",
            Error::UnknownRepresentation(_) => "unknown_representation",
            Error::UnknownRelation(_) => "unknown_relation",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::InsufficientGroups(_) => "insufficient_groups",
            Error::Validation(_) => "validation",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}
