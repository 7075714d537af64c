use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("duplicate {axis} label {label:?}")]
    DuplicateLabel { axis: &'static str, label: String },

    #[error("invalid chromosome: {0}")]
    InvalidChromosome(String),

    #[error("invalid bicluster: {0}")]
    InvalidBicluster(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("metric undefined: {0}")]
    UndefinedMetric(&'static str),

    #[error("cannot place implants: {0}")]
    Placement(String),
}
