use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("instance failed validation: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("coalitions {first} and {second} share a member pair; disjoint criterion does not apply")]
    NotDisjoint { first: String, second: String },
}

pub type Result<T> = std::result::Result<T, Error>;
