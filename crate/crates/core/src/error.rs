use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("substitution error: {0}")]
    Substitution(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("automorphism mismatch: {0}")]
    SigmaMismatch(String),
    #[error("quadratic field error: {0}")]
    Field(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
