use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator symbol '{0}'")]
    UnknownGenerator(char),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("empty word where a nontrivial element is required")]
    EmptyWord,
    #[error("zero denominator in exponent")]
    ZeroDenominator,
    #[error("exponent arithmetic overflow")]
    Overflow,
    #[error("element is not primitive: {0}")]
    NotPrimitive(String),
    #[error("mapping does not extend to an isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("element does not lie in the tower: {0}")]
    NotInTower(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
