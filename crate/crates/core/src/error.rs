use thiserror::Error;

use crate::coeff::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("invalid field specification `{0}`")]
    InvalidField(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring context mismatch")]
    ContextMismatch,
    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("resolution is not minimal")]
    NotMinimal,
    #[error("invalid rational map: {0}")]
    InvalidDescriptor(String),
    #[error("the Rees ideal has no generators of x-degree one")]
    EmptyLinearPart,
    #[error("no reduction found with exponent at most {cap}")]
    NoReductionFound { cap: usize },
    #[error("no submatrix of full rank {0} found")]
    NoRankNSubmatrix(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("grade of the ideal is below two")]
    GradeTooSmall,
    #[error("no full-rank maximal submatrix of the presentation")]
    NoFullRankSubmatrix,
    #[error("ideal is not saturated")]
    NotSaturated,
    #[error("wrong codimension: expected {expected}, got {got}")]
    WrongCodimension { expected: usize, got: usize },
    #[error("unsupported source: only projective space sources are handled here")]
    UnsupportedSource,
    #[error("not a monomial map")]
    NotMonomial,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_))
    }
}
