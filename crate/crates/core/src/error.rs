use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("outside the domain of this operation: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("division is not exact")]
    NonExactDivision,
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("search cap exceeded: {count} > {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error("dimension not supported: {0}")]
    Dimension(String),
    #[error("infinite intersection: {0}")]
    InfiniteIntersection(String),
    #[error("intersection is not transverse at {0}")]
    NotTransverse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unassigned symbol: {0}")]
    UnassignedSymbol(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::Domain(_) => "domain",
            Error::Shape(_) => "shape",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::NonExactDivision => "non_exact_division",
            Error::Arithmetic(_) => "arithmetic",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Dimension(_) => "dimension",
            Error::InfiniteIntersection(_) => "infinite_intersection",
            Error::NotTransverse(_) => "not_transverse",
            Error::Invalid(_) => "invalid",
            Error::UnassignedSymbol(_) => "unassigned_symbol",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
