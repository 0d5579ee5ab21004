use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size guard exceeded: {what} (limit {limit})")]
    SizeLimit { what: String, limit: String },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial is not palindromic: {0}")]
    NotPalindromic(String),
    #[error("polynomial is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("polynomial is not expandable in the requested basis: {0}")]
    NotExpandable(String),
    #[error("series divisor has a non-invertible constant term")]
    NonInvertibleConstantTerm,
    #[error("series division does not stay polynomial at order {0}")]
    InexactDivision(usize),
    #[error("series argument must have zero constant term for {0}")]
    NonzeroConstantTerm(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown grammar {0:?}")]
    UnknownGrammar(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn size_limit(what: impl Into<String>, limit: impl ToString) -> Error {
    Error::SizeLimit {
        what: what.into(),
        limit: limit.to_string(),
    }
}
