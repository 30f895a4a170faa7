use std::fmt;

use thiserror::Error;

/// Position-tagged parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownVariable(String),
    NegativeExponent,
    UnexpectedToken(String),
    UnexpectedEnd,
    BadLiteral(String),
    ZeroDenominator,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable `{v}` at position {}", self.position)
            }
            ParseErrorKind::NegativeExponent => {
                write!(f, "negative exponent at position {}", self.position)
            }
            ParseErrorKind::UnexpectedToken(t) => {
                write!(f, "unexpected `{t}` at position {}", self.position)
            }
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::BadLiteral(l) => {
                write!(f, "malformed literal `{l}` at position {}", self.position)
            }
            ParseErrorKind::ZeroDenominator => {
                write!(f, "zero denominator at position {}", self.position)
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Which resource guard tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Degree,
    BasisSize,
    Timeout,
    StaircaseSize,
    HilbertSamuelBudget,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Resource::Degree => "maximum degree",
            Resource::BasisSize => "maximum basis size",
            Resource::Timeout => "timeout",
            Resource::StaircaseSize => "staircase size",
            Resource::HilbertSamuelBudget => "Hilbert-Samuel budget",
        };
        f.write_str(s)
    }
}

/// Error classes, each with its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Resource,
    IdentityFailure,
    Internal,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Validation => 2,
            ErrorClass::Resource => 3,
            ErrorClass::IdentityFailure => 4,
            ErrorClass::Internal => 5,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("coefficient {0} is not representable in the coefficient field")]
    Coefficient(String),
    #[error("resource limit exceeded: {resource}{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
    ResourceExhausted { resource: Resource, detail: Option<String> },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("map germ is not finite: {0}")]
    NotFinite(String),
    #[error("not an isolated complete intersection: {0}")]
    NotIcis(String),
    #[error("submodule containment violated: {0}")]
    Containment(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn resource(resource: Resource) -> Self {
        Error::ResourceExhausted { resource, detail: None }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ResourceExhausted { .. } => ErrorClass::Resource,
            Error::IdentityFailure(_) => ErrorClass::IdentityFailure,
            Error::Internal(_) | Error::Containment(_) => ErrorClass::Internal,
            _ => ErrorClass::Validation,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.class().exit_code()
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
