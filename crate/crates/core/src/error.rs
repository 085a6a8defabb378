use thiserror::Error;

use crate::oom::OomValue;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OomError {
    #[error("{0} has no multiplicative inverse")]
    NoInverse(OomValue),
    #[error("scaling factor {0} is not a positive order-of-magnitude value")]
    InvalidScale(OomValue),
    #[error("cannot build an order-of-magnitude set from no elements")]
    EmptySet,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl OomError {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        OomError::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("malformed diagram document: {0}")]
    Format(#[from] serde_json::Error),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("diagram is invalid:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
    #[error("chance variable {chance} is observed before decision {decision} but depends on it")]
    Temporal { chance: String, decision: String },
    #[error("decision {decision} depends on {variable}, which is not observed when the decision is made")]
    UnobservedDependency { decision: String, variable: String },
    #[error("policy does not match the diagram: {0}")]
    BadPolicy(String),
    #[error("search space of {size} policies exceeds the limit of {limit}")]
    GuardExceeded { size: f64, limit: f64 },
    #[error(transparent)]
    Oom(#[from] OomError),
    #[error("{0}")]
    Conversion(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = DiagramError> = std::result::Result<T, E>;
