use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid cardinality k = {k} for a ground set of {n} elements")]
    InvalidCardinality { k: usize, n: usize },

    #[error("{what}: ground set of {n} elements exceeds the size limit of {limit}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed independence system: {0}")]
    MalformedSystem(String),

    #[error("malformed flow instance: {0}")]
    MalformedInstance(String),

    #[error("flow objective is unbounded: sink {sink} is reachable through infinite arcs in every commodity")]
    UnboundedFlow { sink: usize },

    #[error("linear program: {0}")]
    Lp(#[from] crate::mcflow::lp::LpError),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
