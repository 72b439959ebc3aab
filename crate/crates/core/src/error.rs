use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lens space L({n};{m}): {reason}")]
    InvalidSpace {
        n: u32,
        m: u32,
        reason: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParameters(String),

    #[error("{0} did not converge")]
    NonConvergence(String),

    #[error("sample set is empty")]
    EmptySamples,
}
