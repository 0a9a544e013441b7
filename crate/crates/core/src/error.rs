//! Error taxonomy shared by every module.

/// Errors surfaced by the library.
///
/// `Domain` names the violated mathematical hypothesis, `Usage` is a caller
/// mistake (unknown term id, out-of-range argument), `Resource` is a refused
/// budget, and `Infeasible` is a search that provably has no solution.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
