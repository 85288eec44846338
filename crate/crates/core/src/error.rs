use thiserror::Error;

use crate::exact::Index;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index argument went past the configured [`IndexCap`](crate::IndexCap).
    #[error("index {index} exceeds the configured cap of {cap}")]
    LimitExceeded { index: Index, cap: Index },

    /// Brute-force enumeration was asked for more than its budget allows.
    #[error("n = {n} exceeds the enumeration budget of {budget}")]
    BudgetExceeded { n: Index, budget: Index },

    /// Arguments outside the domain an operation is defined on.
    #[error("{0}")]
    Domain(String),

    #[error("cannot parse {input:?} as {what}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for the resource-limit family of errors.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::LimitExceeded { .. } | Error::BudgetExceeded { .. }
        )
    }
}
