use thiserror::Error;

/// Errors raised by the computational modules.
///
/// Each variant maps onto one CLI exit code (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A case the library refuses to guess at, such as 2-adic splitting data
    /// over a real quadratic base field for an element of even norm.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A brute-force enumeration would exceed its search-space guard.
    #[error("search space of {requested} elements exceeds the guard of {guard}")]
    GuardExceeded { requested: u128, guard: u128 },

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    /// The hyperbolic setting is not satisfied; every failed condition is listed.
    #[error("invalid setting: {}", .0.join("; "))]
    Setting(Vec<String>),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) | Error::Setting(_) => 2,
            Error::Unsupported(_) => 3,
            Error::GuardExceeded { .. } => 4,
            Error::Consistency(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
