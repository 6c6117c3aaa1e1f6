use thiserror::Error;

/// Errors raised by monomial ideal computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid input: mismatched rings, zero divisor ideal, unit ideal where a proper one is required.
    #[error("usage error: {0}")]
    Usage(String),

    /// Exponent arithmetic left the 64-bit range.
    #[error("exponent overflow while computing {0}")]
    Overflow(String),

    /// A configured resource guard refused the instance.
    #[error("resource limit exceeded: {0}")]
    Limit(String),

    /// Malformed ideal or ring text.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Failure while processing a specific power of an ideal.
    #[error("at power {power}: {source}")]
    AtPower {
        power: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::Limit(msg.into())
    }

    pub fn at_power(self, power: usize) -> Self {
        Error::AtPower {
            power,
            source: Box::new(self),
        }
    }

    /// The innermost error, looking through `AtPower` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPower { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.root(), Error::Limit(_) | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
