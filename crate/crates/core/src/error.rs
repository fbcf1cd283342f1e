use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An argument is outside the operation's domain.
    InvalidArgument(String),
    /// The request would exceed a configured resource cap.
    Resource(String),
    /// A constructed object failed its own postcondition. Indicates a bug.
    Postcondition(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::Resource(m) => write!(f, "resource limit: {m}"),
            Error::Postcondition(m) => write!(f, "postcondition violated: {m}"),
        }
    }
}

impl core::error::Error for Error {}
