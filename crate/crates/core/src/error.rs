use alloc::string::String;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data is malformed (non-finite samples, mismatched grids, ...).
    #[error("input error: {0}")]
    Input(String),
    /// An operator or query was configured inconsistently.
    #[error("configuration error: {0}")]
    Config(String),
    /// A geometric precondition of a closed-form table was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
