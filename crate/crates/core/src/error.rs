use thiserror::Error;

/// Errors raised by the library.
///
/// The variants split into three groups that the CLI maps onto distinct exit
/// codes: input/domain problems, precondition failures of a particular closed
/// form, and internal consistency failures that indicate a bug.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("generators are not coprime (gcd = {gcd})")]
    Coprimality { gcd: u64 },

    #[error("number field moduli differ")]
    ModulusMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero divisor encountered: modulus is not irreducible")]
    ZeroDivisor,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}

impl Error {
    /// True for errors that signal an implementation bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
