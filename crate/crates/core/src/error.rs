use thiserror::Error;

/// Errors across the arithmetic pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be an odd positive prime, got {0}")]
    InvalidModulus(String),

    #[error("input out of supported range: {0}")]
    UnsupportedRange(String),

    #[error("gcd({s}, {t}) = {g} != 1; arithmetic progression has at most one prime")]
    NotCoprime { s: String, t: String, g: String },

    #[error("form is not positive definite: ({a}, {b}, {c})")]
    NotPositiveDefinite { a: String, b: String, c: String },

    #[error("form is not primitive: gcd of coefficients is {gcd}")]
    NotPrimitive { gcd: String },

    #[error("invalid discriminant {0}: must be negative and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(String),

    #[error("change of variables has determinant {0}, expected 1")]
    BadDeterminant(String),

    #[error("slope (0, 0) is not defined")]
    ZeroPair,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("certificate failure in clause {clause}: {detail}")]
    CertificateFailure { clause: String, detail: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CertificateFailure { .. } => 3,
            Error::PreconditionViolated(_) | Error::HypothesisViolated(_) | Error::NotCoprime { .. } => 2,
            _ => 1,
        }
    }
}
