use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed field modes: {0} vs {1}")]
    MixedFieldModes(String, String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("q_max too small: {0}")]
    QMaxTooSmall(String),
    #[error("Euler identity mismatch at q={q}: Betti sum {betti}, numerator {numerator}")]
    EulerMismatch {
        q: usize,
        betti: i64,
        numerator: i64,
    },
    #[error("top class not one-dimensional (dim H_top = {0})")]
    TopClassNotOneDimensional(usize),
    #[error("ill-posed input: {0}")]
    IllPosed(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
