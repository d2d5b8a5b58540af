use thiserror::Error;

/// Errors surfaced by the library. Mathematical "no" answers (a map does not
/// exist, a module is not projective) are ordinary return values, not errors;
/// these are for malformed input and incompatible data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed-field operands")]
    MixedFields,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("the algebra is not self-injective: {0}")]
    NotSelfinjective(String),

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
