use thiserror::Error;

/// Errors raised by the library.
///
/// Domain errors (bad input, failed validation) are kept distinct from
/// [`Error::Consistency`], which signals that two independent computation
/// routes disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group validation failed: {0}")]
    GroupValidation(String),

    #[error("unknown group name `{0}`")]
    UnknownGroup(String),

    #[error("not a homomorphism: witness pair ({0}, {1})")]
    NotHomomorphism(usize, usize),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid coefficient module: {0}")]
    InvalidModule(String),

    #[error("cochain degree {0} exceeds the cap of {cap}", cap = crate::cochain::MAX_DEGREE)]
    DegreeCap(usize),

    #[error("cochain mismatch: {0}")]
    Mismatch(String),

    #[error("modulus {0} is not prime; linear solving needs a field")]
    UnsupportedModulus(u32),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    #[error("invalid extension: {0}")]
    Extension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("unknown class `{class}` for fixture `{fixture}`")]
    UnknownClass { fixture: String, class: String },

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
