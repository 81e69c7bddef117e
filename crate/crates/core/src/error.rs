use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {path}: {message}")]
    SchemaError { path: String, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no admissible presentation found after {0} attempts")]
    GenerationFailure(usize),
    #[error("letter `{0}` does not belong to this presentation")]
    ForeignLetter(String),
    #[error("enumeration exceeded the cap of {0} items")]
    BudgetExceeded(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("surface has genus {0}; this operation needs genus 0")]
    GenusError(usize),
    #[error("no boundary component with id {0}")]
    UnknownBoundary(usize),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("word contains the special letter `{0}`")]
    SpecialLetterPresent(String),
    #[error("representations are defined over different presentations")]
    MismatchedPresentations,
    #[error("input carries nonzero degrees: {0}")]
    GradedInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SchemaError {
            path: path.into(),
            message: message.into(),
        }
    }
}
