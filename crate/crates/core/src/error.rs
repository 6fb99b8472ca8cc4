use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: sqrt({0}) and sqrt({1}) cannot be mixed")]
    FieldMismatch(u32, u32),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("constant {constant} is not representable in {field}")]
    Unrepresentable { constant: String, field: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("exponents do not span the dual space; deficient directions: {0:?}")]
    NonSpanning(Vec<Vec<String>>),

    #[error("fan is not balanced: {0}")]
    Unbalanced(String),

    #[error("degenerate (zero) linear map")]
    DegenerateMap,

    #[error("face is not in the face lattice of the polytope")]
    FaceNotInLattice,

    #[error("no generic displacement found after {0} attempts")]
    GenericityExhausted(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Document(e.to_string())
    }
}
