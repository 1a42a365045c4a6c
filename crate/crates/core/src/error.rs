use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("relation {index} not homogeneous")]
    NonHomogeneous { index: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("degree {degree} has {count} words, above the cap {cap}")]
    DegreeOverflow {
        degree: usize,
        count: usize,
        cap: usize,
    },
    #[error("degree {degree} exceeds the truncation degree {max}")]
    TruncationExceeded { degree: usize, max: usize },
    #[error("check degree {check} exceeds the available dimensions (through degree {available})")]
    CheckDegreeTooLarge { check: usize, available: usize },
    #[error("inconsistent Hopf data: {0}")]
    InvalidHopf(String),
    #[error("Hopf axioms fail: {0}")]
    HopfAxioms(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("group closure exceeded the cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("modular case refused: {0}")]
    Modular(String),
    #[error("no rational fit: {0}")]
    NoFit(String),
    #[error("residual pole at t = 1 (orders {num} and {den})")]
    ResidualPole { num: usize, den: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema { .. }
            | Error::InvalidField(_)
            | Error::NonHomogeneous { .. }
            | Error::InvalidPresentation(_)
            | Error::InvalidHopf(_)
            | Error::HopfAxioms(_)
            | Error::InvalidAction(_)
            | Error::Modular(_)
            | Error::UnknownFixture(_) => 2,
            Error::DegreeOverflow { .. }
            | Error::TruncationExceeded { .. }
            | Error::CheckDegreeTooLarge { .. }
            | Error::GroupTooLarge(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
