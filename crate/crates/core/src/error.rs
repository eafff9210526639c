use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("codimension must be at least 1")]
    ZeroCodimension,

    #[error("jet order must be at least 1")]
    ZeroOrder,

    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("order {order} out of range {min}..={max}")]
    OrderOutOfRange { order: usize, min: usize, max: usize },

    #[error("term of weight {weight} not allowed (bounds {min}..={max})")]
    WeightOutOfRange { weight: usize, min: usize, max: usize },

    #[error("component index {0} out of range")]
    ComponentOutOfRange(usize),

    #[error("linear part is singular")]
    SingularLinearPart,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("linear part is not the identity")]
    NotUnipotent,

    #[error("jet has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("parameter out of range: {0}")]
    InvalidParameter(String),

    #[error("generator {0:?} has no assigned image")]
    UnassignedGenerator(String),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("not a representation: relator {relator} evaluates to a non-identity jet")]
    RelatorViolated { relator: usize },

    #[error("representation is not liftable to the next order")]
    NotLiftable,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("Maurer-Cartan equation fails at order {0}")]
    MaurerCartanFailure(usize),

    #[error("Maurer-Cartan data mismatch: {0}")]
    McDataMismatch(String),

    #[error("element is not closed")]
    NotClosed,

    #[error("exactness is not decided in twisted models")]
    TwistedExactnessUndecided,

    #[error("the zero orbit has no sphere representative")]
    ZeroOrbit,

    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl Error {
    pub fn parse(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub(crate) fn dim(what: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            what,
            expected,
            found,
        }
    }

    /// Prefixes the path of a parse error with an enclosing field.
    pub fn within(self, prefix: &str) -> Self {
        match self {
            Error::Parse { path, msg } => Error::Parse {
                path: join_path(prefix, &path),
                msg,
            },
            other => other,
        }
    }
}

fn join_path(prefix: &str, path: &str) -> String {
    if prefix.is_empty() {
        path.to_string()
    } else if path.is_empty() {
        prefix.to_string()
    } else if path.starts_with('[') {
        format!("{prefix}{path}")
    } else {
        format!("{prefix}.{path}")
    }
}
