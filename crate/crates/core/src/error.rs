use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A user-facing configuration was rejected.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A documented precondition of an operation was not met.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("memory kernel is not finite at dt = {dt}")]
    NonFiniteKernel { dt: f64 },

    #[error("numerical failure at step {step}: {reason}")]
    Numerical { step: usize, reason: String },

    #[error("failed to parse {what}: {reason}")]
    Parse { what: String, reason: String },

    #[error("sweep member {key} = {value} failed: {source}")]
    SweepMember {
        key: &'static str,
        value: f64,
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn numerical(step: usize, reason: impl Into<String>) -> Self {
        Error::Numerical {
            step,
            reason: reason.into(),
        }
    }

    /// Process exit code: 2 for configuration problems, 3 for numerical aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Contract(_) | Error::Parse { .. } => 2,
            Error::NonFiniteKernel { .. } | Error::Numerical { .. } => 3,
            Error::SweepMember { source, .. } => source.exit_code(),
            Error::Io(_) => 1,
        }
    }
}
