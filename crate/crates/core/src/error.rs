use thiserror::Error;

/// Failure modes shared by every computation in the crate.
///
/// The variants line up with the CLI exit codes: input problems are the
/// caller's fault, declined computations hit a configured guard, and internal
/// errors mean an invariant of the mathematics was violated (a bug).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GitError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("computation declined: {0}")]
    Declined(String),
    #[error("the limit cone is {{0}}: no destabilizing one-parameter subgroup exists")]
    NoDestabilizer,
    #[error("no generic character of height <= {bound} off {walls} walls")]
    NoGenericFound { bound: u64, walls: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl GitError {
    pub fn input(msg: impl Into<String>) -> Self {
        GitError::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        GitError::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            GitError::Input(_) => 1,
            GitError::Declined(_) | GitError::NoDestabilizer | GitError::NoGenericFound { .. } => 2,
            GitError::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, GitError>;
