use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("covariance matrix is not symmetric (max |cov - cov^T| = {0:e})")]
    NotSymmetric(f64),

    #[error("covariance diagonal entry {index} is not positive ({value})")]
    NonPositiveVariance { index: usize, value: f64 },

    #[error("state violates the uncertainty relation: min eigenvalue of cov + i*Omega is {0:e}")]
    Unphysical(f64),

    #[error("covariance is not positive definite; cannot factorize for sampling")]
    NotPositiveDefinite,

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: f64,
        reason: String,
    },

    #[error("{field}: {message}")]
    Validation { field: String, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("undefined statistic: {0}")]
    Undefined(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(name: impl Into<String>, value: f64, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            value,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by a covariance that is not a valid quantum state.
    pub fn is_physicality(&self) -> bool {
        matches!(
            self,
            Error::NotSymmetric(_)
                | Error::NonPositiveVariance { .. }
                | Error::Unphysical(_)
                | Error::NotPositiveDefinite
        )
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            e if e.is_physicality() => 3,
            Error::InvalidParameter { .. }
            | Error::Validation { .. }
            | Error::Parse { .. }
            | Error::Json(_)
            | Error::Csv(_) => 2,
            _ => 1,
        }
    }
}
