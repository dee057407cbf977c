use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the divergence library and the experiment harness.
#[derive(Debug, Error)]
pub enum JsdError {
    #[error("distribution is empty")]
    Empty,

    #[error("entry {index} is {value}, expected a finite value in [0, 1]")]
    InvalidEntry { index: usize, value: f64 },

    #[error("distribution sums to {sum}, expected 1 within {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("distributions have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid weights pi1={pi1}, pi2={pi2}: both must be non-negative and sum to 1")]
    InvalidWeights { pi1: f64, pi2: f64 },

    #[error("alpha={0} is outside [-1, 1]")]
    AlphaOutOfRange(f64),

    #[error("epsilon={0} is outside [-1, 1]")]
    EpsilonOutOfRange(f64),

    #[error("truncation order must be at least 1")]
    InvalidOrder,

    #[error("relative tolerance {0} must lie in (0, 1)")]
    InvalidTolerance(f64),

    #[error("relative error is undefined for a zero reference and a nonzero value ({0})")]
    UndefinedRelativeError(f64),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("could not generate a pair for log10 target {target} after {attempts} attempts")]
    Infeasible { target: f64, attempts: usize },

    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<JsdError>,
    },

    #[error("need at least 2 usable points for a fit, found {0}")]
    InsufficientData(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("nothing to write: record list is empty")]
    NoRecords,

    #[error("{path}:{line}: cannot parse {text:?} as a probability")]
    Parse {
        path: PathBuf,
        line: usize,
        text: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl JsdError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        JsdError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the `jsd` binary: 2 for validation
    /// problems, 3 when pair generation is infeasible, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            JsdError::Infeasible { .. } => 3,
            JsdError::Io { .. } => 4,
            JsdError::Trial { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, JsdError>;
