use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the allocation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("vector length mismatch: expected {expected}, got {got} ({what})")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("water-filling did not converge after {iterations} iterations (mu bracket [{lo:e}, {hi:e}])")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("interference {interference_db:.3} dB is beyond the table grid (max {max_db:.3} dB)")]
    InterferenceBeyondGrid { interference_db: f64, max_db: f64 },

    #[error("no tabulated power reaches outage {eps:e} at interference row {row_db} dB (frequency resource {fr:?})")]
    InfeasibleRow {
        eps: f64,
        row_db: f64,
        fr: Option<usize>,
    },

    #[error("table mismatch: {0}")]
    TableMismatch(String),

    #[error("table format error: {0}")]
    Format(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
