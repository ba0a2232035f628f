use thiserror::Error;

/// Errors raised by the model, solvers and scan machinery.
#[derive(Debug, Error)]
pub enum QrmError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("exact spectrum did not converge to {tol:e} by truncation {truncation}")]
    NotConverged { truncation: usize, tol: f64 },

    #[error("Δ/ω = {0} is an even integer, where the crossing-count law does not apply")]
    TheoremBoundary(f64),

    #[error("scan failed at {axis} = {value}: {source}")]
    ScanPoint {
        axis: &'static str,
        value: f64,
        #[source]
        source: Box<QrmError>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed data: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, QrmError>;
