use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A grid, partition or experiment was configured with unusable values.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called on inputs that violate its contract.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Fields from two different grids were combined.
    #[error("grid mismatch: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    #[error("time step {dt} exceeds the CFL bound; admissible dt <= {admissible}")]
    StepSize { dt: f64, admissible: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    /// Normalized quantities left the interval they are constructed to live in.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("fit error: {0}")]
    Fit(String),

    #[error("malformed snapshot: {0}")]
    Snapshot(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
