use thiserror::Error;

/// Errors produced by graph construction, file loading and the solver driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Edge weights are 64-bit unsigned integers and sums over them must not
    /// wrap. Any aggregation that would overflow aborts with this error.
    #[error("edge weight overflow during {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
