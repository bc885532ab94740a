use std::path::PathBuf;

/// Errors produced by the term recognition pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: malformed pretagged line: {message}")]
    PretaggedFormat {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("pattern syntax error at position {position}: {message}")]
    Pattern { position: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("quadratic fit failed: {0}")]
    QuadraticFit(String),

    #[error("step {step} failed: {source}")]
    Step {
        step: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_step(self, step: &'static str) -> Error {
        Error::Step {
            step,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
