use std::io;

use thiserror::Error;

/// Errors raised by the field, operator and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid grid, mask, medium or option values.
    #[error("config error: {0}")]
    Config(String),

    /// Argument outside the domain of a mathematical operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Field is in the wrong representation (physical vs spectral).
    #[error("state error: {0}")]
    State(String),

    /// Too few samples for the requested stencil.
    #[error("size error: {0}")]
    Size(String),

    /// A solver precondition was measured and rejected.
    #[error("precondition failed ({law}): measured {measured:.3e} > tolerance {tolerance:.3e}")]
    Precondition {
        law: &'static str,
        measured: f64,
        tolerance: f64,
    },

    /// Malformed input file or configuration text.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
