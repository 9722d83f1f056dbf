//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested at (or too close to) a pole.
    #[error("pole at {location}: {context}")]
    Pole { location: f64, context: String },

    /// The requested table would touch more sequence indices than allowed.
    #[error(
        "part-index budget exceeded: table needs {needed} sequence indices, budget is {budget}"
    )]
    BudgetExceeded { needed: String, budget: u64 },

    /// Root bracketing or refinement failed in the saddle solver.
    #[error("saddle solve failed: {0}")]
    Bracket(String),

    /// Malformed textual input (kappa strings, multiplicity caps, ...).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn pole(location: f64, context: impl Into<String>) -> Self {
        Error::Pole {
            location,
            context: context.into(),
        }
    }
}
