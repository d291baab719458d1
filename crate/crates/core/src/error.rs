use std::fmt;

use thiserror::Error;

/// One problem found while validating an automaton or an input element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub message: String,
}

impl Diagnostic {
    pub fn new(message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// All diagnostics collected while validating an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct InvalidAutomaton(pub Vec<Diagnostic>);

impl fmt::Display for InvalidAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid automaton")?;
        for d in &self.0 {
            write!(f, "\n  {}", d)?;
        }
        Ok(())
    }
}

/// The cooperative deadline of a fixed-point computation expired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("deadline exceeded")]
pub struct Timeout;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Invalid(#[from] InvalidAutomaton),
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("explicit state space of {needed} states exceeds the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error(transparent)]
    Timeout(#[from] Timeout),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
