//! Input-level failures: malformed documents, unusable mathematical data,
//! missing fields.  These map to exit code 2, unlike predicate verdicts.

use spheromo_core::CoreError;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    message: String,
    at: Option<(usize, usize)>,
}

impl InputError {
    pub fn new(message: impl Into<String>) -> InputError {
        InputError { message: message.into(), at: None }
    }

    pub fn located(message: impl Into<String>, at: Option<(usize, usize)>) -> InputError {
        InputError { message: message.into(), at }
    }

    pub fn from_core(err: CoreError) -> InputError {
        InputError::new(err.to_string())
    }

    pub fn line_column(&self) -> Option<(usize, usize)> {
        self.at
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.at {
            Some((line, column)) => {
                write!(f, "line {line}, column {column}: {}", self.message)
            }
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for InputError {}
