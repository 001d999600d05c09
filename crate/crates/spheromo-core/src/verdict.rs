//! Check outcomes with machine-readable failure certificates.
//!
//! Every decision procedure in this crate reports one of three statuses.
//! `Unsupported` is reserved for configurations the classification tables do
//! not cover; it is never used to paper over a computable failure.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unsupported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unsupported => "unsupported",
        };
        f.write_str(s)
    }
}

/// One violated (or uncovered) rule, with enough witness data to re-check
/// the claim by hand.  Witness pairs are ordered and rendered verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Stable rule identifier, e.g. `"lattice/primitive"`.
    pub rule: String,
    /// Human-readable statement of what failed.
    pub message: String,
    /// Ordered `(key, value)` witness data.
    pub witness: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(rule: impl Into<String>, message: impl Into<String>) -> Certificate {
        Certificate {
            rule: rule.into(),
            message: message.into(),
            witness: Vec::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<String>) -> Certificate {
        self.witness.push((key.into(), value.into()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificates: Vec<Certificate>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict { status: Status::Pass, certificates: Vec::new() }
    }

    pub fn fail(cert: Certificate) -> Verdict {
        Verdict { status: Status::Fail, certificates: alloc::vec![cert] }
    }

    pub fn unsupported(cert: Certificate) -> Verdict {
        Verdict {
            status: Status::Unsupported,
            certificates: alloc::vec![cert],
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    /// Short-circuit conjunction: keep `self` unless it passed.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_pass() {
            next()
        } else {
            self
        }
    }
}
