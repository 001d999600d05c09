//! Exact combinatorial kernel for momentum polytopes of spherical type.
//!
//! Everything here is computed over arbitrary-precision rationals; there are
//! no floating-point numbers and no tolerances anywhere.  The crate is
//! `no_std` (with `alloc`) and fully deterministic: equal inputs produce
//! byte-equal outputs.
//!
//! Modules, bottom up:
//!
//! * [`num`]: integer/rational aliases and small helpers;
//! * [`matrix`]: exact dense linear algebra and sublattices;
//! * [`lp`]: exact two-phase simplex over the rationals;
//! * [`cone`]: finitely generated rational convex cones;
//! * [`rootsys`]: root data, Weyl reflections, the spherical root catalog;
//! * [`tables`]: pluggable data registries (axiom (S) rows, socle entries);
//! * [`polykernel`]: rational polytopes, facets, faces, orbit faces;
//! * [`momentum`]: compatibility and admissibility of spherical root sets,
//!   momentum quadruples, reflexivity;
//! * [`colored`]: colors, colored fans, smoothness, Delzant, Kähler and
//!   reflective/Woodward tests;
//! * [`verdict`]: pass/fail/unsupported outcomes with certificates.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod colored;
pub mod cone;
pub mod lp;
pub mod matrix;
pub mod momentum;
pub mod num;
pub mod polykernel;
pub mod rootsys;
pub mod tables;
pub mod verdict;

use alloc::string::String;
use core::fmt;

/// Hard error: the input is structurally unusable (as opposed to a predicate
/// failing, which is reported through [`verdict::Verdict`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Malformed mathematical input: dependent basis, rank mismatch,
    /// degenerate polytope, point outside the required region, and so on.
    InvalidInput(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

pub type CoreResult<T> = core::result::Result<T, CoreError>;
