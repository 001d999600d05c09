//! Command surface, file formats, and reporting around the exact kernel in
//! `spheromo-core`.  Input documents (JSON or TOML) describe a reductive
//! group, a sublattice of its weight lattice, a rational polytope in the
//! dominant chamber, and optionally a set of spherical roots; the commands
//! decide admissibility, reflexivity, smoothness, Kaehler candidates, and
//! monoid realizability, emitting deterministic certificate-bearing reports.

pub mod data;
pub mod error;
pub mod input;
pub mod report;
pub mod runner;
