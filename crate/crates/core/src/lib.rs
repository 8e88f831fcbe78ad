//! Ascending runs in Cayley trees and random mappings.
//!
//! The crate is organised bottom-up:
//!
//! * [`structure`] holds the labelled objects themselves: rooted trees stored
//!   as parent arrays and mappings stored as image arrays, together with
//!   their text and JSON forms.
//! * [`runs`] evaluates the run-start predicate shared by trees and mappings.
//! * [`bijections`] implements the tree/mapping bijection and the encoding of
//!   mappings as ordered set partitions with link sequences.
//! * [`exact`] provides big-integer counting formulas and exhaustive oracles.
//! * [`series`] is an exact truncated bivariate power-series engine used to
//!   solve and cross-check the generating-function equations.
//! * [`asymptotics`] evaluates the singularity data and the Gaussian
//!   limit-law constants numerically.
//! * [`montecarlo`] samples uniform mappings and trees and checks the limit
//!   law empirically.
//!
//! All labels exposed by the public API are 1-based.

pub mod asymptotics;
pub mod bijections;
mod error;
pub mod exact;
pub mod exec;
pub mod montecarlo;
pub mod runs;
pub mod series;
pub mod structure;

pub use error::{Error, Result};
pub use exec::Execution;
pub use structure::{CayleyTree, Mapping};
