//! Marginal independence models over the poset of partial set partitions.
//!
//! The crate covers the full pipeline for discrete marginal independence:
//!
//! - [`partition`]: partial set partitions of `[n]`, their order, rank and
//!   enumeration;
//! - [`closure`]: splitting, split closure and the polynomial membership
//!   test;
//! - [`cdf`]: probability/cdf coordinates, connectivity, the factorization
//!   equations, flattening minors and the monomial parametrization matrix;
//! - [`toric`]: dimension and degree of the projective toric variety of the
//!   parametrization;
//! - [`markov`]: bidirected graphs and simplicial complexes as model front
//!   ends;
//! - [`census`]: exhaustive enumeration of all models on few variables;
//! - [`cli`]: the command implementations behind the `margind` binary.

pub mod cdf;
pub mod census;
pub mod cli;
pub mod closure;
pub mod error;
pub mod markov;
pub mod partition;
pub mod toric;

pub use closure::{SplitClosedIdeal, StatementSet};
pub use error::{Error, Result};
pub use partition::{GroundSet, PartialSetPartition, Permutation};
