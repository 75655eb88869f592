//! Computational laboratory for the thresholding greedy algorithm over gap-sequence
//! families of index sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`index`], [`vector`] and [`greedy`]: finitely supported vectors, index sets,
//!   sign patterns, projections, partial sums and greedy sets.
//! - [`families`]: gap sequences `(a_n)`, the families `F_(a_n)`, their hereditary
//!   closures, and the covering / sliding machinery.
//! - [`norms`]: norm oracles, from plain `l_p` up to the counterexample norms.
//! - [`constructions`]: recursive parameter builders behind the counterexample norms.
//! - [`constants`]: witness-carrying lower bounds for greedy-type constants.
//! - [`oracle`]: brute-force reference implementations used for cross-checks.

pub mod constants;
pub mod constructions;
pub mod error;
pub mod families;
pub mod greedy;
pub mod index;
pub mod norms;
pub mod oracle;
pub mod vector;

pub use error::{Error, Result};
pub use index::Index;
pub use vector::{IndexSet, Sign, SignPattern, SparseVector};
