//! Dual equivalence graphs, LLT polynomials and Macdonald polynomials.
//!
//! The crate builds signed, colored graphs on standard objects, checks the
//! dual equivalence axioms, rewires D graphs into dual equivalence graphs and
//! reads Schur expansions off the result. Every graph-derived expansion can be
//! compared with a signature-only greedy extraction.

pub mod axioms;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod llt;
pub mod macdonald;
pub mod poly;
pub mod shapes;
pub mod symfunc;
pub mod transform;

pub use error::{Error, Result};
