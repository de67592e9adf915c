//! Concept induction from positive and negative examples over
//! description-logic knowledge bases.
//!
//! The pipeline enriches the knowledge base with named bounded expressions,
//! materializes atomic types once, and then assembles and ranks solution
//! candidates with set operations only.

pub mod bitset;
pub mod enrich;
pub mod induce;
pub mod io;
pub mod kb;
pub mod materialize;
pub mod oracle;
pub mod synthetic;
