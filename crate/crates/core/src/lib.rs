//! Exact partition functions of symmetric hypergraph weight functions:
//! tractability classification, polynomial-time evaluation on the tractable
//! side, brute-force oracles, and the reduction gadgets.

pub mod abelian;
pub mod dichotomy;
pub mod error;
pub mod evaluator;
pub mod exact;
pub mod fixtures;
pub mod gadgets;
pub mod model;

pub use error::{Error, Result};
pub use exact::{IntMatrix, Rational, SnfResult};
pub use model::{CspInstance, Hypergraph, Instance, SymFunc};
