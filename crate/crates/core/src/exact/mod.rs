//! Exact scalars and integer matrices.

mod matrix;
mod rational;
mod snf;

pub use matrix::IntMatrix;
pub use rational::{ParseRationalError, Rational};
pub use snf::{snf, SnfResult};
