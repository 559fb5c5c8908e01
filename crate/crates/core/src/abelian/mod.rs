//! Finite Abelian groups and counting solutions of linear systems over them.

mod group;
mod linear;

pub use group::{decompose, AbelianGroup, CyclicDecomposition};
pub use linear::{
    count_homs, count_solutions_enumerate, count_solutions_from_snf, count_solutions_mod,
    count_solutions_sparse, GroupLinearSystem, SparseSystem, SNF_ENTRY_LIMIT,
};
