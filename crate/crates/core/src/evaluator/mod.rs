//! Exact evaluation of partition functions: exhaustive and elimination
//! oracles, the structured tractable path, and both `Λ` computations.

mod brute;
mod elimination;
mod lambda;
mod tractable;

pub use brute::{brute_cap_from_env, eval_bruteforce, BRUTE_CAP_ENV, DEFAULT_BRUTE_CAP};
pub use elimination::eval_elimination;
pub use lambda::{
    lambda_factor_direct, lambda_monomial_dp, monomial_value, monomial_value_at, northwest_contingency,
    ContingencyTable, MonomialTally,
};
pub use tractable::{eval_tractable, evaluate, ComponentReport, EvalReport, Method, Strategy, TermReport};
