//! Weight functions, instances, and their basic structure.

mod instance;
mod ops;
pub mod parse;
mod symfunc;

pub use instance::{to_csp, AnyInstance, CspInstance, Hypergraph, Instance};
pub use ops::{
    active_elements, components_over, degrees, domain_components, instance_components, marginalize,
    prune_domain, InstanceComponents, InstancePart, MarginalTable, Pruned,
};
pub use parse::{load_csp, load_hypergraph, load_instance, load_multi_hypergraph, load_symfunc};
pub use symfunc::{multisets, multisets_over, orderings, Multisets, SymFunc};
