//! Stochastic six vertex model on `M × N` domains and the quasi-periodic
//! chain of such domains.

mod chain;
mod domain;
mod law;
mod stationary;

pub use chain::{
    geometric_mass, max_entry_gap, mc_sample, output_law_in, quasi_joint, quasi_joint_in,
    shift_by_geometric, EmpiricalJoint, WindingJoint,
};
pub use domain::{domain_transfer, domain_transfer_in, DomainTransfer, Edges, Weight};
pub use law::{vertex_probs, VertexLaw};
pub use stationary::{bernoulli_check, stationary, stationary_study, total_variation};
