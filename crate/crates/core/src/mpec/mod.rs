//! MPECs `min F(x, y)` s.t. `0 ∈ φ(x, y) + N̂_Γ(y)`, `G(x, y) ≤ 0` with
//! `Γ = {y : g(y) ≤ 0}`, analyzed through the derivative data at a point.

mod certificate;
mod condition;
pub mod examples;
mod graph;
mod instance;

pub use certificate::{from_lifted, mpec_certificate_search, verify_mpec_certificate, MpecCertificate};
pub use condition::{check_multiplier_constancy, ConstancyStatus, MultiplierConstancy, DEFAULT_SAMPLES};
pub use graph::{
    graph_normal_regular, graph_tangent_membership, graph_tangent_pieces, lifted_jacobian, lifted_tangent,
};
pub use instance::{
    critical_cone_gamma, cubic_example, directional_multipliers, multiplier_polytope, ybar_star, MpecInstance,
};
