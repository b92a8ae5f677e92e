//! Finite unions of convex polyhedra and cones and their variational cones.

pub mod cells;
pub mod contain;
pub mod lsp;
pub mod normals;
pub mod union;

pub use contain::union_contains;
pub use lsp::{is_in_lsp, lsp_under_approx};
pub use normals::{
    critical_cone, kth_order_tangent, limiting_at_origin, limiting_normal_cone, limiting_via_tangent_cells,
    regular_normal_cone, tangent_cone,
};
pub use union::{UnionCone, UnionSet};
