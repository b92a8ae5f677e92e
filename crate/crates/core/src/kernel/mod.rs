//! Exact linear algebra and single convex polyhedral cones and polyhedra.

pub mod cone;
pub mod limits;
pub mod lp;
pub mod matrix;
pub mod polyhedron;
pub mod rational;
