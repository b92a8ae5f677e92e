//! Exact polyhedral variational analysis.
//!
//! Tangent, regular normal and limiting normal cones of finite unions of
//! convex polyhedra, together with first-order stationarity checks and
//! certificates for problems of the form `min f(z)` s.t. `P(z) ∈ D` and for
//! MPECs whose lower level is a smooth inequality system.
//!
//! All arithmetic is exact over the rationals; there are no tolerances.

pub mod gen;
pub mod geometry;
pub mod kernel;
pub mod mpec;
pub mod stationarity;

mod error;

pub use error::{Error, Result};
pub use kernel::{
    cone::{ConvexCone, Face},
    lp::{Constraints, LpOutcome},
    matrix::{Matrix, Subspace},
    polyhedron::{ConvexPolyhedron, LpResult},
    rational::{Vector, Q},
};
