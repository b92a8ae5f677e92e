//! Small fixtures shared by the unit tests.

use super::problem::{Assumptions, LinearizedProblem};
use crate::geometry::UnionCone;
use crate::kernel::cone::ConvexCone;
use crate::kernel::matrix::Matrix;
use crate::kernel::rational::vec_i;

pub fn flags() -> Assumptions {
    Assumptions {
        ggcq: true,
        mscq: true,
        lin_map_subregular: true,
    }
}

pub fn complementarity_cone() -> UnionCone {
    let a = ConvexCone::from_generators(2, &[vec_i(&[1, 0])], &[]).unwrap();
    let b = ConvexCone::from_generators(2, &[vec_i(&[0, 1])], &[]).unwrap();
    UnionCone::new(2, vec![a, b]).unwrap()
}

/// `d = s = 1`, `D = ℝ₋`, `∇P = (1)`, `∇f = (g)`.
pub fn halfline(g: i64) -> LinearizedProblem {
    let d = UnionCone::single(ConvexCone::from_constraints(1, &[vec_i(&[1])], &[]).unwrap());
    LinearizedProblem::conic(vec_i(&[g]), Matrix::identity(1), &d, flags()).unwrap()
}

/// `D` the complementarity cone, `∇P = I`.
pub fn complementarity(g: &[i64]) -> LinearizedProblem {
    LinearizedProblem::conic(vec_i(g), Matrix::identity(2), &complementarity_cone(), flags()).unwrap()
}

/// `d = 1`, `∇P = (1, 1)ᵀ` into the complementarity cone, `∇f = −1`; B- but not S-stationary.
pub fn diagonal_complementarity() -> LinearizedProblem {
    LinearizedProblem::conic(
        vec_i(&[-1]),
        Matrix::from_i64(&[&[1], &[1]]),
        &complementarity_cone(),
        flags(),
    )
    .unwrap()
}

pub fn zero_jacobian_orthant() -> LinearizedProblem {
    let d = UnionCone::single(ConvexCone::from_constraints(2, &[vec_i(&[1, 0]), vec_i(&[0, 1])], &[]).unwrap());
    LinearizedProblem::conic(vec_i(&[0]), Matrix::zeros(2, 1), &d, flags()).unwrap()
}

/// `range ∇P` is the first axis, `T_D = {z₁ ≤ 0}` with lineality along the second.
pub fn hyperplane_plus_halfspace() -> LinearizedProblem {
    let d = UnionCone::single(ConvexCone::from_constraints(2, &[vec_i(&[1, 0])], &[]).unwrap());
    LinearizedProblem::conic(vec_i(&[0]), Matrix::from_i64(&[&[1], &[0]]), &d, flags()).unwrap()
}
