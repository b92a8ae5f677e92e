//! Small hand-checked instances.

use crate::kernel::matrix::Matrix;
use crate::kernel::rational::{self, vec_i};
use crate::stationarity::Assumptions;

use super::MpecInstance;

fn declared() -> Assumptions {
    Assumptions {
        ggcq: true,
        mscq: true,
        lin_map_subregular: true,
    }
}

/// `x ∈ ℝ`, `y ∈ ℝ²`, `g₁ = g₂ = y₁` (both active), `φ = y − ȳ*`, zero `F`.
pub fn duplicated_gradient(ys: &[i64]) -> MpecInstance {
    MpecInstance::new(
        1,
        rational::zeros(3),
        Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1]]),
        rational::neg(&vec_i(ys)),
        Matrix::zeros(0, 3),
        Vec::new(),
        rational::zeros(2),
        Matrix::from_i64(&[&[1, 0], &[1, 0]]),
        vec![Matrix::zeros(2, 2), Matrix::zeros(2, 2)],
        declared(),
    )
    .expect("valid instance")
}

/// `g₁ = y₁ + y₂²`, `g₂ = y₁`, `ȳ* = (1, 0)`, `F = x + 3y₂`, `φ = (y₁ − 1, x + y₂)`.
pub fn square_term() -> MpecInstance {
    MpecInstance::new(
        1,
        vec_i(&[1, 0, 3]),
        Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 1]]),
        vec_i(&[-1, 0]),
        Matrix::zeros(0, 3),
        Vec::new(),
        rational::zeros(2),
        Matrix::from_i64(&[&[1, 0], &[1, 0]]),
        vec![Matrix::from_i64(&[&[0, 0], &[0, 2]]), Matrix::zeros(2, 2)],
        declared(),
    )
    .expect("valid instance")
}

/// `K̄_Γ = {0} × ℝ²₊` with opposite Hessian signs on the two rays, so the
/// directional multiplier sets differ between them.
pub fn opposite_rays() -> MpecInstance {
    let z = Matrix::zeros(3, 3);
    MpecInstance::new(
        1,
        rational::zeros(4),
        Matrix::from_i64(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]),
        vec_i(&[-1, 0, 0]),
        Matrix::zeros(0, 4),
        Vec::new(),
        rational::zeros(4),
        Matrix::from_i64(&[&[1, 0, 0], &[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
        vec![
            Matrix::from_i64(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
            Matrix::from_i64(&[&[0, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
            z.clone(),
            z,
        ],
        declared(),
    )
    .expect("valid instance")
}
