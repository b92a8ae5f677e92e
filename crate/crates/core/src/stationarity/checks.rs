use num_traits::{Signed, Zero};

use super::problem::{lin_tangent_cone, solve_multiplier, LinearizedProblem};
use crate::geometry::{cells::cells, limiting_at_origin, lsp_under_approx};
use crate::kernel::matrix;
use crate::kernel::rational::{self, dot, Vector};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BOutcome {
    Stationary,
    /// `u ∈ T^lin` with `⟨∇f, u⟩ < 0`.
    DescentDirection(Vector),
}

/// B-stationarity on the linearized cone: no generator of a `T^lin` piece descends.
pub fn check_b_lin(prob: &LinearizedProblem) -> Result<BOutcome> {
    let g = &prob.grad_f;
    for piece in lin_tangent_cone(prob)?.pieces() {
        if let Some(r) = piece.rays().iter().find(|r| dot(g, r).is_negative()) {
            return Ok(BOutcome::DescentDirection(r.clone()));
        }
        for l in piece.lineality() {
            let s = dot(g, l);
            if s.is_positive() {
                return Ok(BOutcome::DescentDirection(rational::neg(l)));
            }
            if s.is_negative() {
                return Ok(BOutcome::DescentDirection(l.clone()));
            }
        }
    }
    Ok(BOutcome::Stationary)
}

/// S-stationarity: `0 ∈ ∇f + ∇Pᵀ N̂_D(P(z̄))`.
pub fn check_s(prob: &LinearizedProblem) -> Result<Option<Vector>> {
    let n = prob.tangent_d().regular_normal(&rational::zeros(prob.dim_s()))?;
    Ok(solve_multiplier(prob, &n))
}

/// Whether `range ∇P + Lsp(T_D(P(z̄))) = ℝ^s`, using the sound Lsp under-approximation.
pub fn check_sufficient_s(prob: &LinearizedProblem) -> Result<bool> {
    let s = prob.dim_s();
    let mut rows: Vec<Vector> = (0..prob.dim_d()).map(|j| prob.jac.column(j)).collect();
    rows.extend(lsp_under_approx(prob.tangent_d())?.basis().iter().cloned());
    Ok(matrix::rank(&rows, s) == s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MOutcome {
    pub w_star: Vector,
    /// Index of the limiting-normal piece containing `w_star`.
    pub piece: usize,
}

/// M-stationarity: `0 ∈ ∇f + ∇Pᵀ N_D(P(z̄))`, pieces tried in canonical order.
pub fn check_m(prob: &LinearizedProblem) -> Result<Option<MOutcome>> {
    let n = limiting_at_origin(prob.tangent_d())?;
    for (piece, c) in n.pieces().iter().enumerate() {
        if let Some(w_star) = solve_multiplier(prob, c) {
            return Ok(Some(MOutcome { w_star, piece }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Outcome {
    pub w: Vector,
    pub w_star: Vector,
    /// Arrangement sign vector of the cell containing `w`.
    pub cell: Vec<i8>,
}

/// `∃ w ∈ T, w* ∈ N̂_T(w)` with `∇f + ∇Pᵀw* = 0`, where `T = T_D(P(z̄))`.
///
/// `w = 0` is tried first, then one point of every arrangement cell of `T`
/// ordered by (dimension, point).
pub fn check_lin_m_k0(prob: &LinearizedProblem) -> Result<Option<K0Outcome>> {
    let t = prob.tangent_d();
    let hs = crate::geometry::cells::hyperplanes(t);
    let zero = rational::zeros(prob.dim_s());
    let mut candidates = vec![zero.clone()];
    candidates.extend(cells(t)?.into_iter().map(|c| c.point).filter(|p| !rational::is_zero(p)));
    for w in candidates {
        let n = t.regular_normal(&w)?;
        if let Some(w_star) = solve_multiplier(prob, &n) {
            let cell = hs
                .iter()
                .map(|h| {
                    let v = dot(h, &w);
                    if v.is_zero() {
                        0
                    } else if v.is_positive() {
                        1
                    } else {
                        -1
                    }
                })
                .collect();
            return Ok(Some(K0Outcome { w, w_star, cell }));
        }
    }
    Ok(None)
}
