//! Sharp-minimum criterion `⟨∇f, u⟩ ≥ α′‖u‖` on the linearized tangent cone.

use num_traits::{One, Signed, Zero};

use super::problem::{lin_tangent_cone, LinearizedProblem};
use crate::kernel::lp::{self, Constraints, LpOutcome};
use crate::kernel::rational::{self, Vector, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SharpOutcome {
    /// `α₁ = min ⟨∇f, u⟩` over `‖u‖₁ = 1` is positive. Since `‖u‖₂ ≤ ‖u‖₁`,
    /// `α₁` is also a Euclidean constant; the best Euclidean constant `α₂`
    /// satisfies `α₁ ≤ α₂ ≤ √d α₁`, reported exactly as `α₂² ≤ d α₁²`.
    CriterionHolds { alpha1: Q, euclid_upper_sq: Q },
    /// A direction with `‖u‖₁ = 1` and `⟨∇f, u⟩ = α₁ ≤ 0`.
    Fails { witness: Vector, alpha1: Q },
    /// `T^lin = {0}`.
    TrivialCone,
}

/// Minimize `⟨∇f, u⟩` over each `T^lin` piece intersected with each sign
/// orthant and the 1-norm sphere `Σ σ_i u_i = 1`.
pub fn sharp_min_criterion(prob: &LinearizedProblem) -> Result<SharpOutcome> {
    let d = prob.dim_d();
    let t = lin_tangent_cone(prob)?;
    if t.pieces().iter().all(|p| p.is_zero()) {
        return Ok(SharpOutcome::TrivialCone);
    }
    let mut best: Option<(Q, Vector)> = None;
    for piece in t.pieces() {
        if piece.is_zero() {
            continue;
        }
        for mask in 0u64..(1u64 << d) {
            let sigma: Vec<Q> = (0..d)
                .map(|i| if mask & (1 << i) != 0 { -Q::one() } else { Q::one() })
                .collect();
            let mut c: Constraints = piece.constraints();
            for (i, s) in sigma.iter().enumerate() {
                let mut row = rational::zeros(d);
                row[i] = -s.clone();
                c.push_le(row, Q::zero());
            }
            c.push_eq(sigma.clone(), Q::one());
            match lp::minimize(&c, &prob.grad_f) {
                LpOutcome::Infeasible => {}
                LpOutcome::Optimal { value, point } => {
                    if best.as_ref().is_none_or(|(v, _)| value < *v) {
                        best = Some((value, point));
                    }
                }
                LpOutcome::Unbounded { .. } => {
                    return Err(Error::Internal("LP over a bounded slice is unbounded".into()))
                }
            }
        }
    }
    let (alpha1, witness) = best.ok_or_else(|| Error::Internal("nonzero cone with empty unit slice".into()))?;
    if alpha1.is_positive() {
        let dq = Q::from_integer((d as i64).into());
        Ok(SharpOutcome::CriterionHolds {
            euclid_upper_sq: &alpha1 * &alpha1 * dq,
            alpha1,
        })
    } else {
        Ok(SharpOutcome::Fails { witness, alpha1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::int;
    use crate::stationarity::examples::*;

    #[test]
    fn examples() {
        assert_eq!(
            sharp_min_criterion(&diagonal_complementarity()).unwrap(),
            SharpOutcome::TrivialCone
        );
        assert_eq!(
            sharp_min_criterion(&halfline(-1)).unwrap(),
            SharpOutcome::CriterionHolds {
                alpha1: int(1),
                euclid_upper_sq: int(1)
            }
        );
        match sharp_min_criterion(&complementarity(&[0, 0])).unwrap() {
            SharpOutcome::Fails { witness, alpha1 } => {
                assert_eq!(alpha1, int(0));
                assert_eq!(rational::norm1(&witness), int(1));
            }
            other => panic!("{other:?}"),
        }
    }
}
