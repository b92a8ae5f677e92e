use num_traits::Zero;

use crate::geometry::{UnionCone, UnionSet};
use crate::kernel::cone::ConvexCone;
use crate::kernel::lp::Constraints;
use crate::kernel::matrix::Matrix;
use crate::kernel::rational::{Vector, Q};
use crate::{Error, Result};

/// Constraint qualifications declared by the user. They are never verified,
/// only echoed into certificates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assumptions {
    pub ggcq: bool,
    pub mscq: bool,
    pub lin_map_subregular: bool,
}

/// `min f(z)` s.t. `P(z) ∈ D`, frozen at `z̄` through `∇f(z̄)`, `∇P(z̄)` and `P(z̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedProblem {
    pub grad_f: Vector,
    pub jac: Matrix,
    pub d_set: UnionSet,
    pub base: Vector,
    pub assumptions: Assumptions,
    tangent: UnionCone,
}

impl LinearizedProblem {
    pub fn new(grad_f: Vector, jac: Matrix, d_set: UnionSet, base: Vector, assumptions: Assumptions) -> Result<Self> {
        let (s, d) = (jac.rows(), jac.cols());
        for (expected, found) in [(d, grad_f.len()), (s, d_set.dim()), (s, base.len())] {
            if expected != found {
                return Err(Error::DimensionMismatch { expected, found });
            }
        }
        let tangent = d_set.tangent_cone(&base)?;
        Ok(LinearizedProblem {
            grad_f,
            jac,
            d_set,
            base,
            assumptions,
            tangent,
        })
    }

    /// Problem whose set is a cone union, with base point 0.
    pub fn conic(grad_f: Vector, jac: Matrix, d: &UnionCone, assumptions: Assumptions) -> Result<Self> {
        let base = vec![Q::zero(); d.dim()];
        Self::new(grad_f, jac, d.to_union_set(), base, assumptions)
    }

    pub fn dim_d(&self) -> usize {
        self.jac.cols()
    }

    pub fn dim_s(&self) -> usize {
        self.jac.rows()
    }

    /// `T_D(P(z̄))`.
    pub fn tangent_d(&self) -> &UnionCone {
        &self.tangent
    }

    /// Residual `∇f + ∇Pᵀ w*`.
    pub fn residual(&self, w_star: &[Q]) -> Vector {
        crate::kernel::rational::add(&self.grad_f, &self.jac.apply_transpose(w_star))
    }
}

/// `T^lin = {u : ∇P(z̄)u ∈ T_D(P(z̄))}`.
pub fn lin_tangent_cone(prob: &LinearizedProblem) -> Result<UnionCone> {
    prob.tangent_d().preimage(&prob.jac)
}

/// Some `w*` with `∇f + ∇Pᵀw* = 0` and `w* ∈ cone`, decided by exact LP.
pub(crate) fn solve_multiplier(prob: &LinearizedProblem, cone: &ConvexCone) -> Option<Vector> {
    let s = prob.dim_s();
    let mut c = Constraints::new(s);
    for a in cone.ineqs() {
        c.push_le(a.clone(), Q::zero());
    }
    for e in cone.eqs() {
        c.push_eq(e.clone(), Q::zero());
    }
    for j in 0..prob.dim_d() {
        c.push_eq(prob.jac.column(j), -prob.grad_f[j].clone());
    }
    crate::kernel::lp::feasible_point(&c)
}
