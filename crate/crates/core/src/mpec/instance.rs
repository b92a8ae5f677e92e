use num_traits::{One, Signed, Zero};

use crate::kernel::lp::Constraints;
use crate::kernel::matrix::Matrix;
use crate::kernel::polyhedron::{ConvexPolyhedron, LpResult};
use crate::kernel::rational::{self, dot, Vector, Q};
use crate::stationarity::Assumptions;
use crate::{ConvexCone, Error, Result};

/// Derivative data of
///
/// `min F(x, y)` s.t. `0 ∈ φ(x, y) + N̂_Γ(y)`, `G(x, y) ≤ 0`, `Γ = {y : g(y) ≤ 0}`
///
/// at a reference point `(x̄, ȳ)` with `x ∈ ℝⁿ`, `y ∈ ℝᵐ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpecInstance {
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub q: usize,
    pub grad_f: Vector,
    /// `m × (n+m)`, x-columns first.
    pub jac_phi: Matrix,
    pub phi_val: Vector,
    /// `p × (n+m)`.
    pub jac_big_g: Matrix,
    pub big_g_val: Vector,
    pub g_val: Vector,
    /// `q × m`, row `i` is `∇g_i(ȳ)`.
    pub jac_g: Matrix,
    pub hess_g: Vec<Matrix>,
    pub assumptions: Assumptions,
    /// Free-form metadata carried into reports.
    pub notes: Vec<String>,
}

impl MpecInstance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n: usize,
        grad_f: Vector,
        jac_phi: Matrix,
        phi_val: Vector,
        jac_big_g: Matrix,
        big_g_val: Vector,
        g_val: Vector,
        jac_g: Matrix,
        hess_g: Vec<Matrix>,
        assumptions: Assumptions,
    ) -> Result<Self> {
        let m = phi_val.len();
        let p = big_g_val.len();
        let q = g_val.len();
        let checks = [
            (n + m, grad_f.len()),
            (m, jac_phi.rows()),
            (n + m, jac_phi.cols()),
            (p, jac_big_g.rows()),
            (n + m, jac_big_g.cols()),
            (q, jac_g.rows()),
            (m, jac_g.cols()),
            (q, hess_g.len()),
        ];
        for (expected, found) in checks {
            if expected != found {
                return Err(Error::DimensionMismatch { expected, found });
            }
        }
        for h in &hess_g {
            if h.rows() != m || h.cols() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: if h.rows() != m { h.rows() } else { h.cols() },
                });
            }
            if !h.is_symmetric() {
                return Err(Error::Invalid("lower-level Hessian is not symmetric".into()));
            }
        }
        if g_val.iter().any(|x| x.is_positive()) {
            return Err(Error::Invalid("g(ȳ) has a positive component".into()));
        }
        if big_g_val.iter().any(|x| x.is_positive()) {
            return Err(Error::Invalid("G(x̄, ȳ) has a positive component".into()));
        }
        Ok(MpecInstance {
            n,
            m,
            p,
            q,
            grad_f,
            jac_phi,
            phi_val,
            jac_big_g,
            big_g_val,
            g_val,
            jac_g,
            hess_g,
            assumptions,
            notes: Vec::new(),
        })
    }

    pub fn active_g(&self) -> Vec<usize> {
        (0..self.q).filter(|&i| self.g_val[i].is_zero()).collect()
    }

    pub fn active_big_g(&self) -> Vec<usize> {
        (0..self.p).filter(|&i| self.big_g_val[i].is_zero()).collect()
    }

    /// `∇²(λᵀg)(ȳ) = Σ λ_i ∇²g_i(ȳ)`.
    pub fn hessian_of(&self, lambda: &[Q]) -> Matrix {
        let mut h = Matrix::zeros(self.m, self.m);
        for (l, hi) in lambda.iter().zip(&self.hess_g) {
            if l.is_zero() {
                continue;
            }
            for r in 0..self.m {
                for c in 0..self.m {
                    h[(r, c)] += l * &hi[(r, c)];
                }
            }
        }
        h
    }

    pub(crate) fn phi_x(&self) -> Matrix {
        self.jac_phi.columns(0..self.n)
    }

    pub(crate) fn phi_y(&self) -> Matrix {
        self.jac_phi.columns(self.n..self.n + self.m)
    }

    pub(crate) fn big_g_x(&self) -> Matrix {
        self.jac_big_g.columns(0..self.n)
    }

    pub(crate) fn big_g_y(&self) -> Matrix {
        self.jac_big_g.columns(self.n..self.n + self.m)
    }
}

/// `ȳ* = −φ(x̄, ȳ)`.
pub fn ybar_star(inst: &MpecInstance) -> Vector {
    rational::neg(&inst.phi_val)
}

/// `Λ̄ = {λ ∈ N_{ℝ^q₋}(g(ȳ)) : ∇g(ȳ)ᵀλ = ȳ*}`.
pub fn multiplier_polytope(inst: &MpecInstance) -> Result<ConvexPolyhedron> {
    let q = inst.q;
    let mut c = Constraints::new(q);
    for i in 0..q {
        if inst.g_val[i].is_zero() {
            c.push_le(rational::neg(&rational::unit(q, i)), Q::zero());
        } else {
            c.push_eq(rational::unit(q, i), Q::zero());
        }
    }
    let ys = ybar_star(inst);
    for j in 0..inst.m {
        c.push_eq(inst.jac_g.column(j), ys[j].clone());
    }
    let lam = ConvexPolyhedron::from_constraints(&c)?;
    if lam.is_empty() {
        return Err(Error::NotNormal);
    }
    Ok(lam)
}

/// `K̄_Γ = {v : ∇g_i(ȳ)·v ≤ 0, i active} ∩ [ȳ*]^⊥`.
pub fn critical_cone_gamma(inst: &MpecInstance) -> Result<ConvexCone> {
    multiplier_polytope(inst)?;
    let ineqs: Vec<Vector> = inst
        .active_g()
        .into_iter()
        .map(|i| inst.jac_g.row(i).to_vec())
        .collect();
    ConvexCone::from_constraints(inst.m, &ineqs, &[ybar_star(inst)])
}

/// `Λ̄(v) = argmax { vᵀ∇²(λᵀg)(ȳ)v : λ ∈ Λ̄ }`, as a face of `Λ̄`.
pub fn directional_multipliers(inst: &MpecInstance, v: &[Q]) -> Result<ConvexPolyhedron> {
    if v.len() != inst.m {
        return Err(Error::DimensionMismatch {
            expected: inst.m,
            found: v.len(),
        });
    }
    let lam = multiplier_polytope(inst)?;
    if !critical_cone_gamma(inst)?.contains(v) {
        return Err(Error::NotCriticalDirection);
    }
    directional_face(inst, &lam, v)
}

pub(crate) fn directional_face(inst: &MpecInstance, lam: &ConvexPolyhedron, v: &[Q]) -> Result<ConvexPolyhedron> {
    let c: Vector = inst.hess_g.iter().map(|h| dot(v, &h.apply(v))).collect();
    match lam.lp_optimize(&c)? {
        LpResult::Optimal { face, .. } => lam.face_polyhedron(&face),
        LpResult::Unbounded { .. } => Err(Error::UnboundedMultiplierLp),
        LpResult::Infeasible => Err(Error::NotNormal),
    }
}

/// The cubic two-constraint example in `x ∈ ℝ`, `y ∈ ℝ³`:
///
/// `min x − 2y₃` s.t. `0 ∈ (y₁, y₂, −x + y₃) + N̂_Γ(y)`,
/// `Γ = {y₃ − y₁³ ≤ 0, y₃ − a³y₂³ ≤ 0}`, at `(x̄, ȳ) = (0, 0)`.
pub fn cubic_example(a: &Q) -> Result<MpecInstance> {
    if !a.is_positive() {
        return Err(Error::NonpositiveParameter);
    }
    let mut jac_phi = Matrix::zeros(3, 4);
    jac_phi[(2, 0)] = -Q::one();
    for i in 0..3 {
        jac_phi[(i, i + 1)] = Q::one();
    }
    let mut jac_g = Matrix::zeros(2, 3);
    jac_g[(0, 2)] = Q::one();
    jac_g[(1, 2)] = Q::one();
    let mut inst = MpecInstance::new(
        1,
        rational::vec_i(&[1, 0, 0, -2]),
        jac_phi,
        rational::zeros(3),
        Matrix::zeros(0, 4),
        Vec::new(),
        rational::zeros(2),
        jac_g,
        vec![Matrix::zeros(3, 3), Matrix::zeros(3, 3)],
        Assumptions {
            ggcq: true,
            mscq: true,
            lin_map_subregular: true,
        },
    )?;
    inst.notes.push(format!("a = {}", rational::format_rational(a)));
    inst.notes
        .push("derivative data at the reference point does not depend on a".into());
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{frac, int, vec_i};
    use crate::mpec::examples::*;

    #[test]
    fn ybar_star_examples() {
        assert_eq!(ybar_star(&cubic_example(&int(1)).unwrap()), vec_i(&[0, 0, 0]));
        let mut inst = duplicated_gradient(&[1, 0]);
        inst.phi_val = vec_i(&[1, -2]);
        assert_eq!(ybar_star(&inst), vec_i(&[-1, 2]));
        inst.phi_val = vec![frac(1, 2), int(0)];
        assert_eq!(ybar_star(&inst)[0], frac(-1, 2));
    }

    #[test]
    fn multiplier_polytope_examples() {
        let lam = multiplier_polytope(&cubic_example(&int(1)).unwrap()).unwrap();
        assert_eq!(lam.vertices(), vec![vec_i(&[0, 0])]);
        assert!(lam.recession_rays().is_empty() && lam.lineality().is_empty());
        let seg = multiplier_polytope(&duplicated_gradient(&[1, 0])).unwrap();
        assert_eq!(seg.vertices(), vec![vec_i(&[0, 1]), vec_i(&[1, 0])]);
        assert!(seg.contains(&[frac(1, 2), frac(1, 2)]));
        assert_eq!(
            multiplier_polytope(&duplicated_gradient(&[0, 1])),
            Err(Error::NotNormal)
        );
    }

    #[test]
    fn critical_cone_examples() {
        let k = critical_cone_gamma(&cubic_example(&int(1)).unwrap()).unwrap();
        assert_eq!(k, ConvexCone::from_constraints(3, &[vec_i(&[0, 0, 1])], &[]).unwrap());
        let k = critical_cone_gamma(&duplicated_gradient(&[1, 0])).unwrap();
        assert_eq!(k, ConvexCone::from_constraints(2, &[], &[vec_i(&[1, 0])]).unwrap());
        // ȳ* = 0: the linearized tangent cone of Γ.
        let mut inst = duplicated_gradient(&[0, 0]);
        inst.phi_val = vec_i(&[0, 0]);
        let k = critical_cone_gamma(&inst).unwrap();
        assert_eq!(k, ConvexCone::from_constraints(2, &[vec_i(&[1, 0])], &[]).unwrap());
    }

    #[test]
    fn directional_examples() {
        let inst = cubic_example(&int(1)).unwrap();
        let lam = multiplier_polytope(&inst).unwrap();
        assert_eq!(directional_multipliers(&inst, &vec_i(&[3, -1, -2])).unwrap(), lam);
        let sq = square_term();
        let f = directional_multipliers(&sq, &vec_i(&[0, 1])).unwrap();
        assert_eq!(f.vertices(), vec![vec_i(&[1, 0])]);
        let whole = directional_multipliers(&sq, &vec_i(&[0, 0])).unwrap();
        assert_eq!(whole, multiplier_polytope(&sq).unwrap());
        assert_eq!(
            directional_multipliers(&sq, &vec_i(&[1, 0])),
            Err(Error::NotCriticalDirection)
        );
    }

    #[test]
    fn cubic_example_parameter() {
        let one = cubic_example(&int(1)).unwrap();
        let two = cubic_example(&int(2)).unwrap();
        assert_eq!(one.grad_f, two.grad_f);
        assert_eq!(one.jac_phi, two.jac_phi);
        assert_eq!(one.hess_g, two.hess_g);
        assert!(two.notes.iter().any(|n| n.contains("does not depend on a")));
        assert_eq!(cubic_example(&int(0)), Err(Error::NonpositiveParameter));
    }
}
