//! Exact convex quadratic programming over unions of polyhedra, and the
//! auxiliary program `min ⟨∇f, u⟩ + ½‖y‖²` s.t. `∇P u + y ∈ T_D(P(z̄))`.

use num_traits::{One, Signed, Zero};

use super::checks::{check_b_lin, BOutcome};
use super::problem::LinearizedProblem;
use crate::kernel::limits;
use crate::kernel::lp::{self, Constraints, LpOutcome};
use crate::kernel::matrix::Matrix;
use crate::kernel::rational::{self, dot, frac, Vector, Q};
use crate::{Error, Result};

/// `min ½ zᵀ B z + bᵀ z` with `B` symmetric positive semidefinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticObjective {
    pub hessian: Matrix,
    pub linear: Vector,
}

impl QuadraticObjective {
    pub fn value(&self, z: &[Q]) -> Q {
        frac(1, 2) * dot(z, &self.hessian.apply(z)) + dot(&self.linear, z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceOutcome {
    Infeasible,
    /// A feasible recession direction `d` with `B d = 0` and `bᵀ d < 0`.
    Unbounded {
        direction: Vector,
    },
    Attained {
        value: Q,
        point: Vector,
    },
}

/// Solve one convex piece by active-set enumeration.
///
/// For each active set `W` an exact LP looks for `(z, λ_W, ν)` with
/// `B z + b + G_Wᵀ λ_W + Eᵀ ν = 0`, `λ_W ≥ 0`, `G_W z = h_W`, `E z = e` and
/// `G z ≤ h`; any solution is a global minimizer. A feasible piece with no KKT
/// point is unbounded below.
pub fn solve_piece(obj: &QuadraticObjective, piece: &Constraints) -> Result<PieceOutcome> {
    let n = piece.dim;
    if obj.hessian.rows() != n || obj.hessian.cols() != n || obj.linear.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: obj.linear.len(),
        });
    }
    if !lp::is_feasible(piece) {
        return Ok(PieceOutcome::Infeasible);
    }
    let m = piece.ineqs.len();
    let p = piece.eqs.len();
    limits::check_face_count(1usize.checked_shl(m as u32).unwrap_or(usize::MAX))?;
    let mut subsets: Vec<Vec<usize>> = (0u64..(1u64 << m))
        .map(|mask| (0..m).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for w in subsets {
        let total = n + w.len() + p;
        let mut c = Constraints::new(total);
        for j in 0..n {
            let mut row = rational::zeros(total);
            for k in 0..n {
                row[k] = obj.hessian[(j, k)].clone();
            }
            for (t, &i) in w.iter().enumerate() {
                row[n + t] = piece.ineqs[i].0[j].clone();
            }
            for (t, (e, _)) in piece.eqs.iter().enumerate() {
                row[n + w.len() + t] = e[j].clone();
            }
            c.push_eq(row, -obj.linear[j].clone());
        }
        let lifted = piece.lift(total, 0);
        for (i, (a, b)) in lifted.ineqs.into_iter().enumerate() {
            if w.contains(&i) {
                c.push_eq(a, b);
            } else {
                c.push_le(a, b);
            }
        }
        for (e, v) in lifted.eqs {
            c.push_eq(e, v);
        }
        for t in 0..w.len() {
            let mut row = rational::zeros(total);
            row[n + t] = -Q::one();
            c.push_le(row, Q::zero());
        }
        if let Some(sol) = lp::feasible_point(&c) {
            let point = sol[..n].to_vec();
            return Ok(PieceOutcome::Attained {
                value: obj.value(&point),
                point,
            });
        }
    }
    Ok(PieceOutcome::Unbounded {
        direction: recession_direction(obj, piece)?,
    })
}

/// `d` with `G d ≤ 0`, `E d = 0`, `B d = 0` and `bᵀ d ≤ −1`.
fn recession_direction(obj: &QuadraticObjective, piece: &Constraints) -> Result<Vector> {
    let n = piece.dim;
    let mut c = Constraints::new(n);
    for (a, _) in &piece.ineqs {
        c.push_le(a.clone(), Q::zero());
    }
    for (e, _) in &piece.eqs {
        c.push_eq(e.clone(), Q::zero());
    }
    for j in 0..n {
        c.push_eq(obj.hessian.row(j).to_vec(), Q::zero());
    }
    c.push_le(obj.linear.clone(), -Q::one());
    lp::feasible_point(&c)
        .map(|d| rational::primitive(&d))
        .ok_or_else(|| Error::Internal("no KKT point and no recession direction".into()))
}

/// The optimal set `{z ∈ piece : B z = B z*, bᵀ z = bᵀ z*}` of a convex piece.
pub fn optimal_set(obj: &QuadraticObjective, piece: &Constraints, z_opt: &[Q]) -> Constraints {
    let mut c = piece.clone();
    let bz = obj.hessian.apply(z_opt);
    for j in 0..piece.dim {
        c.push_eq(obj.hessian.row(j).to_vec(), bz[j].clone());
    }
    c.push_eq(obj.linear.clone(), dot(&obj.linear, z_opt));
    c
}

/// Minimize `‖z_coords‖₁` over a polyhedron; returns the full point.
fn min_one_norm(c: &Constraints, coords: std::ops::Range<usize>) -> Result<Vector> {
    let n = c.dim;
    let k = coords.len();
    let total = n + k;
    let mut big = c.lift(total, 0);
    for (t, i) in coords.enumerate() {
        let mut up = rational::zeros(total);
        up[i] = Q::one();
        up[n + t] = -Q::one();
        let mut down = rational::zeros(total);
        down[i] = -Q::one();
        down[n + t] = -Q::one();
        big.push_le(up, Q::zero());
        big.push_le(down, Q::zero());
    }
    let mut objective = rational::zeros(total);
    for o in objective.iter_mut().skip(n) {
        *o = Q::one();
    }
    match lp::minimize(&big, &objective) {
        LpOutcome::Optimal { point, .. } => Ok(point[..n].to_vec()),
        _ => Err(Error::Internal("1-norm selection LP failed".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpStatus {
    GlobalSolution,
    InfeasiblePiecewise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QpOutcome {
    pub status: QpStatus,
    pub u: Vector,
    pub y: Vector,
    pub w_star: Vector,
    pub value: Q,
    /// Index of the `T_D` piece attaining the optimum.
    pub piece: usize,
}

impl QpOutcome {
    /// `w = ∇P u + y`, the point of `T_D(P(z̄))` produced by the solution.
    pub fn w(&self, prob: &LinearizedProblem) -> Vector {
        rational::add(&prob.jac.apply(&self.u), &self.y)
    }
}

/// Objective and per-piece constraints of the auxiliary program in `z = (u, y)`.
pub fn aux_program(prob: &LinearizedProblem) -> (QuadraticObjective, Vec<Constraints>) {
    let (d, s) = (prob.dim_d(), prob.dim_s());
    let n = d + s;
    let mut hessian = Matrix::zeros(n, n);
    for i in d..n {
        hessian[(i, i)] = Q::one();
    }
    let mut linear = prob.grad_f.clone();
    linear.extend(rational::zeros(s));
    let a = prob.jac.hstack(&Matrix::identity(s));
    let pieces = prob
        .tangent_d()
        .pieces()
        .iter()
        .map(|c| {
            let mut out = Constraints::new(n);
            for row in c.ineqs() {
                out.push_le(a.left_apply(row), Q::zero());
            }
            for row in c.eqs() {
                out.push_eq(a.left_apply(row), Q::zero());
            }
            out
        })
        .collect();
    (QuadraticObjective { hessian, linear }, pieces)
}

/// Solve the auxiliary program under B-stationarity.
///
/// The best piece wins, ties going to the first piece in canonical order.
/// Among that piece's minimizers `u` is chosen with minimal 1-norm; `y` is
/// unique and `w* = −y`.
pub fn solve_aux_qp(prob: &LinearizedProblem) -> Result<QpOutcome> {
    if check_b_lin(prob)? != BOutcome::Stationary {
        return Err(Error::NotBStationary);
    }
    let (obj, pieces) = aux_program(prob);
    let d = prob.dim_d();
    let n = obj.linear.len();
    let mut best: Option<(Q, usize, Vector)> = None;
    for (i, piece) in pieces.iter().enumerate() {
        match solve_piece(&obj, piece)? {
            PieceOutcome::Infeasible => {}
            PieceOutcome::Unbounded { .. } => {
                return Err(Error::Internal(
                    "auxiliary program unbounded on a piece despite B-stationarity".into(),
                ))
            }
            PieceOutcome::Attained { value, point } => {
                if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
                    best = Some((value, i, point));
                }
            }
        }
    }
    let Some((value, piece, point)) = best else {
        return Ok(QpOutcome {
            status: QpStatus::InfeasiblePiecewise,
            u: rational::zeros(d),
            y: rational::zeros(n - d),
            w_star: rational::zeros(n - d),
            value: Q::zero(),
            piece: 0,
        });
    };
    let z = min_one_norm(&optimal_set(&obj, &pieces[piece], &point), 0..d)?;
    let u = z[..d].to_vec();
    let y = z[d..].to_vec();
    debug_assert_eq!(obj.value(&z), value);
    debug_assert!(!value.is_positive());
    Ok(QpOutcome {
        status: QpStatus::GlobalSolution,
        w_star: rational::neg(&y),
        u,
        y,
        value,
        piece,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{frac, int, vec_i};
    use crate::stationarity::examples::*;

    #[test]
    fn aux_examples() {
        let z = solve_aux_qp(&complementarity(&[0, 0])).unwrap();
        assert_eq!(
            (z.u.clone(), z.y.clone(), z.w_star.clone(), z.value.clone()),
            (vec_i(&[0, 0]), vec_i(&[0, 0]), vec_i(&[0, 0]), int(0))
        );

        let h = solve_aux_qp(&halfline(-1)).unwrap();
        assert_eq!(h.value, frac(-1, 2));
        assert_eq!(h.y, vec_i(&[-1]));
        assert_eq!(h.u, vec_i(&[1]));
        assert_eq!(h.w_star, vec_i(&[1]));

        assert_eq!(solve_aux_qp(&complementarity(&[0, -1])), Err(Error::NotBStationary));

        let prob = diagonal_complementarity();
        let q = solve_aux_qp(&prob).unwrap();
        assert_eq!(q.value, frac(-1, 2));
        assert_eq!(q.u, vec_i(&[1]));
        assert_eq!(q.y, vec_i(&[0, -1]));
        assert_eq!(q.w_star, vec_i(&[0, 1]));
        assert_eq!(q.w(&prob), vec_i(&[1, 0]));
    }

    #[test]
    fn piece_trichotomy() {
        // min ½x² − x on x ≥ 2: attained at 2 with value 0.
        let obj = QuadraticObjective {
            hessian: Matrix::identity(1),
            linear: vec_i(&[-1]),
        };
        let c = Constraints::new(1).le(vec_i(&[-1]), int(-2));
        assert_eq!(
            solve_piece(&obj, &c).unwrap(),
            PieceOutcome::Attained {
                value: int(0),
                point: vec_i(&[2])
            }
        );
        let lin = QuadraticObjective {
            hessian: Matrix::zeros(2, 2),
            linear: vec_i(&[1, 0]),
        };
        let half = Constraints::new(2).le(vec_i(&[0, 1]), int(0));
        match solve_piece(&lin, &half).unwrap() {
            PieceOutcome::Unbounded { direction } => assert!(dot(&direction, &vec_i(&[1, 0])).is_negative()),
            other => panic!("{other:?}"),
        }
        let empty = Constraints::new(1).le(vec_i(&[1]), int(-1)).le(vec_i(&[-1]), int(0));
        assert_eq!(solve_piece(&obj, &empty).unwrap(), PieceOutcome::Infeasible);
    }
}
