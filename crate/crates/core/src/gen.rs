//! Deterministic pseudo-random instances for property tests and the self-test.
//!
//! Every generator draws small integer data from a caller-supplied
//! [`ChaCha8Rng`], so a seed fixes the instance on every platform.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{UnionCone, UnionSet};
use crate::kernel::lp::Constraints;
use crate::kernel::matrix::Matrix;
use crate::kernel::rational::{self, Vector, Q};
use crate::mpec::MpecInstance;
use crate::stationarity::{Assumptions, LinearizedProblem, QuadraticObjective};
use crate::{ConvexCone, ConvexPolyhedron};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

pub fn vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vector {
    (0..dim).map(|_| q(rng.gen_range(-bound..=bound))).collect()
}

fn nonzero_vector(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vector {
    loop {
        let v = vector(rng, dim, bound);
        if !rational::is_zero(&v) {
            return v;
        }
    }
}

pub fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows).map(|_| vector(rng, cols, bound)).collect();
    Matrix::from_rows(cols, data).expect("consistent rows")
}

fn declared() -> Assumptions {
    Assumptions {
        ggcq: true,
        mscq: true,
        lin_map_subregular: true,
    }
}

/// A cone `{z : A z ≤ 0, E z = 0}` with at most `max_ineqs` rows in
/// dimension `1..=max_dim`; occasionally with one equality.
pub fn cone(rng: &mut ChaCha8Rng, max_dim: usize, max_ineqs: usize) -> ConvexCone {
    let dim = rng.gen_range(1..=max_dim);
    cone_in(rng, dim, max_ineqs)
}

pub fn cone_in(rng: &mut ChaCha8Rng, dim: usize, max_ineqs: usize) -> ConvexCone {
    let k = rng.gen_range(0..=max_ineqs);
    let ineqs: Vec<Vector> = (0..k).map(|_| nonzero_vector(rng, dim, 2)).collect();
    let eqs: Vec<Vector> = if dim > 1 && rng.gen_bool(0.15) {
        vec![nonzero_vector(rng, dim, 2)]
    } else {
        Vec::new()
    };
    ConvexCone::from_constraints(dim, &ineqs, &eqs).expect("consistent dimensions")
}

/// A union of cones, each with at most four inequalities.
pub fn union_cone(rng: &mut ChaCha8Rng, max_dim: usize, max_pieces: usize) -> UnionCone {
    let dim = rng.gen_range(1..=max_dim);
    let n = rng.gen_range(1..=max_pieces);
    let pieces = (0..n).map(|_| cone_in(rng, dim, 4)).collect();
    UnionCone::new(dim, pieces).expect("consistent dimensions")
}

/// A point of the union: a random nonnegative combination of the generators
/// of a random piece.
pub fn member_point(rng: &mut ChaCha8Rng, c: &UnionCone) -> Vector {
    let piece = &c.pieces()[rng.gen_range(0..c.pieces().len())];
    let mut z = rational::zeros(c.dim());
    for r in piece.rays() {
        z = rational::axpy(&z, &q(rng.gen_range(0..=2)), r);
    }
    for l in piece.lineality() {
        z = rational::axpy(&z, &q(rng.gen_range(-2..=2)), l);
    }
    z
}

/// A union of nonempty polyhedra together with a member point. Right-hand
/// sides are drawn so that many constraints are active at the point.
pub fn union_set(rng: &mut ChaCha8Rng, max_dim: usize, max_pieces: usize) -> (UnionSet, Vector) {
    let dim = rng.gen_range(1..=max_dim);
    loop {
        let n = rng.gen_range(1..=max_pieces);
        let mut pieces = Vec::new();
        for _ in 0..n {
            let k = rng.gen_range(1..=4);
            let mut c = Constraints::new(dim);
            for _ in 0..k {
                let b = [-1, 0, 0, 0, 1][rng.gen_range(0..5)];
                c.push_le(nonzero_vector(rng, dim, 2), q(b));
            }
            let p = ConvexPolyhedron::from_constraints(&c).expect("consistent dimensions");
            if !p.is_empty() {
                pieces.push(p);
            }
        }
        let zero = rational::zeros(dim);
        if !pieces.iter().any(|p| p.contains(&zero)) {
            continue;
        }
        // Translate by an integer shift so that the base point is not always 0.
        let s = vector(rng, dim, 1);
        let mut shifted = Vec::new();
        for p in &pieces {
            let mut c = Constraints::new(dim);
            for (a, b) in p.ineqs() {
                let rhs = b + rational::dot(&a, &s);
                c.push_le(a, rhs);
            }
            for (e, b) in p.eqs() {
                let rhs = b + rational::dot(&e, &s);
                c.push_eq(e, rhs);
            }
            shifted.push(ConvexPolyhedron::from_constraints(&c).expect("consistent dimensions"));
        }
        return (UnionSet::new(dim, shifted).expect("consistent dimensions"), s);
    }
}

/// `min ½ zᵀ LᵀL z + bᵀ z` over up to `max_pieces` polyhedra.
pub fn piecewise_qp(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    max_pieces: usize,
    max_ineqs: usize,
) -> (QuadraticObjective, Vec<Constraints>) {
    let n = rng.gen_range(1..=max_dim);
    let r = rng.gen_range(0..=n);
    let l = matrix(rng, r, n, 2);
    let hessian = l.transpose().mul(&l);
    let linear = vector(rng, n, 3);
    let pieces = (0..rng.gen_range(1..=max_pieces))
        .map(|_| {
            let mut c = Constraints::new(n);
            for _ in 0..rng.gen_range(0..=max_ineqs) {
                let b = q(rng.gen_range(-2..=3));
                c.push_le(nonzero_vector(rng, n, 2), b);
            }
            if rng.gen_bool(0.1) {
                c.push_eq(nonzero_vector(rng, n, 2), q(rng.gen_range(-1..=1)));
            }
            c
        })
        .collect();
    (QuadraticObjective { hessian, linear }, pieces)
}

/// A linearized problem with conic `D` in `ℝ^s` and base point 0. Half of the
/// gradients are `−∇Pᵀξ` for a regular normal `ξ` of one piece, which makes
/// stationary instances common.
pub fn linearized_problem(rng: &mut ChaCha8Rng, max_d: usize, max_s: usize, max_pieces: usize) -> LinearizedProblem {
    let s = rng.gen_range(1..=max_s);
    let d = rng.gen_range(1..=max_d);
    let n = rng.gen_range(1..=max_pieces);
    let pieces = (0..n).map(|_| cone_in(rng, s, 3)).collect();
    let dset = UnionCone::new(s, pieces).expect("consistent dimensions");
    let jac = matrix(rng, s, d, 2);
    let grad = if rng.gen_bool(0.5) {
        let piece = &dset.pieces()[rng.gen_range(0..dset.pieces().len())];
        let polar = piece.polar();
        let mut xi = rational::zeros(s);
        for r in polar.rays() {
            xi = rational::axpy(&xi, &q(rng.gen_range(0..=2)), r);
        }
        for l in polar.lineality() {
            xi = rational::axpy(&xi, &q(rng.gen_range(-2..=2)), l);
        }
        rational::neg(&jac.apply_transpose(&xi))
    } else {
        vector(rng, d, 2)
    };
    LinearizedProblem::conic(grad, jac, &dset, declared()).expect("consistent dimensions")
}

/// An MPEC instance with all lower-level constraints active, `m ≤ 3`, `q ≤ 3`,
/// `ȳ* = ∇g(ȳ)ᵀλ₀` for a random `λ₀ ≥ 0` (so `Λ̄ ≠ ∅`), `p ≤ 1`.
pub fn mpec_instance(rng: &mut ChaCha8Rng) -> MpecInstance {
    let n = 1;
    let m = rng.gen_range(1..=3);
    let q_ = rng.gen_range(1..=3);
    let p = rng.gen_range(0..=1);
    let mut jac_g = matrix(rng, q_, m, 1);
    if q_ >= 2 && rng.gen_bool(0.5) {
        // Repeated gradients keep Λ̄ from being a point.
        for c in 0..m {
            jac_g[(1, c)] = jac_g[(0, c)].clone();
        }
    }
    let lambda0: Vector = (0..q_).map(|_| q(rng.gen_range(0..=1))).collect();
    let ys = jac_g.apply_transpose(&lambda0);
    let hess_g = (0..q_)
        .map(|_| {
            let mut h = Matrix::zeros(m, m);
            for r in 0..m {
                for c in r..m {
                    let x = q(rng.gen_range(-1..=1));
                    h[(r, c)] = x.clone();
                    h[(c, r)] = x;
                }
            }
            h
        })
        .collect();
    let jac_phi = matrix(rng, m, n + m, 1);
    let jac_big_g = matrix(rng, p, n + m, 1);
    let big_g_val = (0..p).map(|_| q(-(rng.gen_range(0..=1)))).collect();
    let mut grad_f = vector(rng, n + m, 2);
    if rng.gen_bool(0.3) {
        grad_f.iter_mut().for_each(|x| *x = Q::zero());
    }
    MpecInstance::new(
        n,
        grad_f,
        jac_phi,
        rational::neg(&ys),
        jac_big_g,
        big_g_val,
        rational::zeros(q_),
        jac_g,
        hess_g,
        declared(),
    )
    .expect("valid instance")
}
