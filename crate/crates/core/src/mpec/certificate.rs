//! First-order certificates `(λ̃, v, z*, w, μ)` and their exact verification.

use num_traits::{Signed, Zero};

use super::condition::{check_multiplier_constancy, ConstancyStatus};
use super::graph::critical_of_critical;
use super::instance::{critical_cone_gamma, multiplier_polytope, MpecInstance};
use crate::kernel::lp;
use crate::kernel::matrix::Matrix;
use crate::kernel::rational::{self, dot, Display, Vector, Q};
use crate::stationarity::{Assumptions, StationarityCertificate, Verdict};
use crate::{ConvexCone, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpecCertificate {
    pub lambda_tilde: Vector,
    pub v: Vector,
    pub z_star: Vector,
    pub w: Vector,
    pub mu: Vector,
    /// Indices of `F₁` among the faces of `K̄_Γ` and of `F₂` among the faces
    /// of `N_{K̄_Γ}(v)`, when produced by the search.
    pub face_ids: Option<(usize, usize)>,
    pub condition: ConstancyStatus,
    pub assumptions: Assumptions,
}

/// `A` with `r = ∇_yF + A (w, μ)`, `A = [−∇²(λ̃ᵀg) − ∇_yφᵀ | ∇_yGᵀ]`.
fn y_map(inst: &MpecInstance, h: &Matrix) -> Matrix {
    let (m, p) = (inst.m, inst.p);
    let phi_y = inst.phi_y();
    let g_y = inst.big_g_y();
    let mut a = Matrix::zeros(m, m + p);
    for r in 0..m {
        for c in 0..m {
            a[(r, c)] = -h[(r, c)].clone() - phi_y[(c, r)].clone();
        }
        for c in 0..p {
            a[(r, m + c)] = g_y[(c, r)].clone();
        }
    }
    a
}

/// `B` with `x-residual = ∇_xF + B (w, μ)`, `B = [−∇_xφᵀ | ∇_xGᵀ]`.
fn x_map(inst: &MpecInstance) -> Matrix {
    let (n, m, p) = (inst.n, inst.m, inst.p);
    let phi_x = inst.phi_x();
    let g_x = inst.big_g_x();
    let mut b = Matrix::zeros(n, m + p);
    for r in 0..n {
        for c in 0..m {
            b[(r, c)] = -phi_x[(c, r)].clone();
        }
        for c in 0..p {
            b[(r, m + c)] = g_x[(c, r)].clone();
        }
    }
    b
}

fn grad_x(inst: &MpecInstance) -> &[Q] {
    &inst.grad_f[..inst.n]
}

fn grad_y(inst: &MpecInstance) -> &[Q] {
    &inst.grad_f[inst.n..]
}

/// Solve for `(w, μ)` given `λ̃` and `K_crit`.
fn solve_wmu(inst: &MpecInstance, h: &Matrix, kc: &ConvexCone) -> Option<(Vector, Vector)> {
    let (m, p) = (inst.m, inst.p);
    let dim = m + p;
    let mut c = kc.constraints().lift(dim, 0);
    for i in 0..p {
        let e = rational::unit(dim, m + i);
        if inst.big_g_val[i].is_zero() {
            c.push_le(rational::neg(&e), Q::zero());
        } else {
            c.push_eq(e, Q::zero());
        }
    }
    let b = x_map(inst);
    for (j, g) in grad_x(inst).iter().enumerate() {
        c.push_eq(b.row(j).to_vec(), -g.clone());
    }
    let a = y_map(inst, h);
    let fy = grad_y(inst);
    let polar = kc.polar();
    // −r ∈ K_crit°  ⇔  a·r ≥ 0 for every polar row a.
    for row in polar.ineqs() {
        c.push_le(rational::neg(&a.left_apply(row)), dot(row, fy));
    }
    for row in polar.eqs() {
        c.push_eq(a.left_apply(row), -dot(row, fy));
    }
    let x = lp::feasible_point(&c)?;
    Some((x[..m].to_vec(), x[m..].to_vec()))
}

/// Enumerate face pairs `(F₁, F₂)` in lexicographic order and return the
/// first `(v, z*) = (ri F₁, ri F₂)` for which `(w, μ)` exists.
pub fn mpec_certificate_search(inst: &MpecInstance, samples: usize) -> Result<Option<MpecCertificate>> {
    let cond = check_multiplier_constancy(inst, samples)?;
    let Some(lambda) = cond.lambda_tilde() else {
        return Err(Error::ConstancyViolated);
    };
    let h = inst.hessian_of(&lambda);
    let k = critical_cone_gamma(inst)?;
    for (i1, f1) in k.faces()?.iter().enumerate() {
        let v = f1.ri_point.clone();
        let n1 = k.normal_at(&v)?;
        for (i2, f2) in n1.faces()?.iter().enumerate() {
            let z_star = f2.ri_point.clone();
            let kc = critical_of_critical(&k, &v, &z_star)?;
            if let Some((w, mu)) = solve_wmu(inst, &h, &kc) {
                return Ok(Some(MpecCertificate {
                    lambda_tilde: lambda,
                    v,
                    z_star,
                    w,
                    mu,
                    face_ids: Some((i1, i2)),
                    condition: cond.status(),
                    assumptions: inst.assumptions,
                }));
            }
        }
    }
    Ok(None)
}

/// Exact re-check of every membership and both equations.
pub fn verify_mpec_certificate(inst: &MpecInstance, cert: &MpecCertificate) -> Result<Verdict> {
    let (m, p, q) = (inst.m, inst.p, inst.q);
    if cert.lambda_tilde.len() != q
        || cert.v.len() != m
        || cert.z_star.len() != m
        || cert.w.len() != m
        || cert.mu.len() != p
    {
        return Ok(Verdict::fail("dimension mismatch"));
    }
    let lam = match multiplier_polytope(inst) {
        Ok(l) => l,
        Err(Error::NotNormal) => return Ok(Verdict::fail("the multiplier set is empty")),
        Err(e) => return Err(e),
    };
    if !lam.contains(&cert.lambda_tilde) {
        return Ok(Verdict::fail("λ̃ is not in the multiplier set"));
    }
    let k = critical_cone_gamma(inst)?;
    if !k.contains(&cert.v) {
        return Ok(Verdict::fail("v is not in the critical cone"));
    }
    if !k.normal_at(&cert.v)?.contains(&cert.z_star) {
        return Ok(Verdict::fail("z* is not normal to the critical cone at v"));
    }
    let kc = critical_of_critical(&k, &cert.v, &cert.z_star)?;
    if !kc.contains(&cert.w) {
        return Ok(Verdict::fail("w is not in the critical cone K(v, z*)"));
    }
    for i in 0..p {
        if inst.big_g_val[i].is_zero() {
            if cert.mu[i].is_negative() {
                return Ok(Verdict::fail(format!("μ_{} is negative on an active component", i + 1)));
            }
        } else if !cert.mu[i].is_zero() {
            return Ok(Verdict::fail(format!(
                "μ_{} is nonzero on an inactive component",
                i + 1
            )));
        }
    }
    let mut wmu = cert.w.clone();
    wmu.extend(cert.mu.iter().cloned());
    let rx = rational::add(grad_x(inst), &x_map(inst).apply(&wmu));
    if !rational::is_zero(&rx) {
        return Ok(Verdict::fail(format!("x-equation residual nonzero: {}", Display(&rx))));
    }
    let h = inst.hessian_of(&cert.lambda_tilde);
    let ry = rational::add(grad_y(inst), &y_map(inst, &h).apply(&wmu));
    if !kc.polar().contains(&rational::neg(&ry)) {
        return Ok(Verdict::fail(format!(
            "negated y-residual {} is not in the polar of K(v, z*)",
            Display(&rational::neg(&ry))
        )));
    }
    Ok(Verdict::pass())
}

/// Read an MPEC certificate off a certificate of the lifted conic problem
/// `min F` s.t. `∇P̂ (u) ∈ T_{Gr N̂_Γ} × T_{ℝ^p₋}`.
pub fn from_lifted(
    inst: &MpecInstance,
    lambda: &[Q],
    condition: ConstancyStatus,
    cert: &StationarityCertificate,
) -> Result<MpecCertificate> {
    let (m, p) = (inst.m, inst.p);
    if cert.w.len() != 2 * m + p || cert.w_star.len() != 2 * m + p {
        return Err(Error::DimensionMismatch {
            expected: 2 * m + p,
            found: cert.w.len(),
        });
    }
    let h = inst.hessian_of(lambda);
    let v = cert.w[..m].to_vec();
    let z_star = rational::sub(&cert.w[m..2 * m], &h.apply(&v));
    Ok(MpecCertificate {
        lambda_tilde: lambda.to_vec(),
        v,
        z_star,
        w: cert.w_star[m..2 * m].to_vec(),
        mu: cert.w_star[2 * m..].to_vec(),
        face_ids: None,
        condition,
        assumptions: inst.assumptions,
    })
}
