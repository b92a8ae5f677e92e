//! Linearized M-stationarity certificates and their verification.

use num_traits::Zero;

use super::checks::{check_b_lin, check_lin_m_k0, check_m, check_s, BOutcome};
use super::problem::{lin_tangent_cone, Assumptions, LinearizedProblem};
use crate::geometry::{is_in_lsp, limiting_at_origin, UnionCone};
use crate::kernel::matrix;
use crate::kernel::rational::{self, dot, Display, Vector};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    B,
    S,
    M,
    LinMK0,
    LinMFull,
}

/// How the `∇P u ∉ Lsp(·)` conditions were decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LspMethod {
    ExactMembership,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationarityCertificate {
    pub kind: CertificateKind,
    pub k: usize,
    pub u_list: Vec<Vector>,
    pub w: Vector,
    pub w_star: Vector,
    /// Arrangement sign vectors of the cells used, one per search level.
    pub face_trace: Vec<Vec<i8>>,
    pub assumptions: Assumptions,
    /// Flags propagated to every recursion level unchanged.
    pub assumptions_propagated: bool,
    pub lsp_method: LspMethod,
}

impl StationarityCertificate {
    pub fn simple(kind: CertificateKind, prob: &LinearizedProblem, w: Vector, w_star: Vector) -> Self {
        StationarityCertificate {
            kind,
            k: 0,
            u_list: Vec::new(),
            w,
            w_star,
            face_trace: Vec::new(),
            assumptions: prob.assumptions,
            assumptions_propagated: true,
            lsp_method: LspMethod::ExactMembership,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub reason: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { ok: true, reason: None }
    }

    pub fn fail(reason: impl Into<String>) -> Self {
        Verdict {
            ok: false,
            reason: Some(reason.into()),
        }
    }
}

/// `D' = T_{T_D(P(z̄))}(∇P u)`, base point 0, same derivatives and flags.
pub fn next_linearization(prob: &LinearizedProblem, u: &[crate::Q]) -> Result<LinearizedProblem> {
    if u.len() != prob.dim_d() {
        return Err(Error::DimensionMismatch {
            expected: prob.dim_d(),
            found: u.len(),
        });
    }
    if !dot(&prob.grad_f, u).is_zero() || !prob.tangent_d().contains(&prob.jac.apply(u)) {
        return Err(Error::NotCritical);
    }
    let d = prob.tangent_d().tangent_cone(&prob.jac.apply(u))?;
    LinearizedProblem::conic(prob.grad_f.clone(), prob.jac.clone(), &d, prob.assumptions)
}

/// Search for `k, u_1…u_k, w, w*` certifying linearized M-stationarity.
///
/// On polyhedral data the search always ends at `k = 0`; a deeper result is
/// reported as an internal error.
pub fn lin_m_search(prob: &LinearizedProblem) -> Result<StationarityCertificate> {
    if check_b_lin(prob)? != BOutcome::Stationary {
        return Err(Error::NotBStationary);
    }
    let bound = matrix::rank(&prob.jac.row_vectors(), prob.dim_d());
    match search_level(prob, bound)? {
        Some(c) if c.k == 0 => Ok(c),
        Some(c) => Err(Error::Internal(format!(
            "certificate of order k = {} on polyhedral input",
            c.k
        ))),
        None => Err(Error::InternalNonTermination { bound }),
    }
}

fn search_level(prob: &LinearizedProblem, budget: usize) -> Result<Option<StationarityCertificate>> {
    if let Some(k0) = check_lin_m_k0(prob)? {
        let mut c = StationarityCertificate::simple(CertificateKind::LinMFull, prob, k0.w, k0.w_star);
        c.face_trace.push(k0.cell);
        return Ok(Some(c));
    }
    if budget == 0 {
        return Ok(None);
    }
    // Critical directions: generators of T^lin orthogonal to ∇f whose image leaves Lsp.
    let t = prob.tangent_d();
    for piece in lin_tangent_cone(prob)?.pieces() {
        for u in piece.generators() {
            if !dot(&prob.grad_f, &u).is_zero() || is_in_lsp(t, &prob.jac.apply(&u))? {
                continue;
            }
            let next = next_linearization(prob, &u)?;
            if let Some(mut c) = search_level(&next, budget - 1)? {
                c.k += 1;
                c.u_list.insert(0, u);
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

fn in_limiting(prob: &LinearizedProblem, w_star: &[crate::Q]) -> Result<bool> {
    Ok(limiting_at_origin(prob.tangent_d())?.contains(w_star))
}

/// Exact re-check of a certificate against the problem data.
pub fn verify_certificate(prob: &LinearizedProblem, cert: &StationarityCertificate) -> Result<Verdict> {
    let (d, s) = (prob.dim_d(), prob.dim_s());
    if cert.kind == CertificateKind::B {
        return Ok(match check_b_lin(prob)? {
            BOutcome::Stationary => Verdict::pass(),
            BOutcome::DescentDirection(u) => Verdict::fail(format!("descent direction {}", Display(&u))),
        });
    }
    if cert.w_star.len() != s || cert.w.len() != s || cert.u_list.iter().any(|u| u.len() != d) {
        return Ok(Verdict::fail("dimension mismatch"));
    }
    if cert.u_list.len() != cert.k {
        return Ok(Verdict::fail("k does not match the number of directions"));
    }
    let r = prob.residual(&cert.w_star);
    if !rational::is_zero(&r) {
        return Ok(Verdict::fail(format!(
            "stationarity residual {} is nonzero",
            Display(&r)
        )));
    }
    let zero = rational::zeros(s);
    match cert.kind {
        CertificateKind::B => unreachable!(),
        CertificateKind::S => {
            if !prob.tangent_d().regular_normal(&zero)?.contains(&cert.w_star) {
                return Ok(Verdict::fail("w* is not a regular normal of D at the base point"));
            }
        }
        CertificateKind::M => {
            if !in_limiting(prob, &cert.w_star)? {
                return Ok(Verdict::fail("w* is not a limiting normal of D at the base point"));
            }
        }
        CertificateKind::LinMK0 | CertificateKind::LinMFull => {
            if cert.kind == CertificateKind::LinMK0 && cert.k != 0 {
                return Ok(Verdict::fail("k0 certificate with k > 0"));
            }
            let mut t: UnionCone = prob.tangent_d().clone();
            for (l, u) in cert.u_list.iter().enumerate() {
                let pu = prob.jac.apply(u);
                if !t.contains(&pu) {
                    return Ok(Verdict::fail(format!(
                        "u_{} is not in the linearized tangent cone",
                        l + 1
                    )));
                }
                if !dot(&prob.grad_f, u).is_zero() {
                    return Ok(Verdict::fail(format!("u_{} is not critical", l + 1)));
                }
                if is_in_lsp(&t, &pu)? {
                    return Ok(Verdict::fail(format!(
                        "image of u_{} lies in the lineality subspace",
                        l + 1
                    )));
                }
                t = t.tangent_cone(&pu)?;
            }
            if !t.contains(&cert.w) {
                return Ok(Verdict::fail("w is not in the tangent cone T^k"));
            }
            if !t.regular_normal(&cert.w)?.contains(&cert.w_star) {
                return Ok(Verdict::fail("w* is not a regular normal of T^k at w"));
            }
            if !in_limiting(prob, &cert.w_star)? {
                return Ok(Verdict::fail("w* is not a limiting normal of D at the base point"));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Certificates for the plain checks, for the command-line front end.
pub fn s_certificate(prob: &LinearizedProblem) -> Result<Option<StationarityCertificate>> {
    Ok(check_s(prob)?
        .map(|w_star| StationarityCertificate::simple(CertificateKind::S, prob, rational::zeros(prob.dim_s()), w_star)))
}

pub fn m_certificate(prob: &LinearizedProblem) -> Result<Option<StationarityCertificate>> {
    Ok(check_m(prob)?
        .map(|m| StationarityCertificate::simple(CertificateKind::M, prob, rational::zeros(prob.dim_s()), m.w_star)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::vec_i;
    use crate::stationarity::examples::*;

    #[test]
    fn search_examples() {
        let c = lin_m_search(&complementarity(&[0, 0])).unwrap();
        assert_eq!(
            (c.k, c.w.clone(), c.w_star.clone()),
            (0, vec_i(&[0, 0]), vec_i(&[0, 0]))
        );
        assert_eq!(lin_m_search(&complementarity(&[0, -1])), Err(Error::NotBStationary));
        let prob = diagonal_complementarity();
        let c = lin_m_search(&prob).unwrap();
        assert_eq!(c.k, 0);
        assert!(verify_certificate(&prob, &c).unwrap().ok);
        assert_eq!(lin_m_search(&halfline(1)), Err(Error::NotBStationary));
    }

    #[test]
    fn next_linearization_examples() {
        let prob = complementarity(&[0, 0]);
        let same = next_linearization(&prob, &vec_i(&[0, 0])).unwrap();
        assert_eq!(same.tangent_d(), prob.tangent_d());
        let line = next_linearization(&prob, &vec_i(&[1, 0])).unwrap();
        let expected = crate::ConvexCone::from_constraints(2, &[], &[vec_i(&[0, 1])]).unwrap();
        assert_eq!(line.tangent_d(), &UnionCone::single(expected));
        assert_eq!(next_linearization(&prob, &vec_i(&[1, 1])), Err(Error::NotCritical));
    }

    #[test]
    fn verify_examples() {
        let prob = complementarity(&[0, -1]);
        let mut cert = StationarityCertificate::simple(CertificateKind::LinMK0, &prob, vec_i(&[1, 0]), vec_i(&[0, 1]));
        assert!(verify_certificate(&prob, &cert).unwrap().ok);
        cert.w_star = vec_i(&[0, -1]);
        let v = verify_certificate(&prob, &cert).unwrap();
        assert!(!v.ok);
        assert!(v.reason.unwrap().contains("residual"));
        let p2 = diagonal_complementarity();
        let c = lin_m_search(&p2).unwrap();
        let mut bad = c.clone();
        bad.w = vec_i(&[1, 1]);
        assert!(!verify_certificate(&p2, &bad).unwrap().ok);
    }
}
