//! Tangent and regular normal cones of the graph of `N̂_Γ` at `(ȳ, ȳ*)`.

use num_traits::One;

use super::condition::MultiplierConstancy;
use super::instance::{critical_cone_gamma, directional_multipliers, MpecInstance};
use crate::geometry::UnionCone;
use crate::kernel::lp::{self, Constraints};
use crate::kernel::matrix::Matrix;
use crate::kernel::rational::{self, dot, Vector, Q};
use crate::{ConvexCone, Error, Result};

fn concat(a: &[Q], b: &[Q]) -> Vector {
    let mut v = a.to_vec();
    v.extend(b.iter().cloned());
    v
}

/// `(v, v*) ∈ T_{Gr N̂_Γ}(ȳ, ȳ*)`, witnessed by `λ ∈ Λ̄(v)` with
/// `v* − ∇²(λᵀg)(ȳ)v ∈ N_{K̄_Γ}(v)`.
pub fn graph_tangent_membership(inst: &MpecInstance, v: &[Q], v_star: &[Q]) -> Result<Option<Vector>> {
    let m = inst.m;
    for x in [v, v_star] {
        if x.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: x.len(),
            });
        }
    }
    let k = critical_cone_gamma(inst)?;
    if !k.contains(v) {
        return Ok(None);
    }
    let face = directional_multipliers(inst, v)?;
    let normal = k.normal_at(v)?;
    // Columns of the map λ ↦ Σ λ_i ∇²g_i v.
    let hv: Vec<Vector> = inst.hess_g.iter().map(|h| h.apply(v)).collect();
    let mut c: Constraints = face.constraints();
    let row = |a: &Vector| -> Vector { hv.iter().map(|col| -dot(a, col)).collect() };
    for a in normal.ineqs() {
        c.push_le(row(a), -dot(a, v_star));
    }
    for e in normal.eqs() {
        c.push_eq(row(e), -dot(e, v_star));
    }
    Ok(lp::feasible_point(&c))
}

fn require_certified(cond: &MultiplierConstancy) -> Result<()> {
    match cond {
        MultiplierConstancy::Violated { .. } => Err(Error::ConstancyViolated),
        _ => Ok(()),
    }
}

/// `T_{Gr N̂_Γ}(ȳ, ȳ*) = ⋃_F {(v, ∇²(λ̃ᵀg)v + z*) : v ∈ F, z* ∈ K̄_Γ° ∩ F^⊥}`
/// over the faces `F` of `K̄_Γ`.
pub fn graph_tangent_pieces(inst: &MpecInstance, lambda: &[Q], cond: &MultiplierConstancy) -> Result<UnionCone> {
    require_certified(cond)?;
    if lambda.len() != inst.q {
        return Err(Error::DimensionMismatch {
            expected: inst.q,
            found: lambda.len(),
        });
    }
    let m = inst.m;
    let h = inst.hessian_of(lambda);
    let k = critical_cone_gamma(inst)?;
    let polar = k.polar();
    let zero = rational::zeros(m);
    let mut pieces = Vec::new();
    for f in k.faces()? {
        let face_rays: Vec<Vector> = f.rays.iter().map(|&r| k.rays()[r].clone()).collect();
        let mut span = face_rays.clone();
        span.extend(k.lineality().iter().cloned());
        let n = polar.with_rows(&[], &span)?;
        let mut rays: Vec<Vector> = face_rays.iter().map(|r| concat(r, &h.apply(r))).collect();
        rays.extend(n.rays().iter().map(|r| concat(&zero, r)));
        let mut lin: Vec<Vector> = k.lineality().iter().map(|l| concat(l, &h.apply(l))).collect();
        lin.extend(n.lineality().iter().map(|l| concat(&zero, l)));
        pieces.push(ConvexCone::from_generators(2 * m, &rays, &lin)?);
    }
    UnionCone::new(2 * m, pieces)
}

/// `M(w*, w) = (w* + Hw, w)`.
fn shear(h: &Matrix) -> Matrix {
    let m = h.rows();
    let mut s = Matrix::identity(2 * m);
    for r in 0..m {
        for c in 0..m {
            s[(r, m + c)] = h[(r, c)].clone();
        }
    }
    s
}

/// `K_{K̄_Γ}(v̄, z̄*) = T_{K̄_Γ}(v̄) ∩ [z̄*]^⊥`.
pub(crate) fn critical_of_critical(k: &ConvexCone, v: &[Q], z_star: &[Q]) -> Result<ConvexCone> {
    k.tangent_at(v)?.orthogonal_slice(z_star)
}

/// Regular normal cone of the graph tangent cone at `(v̄, v̄*)`, as pairs
/// `(w*, w)` with `(w* + ∇²(λ̃ᵀg)w, w) ∈ K_crit° × K_crit`.
pub fn graph_normal_regular(
    inst: &MpecInstance,
    lambda: &[Q],
    cond: &MultiplierConstancy,
    v_bar: &[Q],
    v_bar_star: &[Q],
) -> Result<ConvexCone> {
    require_certified(cond)?;
    let m = inst.m;
    if v_bar.len() != m || v_bar_star.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: if v_bar.len() != m {
                v_bar.len()
            } else {
                v_bar_star.len()
            },
        });
    }
    let h = inst.hessian_of(lambda);
    let k = critical_cone_gamma(inst)?;
    if !k.contains(v_bar) {
        return Err(Error::NotTangent);
    }
    let z_bar = rational::sub(v_bar_star, &h.apply(v_bar));
    if !k.normal_at(v_bar)?.contains(&z_bar) {
        return Err(Error::NotTangent);
    }
    let kc = critical_of_critical(&k, v_bar, &z_bar)?;
    kc.polar().product(&kc).map_preimage(&shear(&h))
}

/// Embed `M(v)` as a conic constraint set in `ℝ^{2m+p}`:
/// `T_{Gr N̂_Γ}(ȳ, ȳ*) × T_{ℝ^p₋}(G(x̄, ȳ))`.
pub fn lifted_tangent(inst: &MpecInstance, lambda: &[Q], cond: &MultiplierConstancy) -> Result<UnionCone> {
    let graph = graph_tangent_pieces(inst, lambda, cond)?;
    let p = inst.p;
    let active: Vec<Vector> = inst.active_big_g().into_iter().map(|i| rational::unit(p, i)).collect();
    let t = ConvexCone::from_constraints(p, &active, &[])?;
    let pieces = graph.pieces().iter().map(|c| c.product(&t)).collect();
    UnionCone::new(2 * inst.m + p, pieces)
}

/// `∇P̂ = [(0 I); −∇φ; ∇G]`, of size `(2m+p) × (n+m)`.
pub fn lifted_jacobian(inst: &MpecInstance) -> Matrix {
    let (n, m, p) = (inst.n, inst.m, inst.p);
    let mut j = Matrix::zeros(2 * m + p, n + m);
    for i in 0..m {
        j[(i, n + i)] = Q::one();
        for c in 0..n + m {
            j[(m + i, c)] = -inst.jac_phi[(i, c)].clone();
        }
    }
    for i in 0..p {
        for c in 0..n + m {
            j[(2 * m + i, c)] = inst.jac_big_g[(i, c)].clone();
        }
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, vec_i};
    use crate::mpec::condition::{check_multiplier_constancy, DEFAULT_SAMPLES};
    use crate::mpec::examples::*;
    use crate::mpec::instance::cubic_example;

    fn cubic() -> (MpecInstance, MultiplierConstancy) {
        let inst = cubic_example(&int(1)).unwrap();
        let cond = check_multiplier_constancy(&inst, DEFAULT_SAMPLES).unwrap();
        (inst, cond)
    }

    #[test]
    fn membership_examples() {
        let (inst, _) = cubic();
        let w = graph_tangent_membership(&inst, &vec_i(&[0, 0, 0]), &vec_i(&[0, 0, 1])).unwrap();
        assert_eq!(w, Some(vec_i(&[0, 0])));
        let w = graph_tangent_membership(&inst, &vec_i(&[0, 0, -1]), &vec_i(&[0, 0, 0])).unwrap();
        assert_eq!(w, Some(vec_i(&[0, 0])));
        assert_eq!(
            graph_tangent_membership(&inst, &vec_i(&[0, 0, 1]), &vec_i(&[0, 0, 0])).unwrap(),
            None
        );
        assert_eq!(
            graph_tangent_membership(&inst, &vec_i(&[0, 0, -1]), &vec_i(&[0, 0, 1])).unwrap(),
            None
        );
    }

    #[test]
    fn pieces_of_cubic_example() {
        let (inst, cond) = cubic();
        let t = graph_tangent_pieces(&inst, &vec_i(&[0, 0]), &cond).unwrap();
        // F = K̄_Γ gives ℝ²×ℝ₋ × {0}; F = the plane gives ℝ²×{0} × {0}²×ℝ₊.
        let whole = ConvexCone::from_constraints(
            6,
            &[vec_i(&[0, 0, 1, 0, 0, 0])],
            &[
                vec_i(&[0, 0, 0, 1, 0, 0]),
                vec_i(&[0, 0, 0, 0, 1, 0]),
                vec_i(&[0, 0, 0, 0, 0, 1]),
            ],
        )
        .unwrap();
        let plane = ConvexCone::from_constraints(
            6,
            &[vec_i(&[0, 0, 0, 0, 0, -1])],
            &[
                vec_i(&[0, 0, 1, 0, 0, 0]),
                vec_i(&[0, 0, 0, 1, 0, 0]),
                vec_i(&[0, 0, 0, 0, 1, 0]),
            ],
        )
        .unwrap();
        assert_eq!(t, UnionCone::new(6, vec![whole, plane]).unwrap());
        for piece in t.pieces() {
            let p = piece.ri_point();
            assert!(graph_tangent_membership(&inst, &p[..3], &p[3..]).unwrap().is_some());
        }
    }

    #[test]
    fn pieces_for_extreme_critical_cones() {
        // K̄_Γ = {0}×ℝ: one face, N = ℝ×{0}; the Hessian shears the v-part.
        let sq = square_term();
        let cond = check_multiplier_constancy(&sq, DEFAULT_SAMPLES).unwrap();
        let t = graph_tangent_pieces(&sq, &vec_i(&[1, 0]), &cond).unwrap();
        let expected = ConvexCone::from_generators(4, &[], &[vec_i(&[0, 1, 0, 2]), vec_i(&[0, 0, 1, 0])]).unwrap();
        assert_eq!(t, UnionCone::single(expected));
        let violated = MultiplierConstancy::Violated {
            v1: vec_i(&[0, 1]),
            v2: vec_i(&[0, -1]),
        };
        assert_eq!(
            graph_tangent_pieces(&sq, &vec_i(&[1, 0]), &violated),
            Err(Error::ConstancyViolated)
        );
    }

    #[test]
    fn normal_regular_examples() {
        let (inst, cond) = cubic();
        let z = vec_i(&[0, 0, 0]);
        let n = graph_normal_regular(&inst, &vec_i(&[0, 0]), &cond, &z, &z).unwrap();
        let k = critical_cone_gamma(&inst).unwrap();
        assert_eq!(n, k.polar().product(&k));
        // v̄ in the interior: K_crit = ℝ³, pairs {0} × ℝ³.
        let v = vec_i(&[1, 1, -1]);
        let n = graph_normal_regular(&inst, &vec_i(&[0, 0]), &cond, &v, &z).unwrap();
        assert_eq!(n, ConvexCone::zero(3).product(&ConvexCone::full(3)));
        assert_eq!(
            graph_normal_regular(&inst, &vec_i(&[0, 0]), &cond, &z, &vec_i(&[0, 0, -1])),
            Err(Error::NotTangent)
        );
    }

    #[test]
    fn normal_regular_matches_polar_of_pieces() {
        for inst in [cubic_example(&int(1)).unwrap(), square_term()] {
            let cond = check_multiplier_constancy(&inst, DEFAULT_SAMPLES).unwrap();
            let lambda = cond.lambda_tilde().unwrap();
            let t = graph_tangent_pieces(&inst, &lambda, &cond).unwrap();
            for piece in t.pieces() {
                for f in piece.faces().unwrap() {
                    let p = &f.ri_point;
                    let m = inst.m;
                    let direct = t.regular_normal(p).unwrap();
                    let formula = graph_normal_regular(&inst, &lambda, &cond, &p[..m], &p[m..]).unwrap();
                    assert_eq!(direct, formula, "at {p:?}");
                }
            }
        }
    }
}
