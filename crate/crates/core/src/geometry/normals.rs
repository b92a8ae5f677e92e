//! Tangent, regular normal, limiting normal and critical cones of unions.

use super::cells::cells;
use super::union::{UnionCone, UnionSet};
use crate::kernel::cone::ConvexCone;
use crate::kernel::rational::{self, Vector, Q};
use crate::{Error, Result};

pub fn tangent_cone(s: &UnionSet, z: &[Q]) -> Result<UnionCone> {
    s.tangent_cone(z)
}

/// `N̂_S(z) = T_S(z)°`.
pub fn regular_normal_cone(s: &UnionSet, z: &[Q]) -> Result<ConvexCone> {
    let t = s.tangent_cone(z)?;
    t.regular_normal(&rational::zeros(s.dim()))
}

/// `N_S(z) = ∪_{w ∈ T} N̂_T(w)` with `T = T_S(z)`.
pub fn limiting_normal_cone(s: &UnionSet, z: &[Q]) -> Result<UnionCone> {
    limiting_at_origin(&s.tangent_cone(z)?)
}

/// `N_T(0)` for a cone union `T`, evaluated on the cells of its arrangement.
pub fn limiting_at_origin(t: &UnionCone) -> Result<UnionCone> {
    if t.is_empty() {
        return Ok(UnionCone::empty(t.dim()));
    }
    let pieces = cells(t)?
        .iter()
        .map(|c| t.regular_normal(&c.point))
        .collect::<Result<Vec<_>>>()?;
    UnionCone::new(t.dim(), pieces)
}

/// `N̂_T(0) ∪ ∪_{w ≠ 0} N_T(w)`, where `N_T(w) = N_{T_T(w)}(0)` for cone unions
/// and `w` ranges over one point per nonzero cell.
pub fn limiting_via_tangent_cells(t: &UnionCone) -> Result<UnionCone> {
    let n = t.dim();
    if t.is_empty() {
        return Ok(UnionCone::empty(n));
    }
    let mut pieces = vec![t.regular_normal(&rational::zeros(n))?];
    for c in cells(t)? {
        if rational::is_zero(&c.point) {
            continue;
        }
        pieces.extend(limiting_at_origin(&t.tangent_cone(&c.point)?)?.pieces().iter().cloned());
    }
    UnionCone::new(n, pieces)
}

/// `T⁰ = T_D(ȳ)`, `T^k = T_{T^{k−1}}(v_k)`; empty once some `v_k ∉ T^{k−1}`.
pub fn kth_order_tangent(d: &UnionSet, y: &[Q], directions: &[Vector]) -> Result<UnionCone> {
    let mut t = d.tangent_cone(y)?;
    for v in directions {
        if v.len() != d.dim() {
            return Err(Error::DimensionMismatch {
                expected: d.dim(),
                found: v.len(),
            });
        }
        if !t.contains(v) {
            return Ok(UnionCone::empty(d.dim()));
        }
        t = t.tangent_cone(v)?;
    }
    Ok(t)
}

/// `K_S(z, z*) = T_S(z) ∩ [z*]^⊥` for a regular normal `z*`.
pub fn critical_cone(s: &UnionSet, z: &[Q], z_star: &[Q]) -> Result<UnionCone> {
    if z_star.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: z_star.len(),
        });
    }
    let t = s.tangent_cone(z)?;
    if !t.regular_normal(&rational::zeros(s.dim()))?.contains(z_star) {
        return Err(Error::NotRegularNormal);
    }
    t.orthogonal_slice(z_star)
}
