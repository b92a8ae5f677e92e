//! The largest subspace `L` with `C + L ⊆ C` for a cone union `C`.

use super::contain::{covered, rows_of, translated};
use super::union::UnionCone;
use crate::kernel::matrix::Subspace;
use crate::kernel::rational::{self, Vector, Q};
use crate::{Error, Result};

/// Whether `C + t·v ⊆ C` for all real `t`.
///
/// For cones it suffices that `C + v ⊆ C` and `C − v ⊆ C`; each is decided
/// piecewise by exact union containment of the translated piece.
pub fn is_in_lsp(c: &UnionCone, v: &[Q]) -> Result<bool> {
    if v.len() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: c.dim(),
            found: v.len(),
        });
    }
    if rational::is_zero(v) {
        return Ok(true);
    }
    let minus = rational::neg(v);
    // Cheap necessary conditions first: 0 ± v and g ± v lie in C for every
    // generator g of every piece.
    if !c.contains(v) || !c.contains(&minus) {
        return Ok(false);
    }
    for piece in c.pieces() {
        for g in piece.rays().iter().chain(piece.lineality()) {
            if !c.contains(&rational::add(g, v)) || !c.contains(&rational::sub(g, v)) {
                return Ok(false);
            }
        }
    }
    let targets: Vec<_> = c.to_union_set().pieces().iter().map(rows_of).collect();
    for piece in c.pieces() {
        for shift in [v, minus.as_slice()] {
            if !covered(&translated(piece, shift), &targets) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A subspace contained in `Lsp(C)`; exact when `C` is convex.
///
/// Candidates are the generators of `C_i ∩ (−C_j)` over all piece pairs and
/// their pairwise sums. Candidates passing [`is_in_lsp`] span the result.
pub fn lsp_under_approx(c: &UnionCone) -> Result<Subspace> {
    let n = c.dim();
    let mut base: Vec<Vector> = Vec::new();
    for a in c.pieces() {
        for b in c.pieces() {
            let k = a.intersect(&b.negated())?;
            base.extend(k.rays().iter().cloned());
            base.extend(k.lineality().iter().cloned());
        }
    }
    let mut base: Vec<Vector> = base.iter().map(|v| rational::primitive(v)).collect();
    base.sort();
    base.dedup();
    let mut candidates = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            candidates.push(rational::add(&base[i], &base[j]));
        }
    }
    // Lsp is symmetric, so only directions up to sign matter.
    let mut candidates: Vec<Vector> = candidates.iter().map(|v| rational::primitive_unsigned(v)).collect();
    candidates.sort();
    candidates.dedup();
    let mut accepted: Vec<Vector> = Vec::new();
    let mut span = Subspace::span(n, &accepted);
    for v in candidates {
        if span.contains(&v) {
            continue;
        }
        if is_in_lsp(c, &v)? {
            accepted.push(v);
            span = Subspace::span(n, &accepted);
        }
    }
    Ok(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::cone::ConvexCone;
    use crate::kernel::rational::vec_i;

    fn line(v: &[i64]) -> ConvexCone {
        ConvexCone::from_generators(2, &[], &[vec_i(v)]).unwrap()
    }

    #[test]
    fn membership_examples() {
        let axes = UnionCone::new(2, vec![line(&[1, 0]), line(&[0, 1])]).unwrap();
        assert!(!is_in_lsp(&axes, &vec_i(&[1, 0])).unwrap());
        assert!(is_in_lsp(&axes, &vec_i(&[0, 0])).unwrap());
        let half = UnionCone::single(ConvexCone::from_constraints(2, &[vec_i(&[0, 1])], &[]).unwrap());
        assert!(is_in_lsp(&half, &vec_i(&[1, 0])).unwrap());
        assert!(!is_in_lsp(&half, &vec_i(&[0, 1])).unwrap());
    }

    #[test]
    fn under_approx_examples() {
        let half = ConvexCone::from_constraints(2, &[vec_i(&[0, 1])], &[]).unwrap();
        let l = lsp_under_approx(&UnionCone::single(half.clone())).unwrap();
        assert_eq!(l.basis(), half.lineality());
        let axes = UnionCone::new(2, vec![line(&[1, 0]), line(&[0, 1])]).unwrap();
        assert_eq!(lsp_under_approx(&axes).unwrap().rank(), 0);
        let neg = ConvexCone::from_constraints(2, &[vec_i(&[1, 0]), vec_i(&[0, 1])], &[]).unwrap();
        let both = UnionCone::new(2, vec![neg.clone(), neg.polar()]).unwrap();
        assert_eq!(lsp_under_approx(&both).unwrap().rank(), 0);
        // A union whose Lsp is larger than every piece's lineality: {x ≤ 0} ∪ {x ≥ 0} in ℝ².
        let l1 = ConvexCone::from_constraints(2, &[vec_i(&[1, 0])], &[]).unwrap();
        let l2 = ConvexCone::from_constraints(2, &[vec_i(&[-1, 0])], &[]).unwrap();
        let whole = UnionCone::new(2, vec![l1, l2]).unwrap();
        assert_eq!(lsp_under_approx(&whole).unwrap().rank(), 2);
    }
}
