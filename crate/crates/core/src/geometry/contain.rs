//! Exact containment of a convex polyhedron in a finite union of polyhedra.

use super::union::UnionSet;
use crate::kernel::lp::{self, Constraints, LpOutcome};
use crate::kernel::polyhedron::ConvexPolyhedron;
use crate::kernel::rational::{self, dot, Vector, Q};
use crate::{Error, Result};

/// Decide `P ⊆ S` by recursive subdivision.
///
/// For the first piece `T` of `S`, `P \ T` is covered by the sub-pieces
/// `P ∩ {a_1·x ≤ b_1} ∩ … ∩ {a_{j−1}·x ≤ b_{j−1}} ∩ {a_j·x ≥ b_j}`. A sub-piece
/// with points strictly beyond `a_j·x = b_j` is the closure of its part outside
/// `T`, so it must be covered by the remaining pieces.
pub fn union_contains(p: &ConvexPolyhedron, s: &UnionSet) -> Result<bool> {
    if p.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: p.dim(),
        });
    }
    if p.is_empty() {
        return Ok(true);
    }
    let targets: Vec<Vec<(Vector, Q)>> = s.pieces().iter().map(rows_of).collect();
    Ok(covered(&p.constraints(), &targets))
}

/// H-representation of a polyhedron with equalities split into two inequalities.
pub(crate) fn rows_of(p: &ConvexPolyhedron) -> Vec<(Vector, Q)> {
    let mut rows = p.ineqs();
    for (e, c) in p.eqs() {
        rows.push((rational::neg(&e), -c.clone()));
        rows.push((e, c));
    }
    rows
}

pub(crate) fn covered(acc: &Constraints, targets: &[Vec<(Vector, Q)>]) -> bool {
    if !lp::is_feasible(acc) {
        return true;
    }
    let Some((first, rest)) = targets.split_first() else {
        return false;
    };
    let mut cur = acc.clone();
    for (a, b) in first {
        let beyond = match lp::maximize(&cur, a) {
            LpOutcome::Infeasible => return true,
            LpOutcome::Unbounded { .. } => true,
            LpOutcome::Optimal { value, .. } => value > *b,
        };
        if beyond {
            let mut outside = cur.clone();
            outside.push_le(rational::neg(a), -b.clone());
            if !covered(&outside, rest) {
                return false;
            }
        }
        cur.push_le(a.clone(), b.clone());
    }
    true
}

/// `{z : a·z ≤ a·v for facets a, e·z = e·v}`: the piece translated by `v`.
pub(crate) fn translated(c: &crate::ConvexCone, v: &[Q]) -> Constraints {
    let mut out = Constraints::new(c.dim());
    for a in c.ineqs() {
        out.push_le(a.clone(), dot(a, v));
    }
    for e in c.eqs() {
        out.push_eq(e.clone(), dot(e, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::cone::ConvexCone;
    use crate::kernel::rational::vec_i;

    fn axes() -> UnionSet {
        let a = ConvexCone::from_generators(2, &[vec_i(&[1, 0])], &[]).unwrap();
        let b = ConvexCone::from_generators(2, &[vec_i(&[0, 1])], &[]).unwrap();
        UnionSet::new(
            2,
            vec![ConvexPolyhedron::from_cone(&a), ConvexPolyhedron::from_cone(&b)],
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let p = ConvexPolyhedron::from_cone(&ConvexCone::from_generators(2, &[vec_i(&[1, 1])], &[]).unwrap());
        let single = UnionSet::new(2, vec![p.clone()]).unwrap();
        assert!(union_contains(&p, &single).unwrap());
        assert!(!union_contains(&p, &axes()).unwrap());
        let origin = ConvexPolyhedron::from_cone(&ConvexCone::zero(2));
        assert!(union_contains(&origin, &axes()).unwrap());
    }

    #[test]
    fn needs_two_pieces() {
        // ℝ = (−∞, 1] ∪ [0, ∞) but not (−∞, 0] ∪ [1, ∞).
        let line = ConvexPolyhedron::from_constraints(&Constraints::new(1)).unwrap();
        let half = |a: i64, b: i64| {
            ConvexPolyhedron::from_constraints(&Constraints::new(1).le(vec_i(&[a]), crate::kernel::rational::int(b)))
                .unwrap()
        };
        let s = UnionSet::new(1, vec![half(1, 1), half(-1, 0)]).unwrap();
        assert!(union_contains(&line, &s).unwrap());
        let gap = UnionSet::new(1, vec![half(1, 0), half(-1, -1)]).unwrap();
        assert!(!union_contains(&line, &gap).unwrap());
    }
}
