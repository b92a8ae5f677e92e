//! Relatively open cells of the hyperplane arrangement induced by a cone union.
//!
//! Every piece facet normal and every piece equality defines a hyperplane
//! through the origin. Restricted to each piece, the arrangement decomposes the
//! union into finitely many relatively open convex cones (cells). Membership in
//! pieces, active facets and therefore tangent and regular normal cones of the
//! union are constant on each cell.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::union::UnionCone;
use crate::kernel::cone::ConvexCone;
use crate::kernel::limits;
use crate::kernel::rational::{self, dot, lex_cmp, primitive_unsigned, Vector};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Closure of the cell.
    pub closure: ConvexCone,
    /// Signs of the arrangement hyperplanes on the cell.
    pub signs: Vec<i8>,
    /// A point of the relatively open cell.
    pub point: Vector,
    pub dim: usize,
}

/// The arrangement hyperplanes: piece facet normals and equalities, up to sign.
pub fn hyperplanes(t: &UnionCone) -> Vec<Vector> {
    let mut hs: Vec<Vector> = t
        .pieces()
        .iter()
        .flat_map(|p| p.ineqs().iter().chain(p.eqs()))
        .map(|h| primitive_unsigned(h))
        .collect();
    hs.sort();
    hs.dedup();
    hs
}

fn sign(x: &crate::Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Signs of the generator values of `h` over `k`: (some negative, some positive).
fn generator_signs(k: &ConvexCone, h: &[crate::Q]) -> (bool, bool) {
    let mut neg = false;
    let mut pos = false;
    for r in k.rays() {
        match sign(&dot(h, r)) {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    if k.lineality().iter().any(|l| !dot(h, l).is_zero()) {
        neg = true;
        pos = true;
    }
    (neg, pos)
}

/// Split one closed cone by the hyperplanes, keeping relatively open parts.
fn split_piece(piece: &ConvexCone, hs: &[Vector]) -> Result<Vec<(ConvexCone, Vec<Vector>)>> {
    // Each candidate: closure and strict rows `a` (meaning `a·z < 0` on the cell).
    let mut cells: Vec<(ConvexCone, Vec<Vector>)> = vec![(piece.clone(), Vec::new())];
    for h in hs {
        let mut next = Vec::new();
        for (k, strict) in cells {
            let (neg, pos) = generator_signs(&k, h);
            if !neg && !pos {
                next.push((k, strict));
                continue;
            }
            let nh = rational::neg(h);
            let mut candidates = vec![(k.orthogonal_slice(h)?, strict.clone())];
            if neg {
                let c = if pos {
                    k.with_rows(std::slice::from_ref(h), &[])?
                } else {
                    k.clone()
                };
                let mut s = strict.clone();
                s.push(h.clone());
                candidates.push((c, s));
            }
            if pos {
                let c = if neg {
                    k.with_rows(std::slice::from_ref(&nh), &[])?
                } else {
                    k.clone()
                };
                let mut s = strict.clone();
                s.push(nh);
                candidates.push((c, s));
            }
            for (c, s) in candidates {
                let open_nonempty = s.iter().all(|a| c.rays().iter().any(|r| dot(a, r).is_negative()));
                if open_nonempty {
                    next.push((c, s));
                }
            }
        }
        limits::check_face_count(next.len())?;
        cells = next;
    }
    Ok(cells)
}

/// All cells of the union, deduplicated by sign vector and sorted by
/// (dimension, representative point) lexicographically.
pub fn cells(t: &UnionCone) -> Result<Vec<Cell>> {
    let hs = hyperplanes(t);
    let mut by_signs: BTreeMap<Vec<i8>, Cell> = BTreeMap::new();
    for piece in t.pieces() {
        for (closure, _) in split_piece(piece, &hs)? {
            let point = closure.ri_point();
            let signs: Vec<i8> = hs.iter().map(|h| sign(&dot(h, &point))).collect();
            let dim = closure.span_dim();
            by_signs.entry(signs.clone()).or_insert(Cell {
                closure,
                signs,
                point,
                dim,
            });
        }
        limits::check_face_count(by_signs.len())?;
    }
    let mut out: Vec<Cell> = by_signs.into_values().collect();
    out.sort_by(|a, b| match a.dim.cmp(&b.dim) {
        Ordering::Equal => lex_cmp(&a.point, &b.point),
        o => o,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::vec_i;

    #[test]
    fn complementarity_cells() {
        let a = ConvexCone::from_generators(2, &[vec_i(&[1, 0])], &[]).unwrap();
        let b = ConvexCone::from_generators(2, &[vec_i(&[0, 1])], &[]).unwrap();
        let t = UnionCone::new(2, vec![a, b]).unwrap();
        let c = cells(&t).unwrap();
        let points: Vec<Vector> = c.iter().map(|c| c.point.clone()).collect();
        assert_eq!(points, vec![vec_i(&[0, 0]), vec_i(&[0, 1]), vec_i(&[1, 0])]);
    }

    #[test]
    fn overlapping_pieces() {
        // {x ≤ 0} ∪ ℝ²₊: the boundary line x = 0 is cut by the axis y = 0.
        let h = ConvexCone::from_constraints(2, &[vec_i(&[1, 0])], &[]).unwrap();
        let q = ConvexCone::from_constraints(2, &[vec_i(&[-1, 0]), vec_i(&[0, -1])], &[]).unwrap();
        let t = UnionCone::new(2, vec![h, q]).unwrap();
        let c = cells(&t).unwrap();
        assert!(c.iter().any(|c| c.point == vec_i(&[0, -1])));
        assert_eq!(c.iter().filter(|c| c.dim == 2).count(), 3);
        assert_eq!(c.len(), 8);
    }
}
