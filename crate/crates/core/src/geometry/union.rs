use crate::kernel::cone::ConvexCone;
use crate::kernel::polyhedron::ConvexPolyhedron;
use crate::kernel::rational::{Vector, Q};
use crate::{Error, Result};

/// A finite union of convex polyhedra in canonical form: empty pieces dropped,
/// pieces contained in other pieces pruned, the rest sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnionSet {
    dim: usize,
    pieces: Vec<ConvexPolyhedron>,
}

/// A finite union of convex polyhedral cones, canonical as [`UnionSet`].
/// The union with no pieces is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnionCone {
    dim: usize,
    pieces: Vec<ConvexCone>,
}

fn poly_subset(p: &ConvexPolyhedron, q: &ConvexPolyhedron) -> bool {
    p.vertices().iter().all(|v| q.contains(v)) && {
        let rec = q.recession_cone();
        p.recession_cone().is_subset_of(&rec)
    }
}

fn check_dims(dim: usize, dims: impl Iterator<Item = usize>) -> Result<()> {
    for d in dims {
        if d != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: d,
            });
        }
    }
    Ok(())
}

fn prune<T: Clone + Ord>(mut pieces: Vec<T>, subset: impl Fn(&T, &T) -> bool) -> Vec<T> {
    pieces.sort();
    pieces.dedup();
    let keep: Vec<bool> = (0..pieces.len())
        .map(|i| !(0..pieces.len()).any(|j| j != i && subset(&pieces[i], &pieces[j])))
        .collect();
    pieces
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

impl UnionSet {
    pub fn new(dim: usize, pieces: Vec<ConvexPolyhedron>) -> Result<Self> {
        check_dims(dim, pieces.iter().map(|p| p.dim()))?;
        let pieces: Vec<ConvexPolyhedron> = pieces.into_iter().filter(|p| !p.is_empty()).collect();
        Ok(UnionSet {
            dim,
            pieces: prune(pieces, poly_subset),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[ConvexPolyhedron] {
        &self.pieces
    }

    pub fn contains(&self, z: &[Q]) -> bool {
        self.pieces.iter().any(|p| p.contains(z))
    }

    /// Union of the tangent cones of the pieces containing `z`.
    pub fn tangent_cone(&self, z: &[Q]) -> Result<UnionCone> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        let pieces = self
            .pieces
            .iter()
            .filter(|p| p.contains(z))
            .map(|p| p.tangent_cone(z))
            .collect::<Result<Vec<_>>>()?;
        if pieces.is_empty() {
            return Err(Error::NotMember);
        }
        UnionCone::new(self.dim, pieces)
    }
}

impl UnionCone {
    pub fn new(dim: usize, pieces: Vec<ConvexCone>) -> Result<Self> {
        check_dims(dim, pieces.iter().map(|p| p.dim()))?;
        Ok(UnionCone {
            dim,
            pieces: prune(pieces, |a, b| a.is_subset_of(b)),
        })
    }

    pub fn single(c: ConvexCone) -> Self {
        UnionCone {
            dim: c.dim(),
            pieces: vec![c],
        }
    }

    pub fn empty(dim: usize) -> Self {
        UnionCone {
            dim,
            pieces: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &[ConvexCone] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, z: &[Q]) -> bool {
        self.pieces.iter().any(|p| p.contains(z))
    }

    /// The same set viewed as a union of polyhedra.
    pub fn to_union_set(&self) -> UnionSet {
        UnionSet {
            dim: self.dim,
            pieces: prune(
                self.pieces.iter().map(ConvexPolyhedron::from_cone).collect(),
                poly_subset,
            ),
        }
    }

    /// Tangent cone at a member `w`.
    pub fn tangent_cone(&self, w: &[Q]) -> Result<UnionCone> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.len(),
            });
        }
        let pieces = self
            .pieces
            .iter()
            .filter(|p| p.contains(w))
            .map(|p| p.tangent_at(w))
            .collect::<Result<Vec<_>>>()?;
        if pieces.is_empty() {
            return Err(Error::NotMember);
        }
        UnionCone::new(self.dim, pieces)
    }

    /// Regular normal cone at a member `w`: the polar of the tangent cone,
    /// i.e. the intersection of the piece polars.
    pub fn regular_normal(&self, w: &[Q]) -> Result<ConvexCone> {
        let t = self.tangent_cone(w)?;
        let mut rays: Vec<Vector> = Vec::new();
        let mut lin: Vec<Vector> = Vec::new();
        for p in &t.pieces {
            rays.extend(p.rays().iter().cloned());
            lin.extend(p.lineality().iter().cloned());
        }
        ConvexCone::from_constraints(self.dim, &rays, &lin)
    }

    /// Pieces intersected with the hyperplane `[v]^⊥`.
    pub fn orthogonal_slice(&self, v: &[Q]) -> Result<UnionCone> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.orthogonal_slice(v))
            .collect::<Result<Vec<_>>>()?;
        UnionCone::new(self.dim, pieces)
    }

    /// Piecewise linear preimage `{u : M u ∈ C}`.
    pub fn preimage(&self, m: &crate::Matrix) -> Result<UnionCone> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.map_preimage(m))
            .collect::<Result<Vec<_>>>()?;
        UnionCone::new(m.cols(), pieces)
    }

    /// Piecewise image `M C`.
    pub fn image(&self, m: &crate::Matrix) -> Result<UnionCone> {
        let pieces = self.pieces.iter().map(|p| p.map_image(m)).collect::<Result<Vec<_>>>()?;
        UnionCone::new(m.rows(), pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::vec_i;

    pub(crate) fn axis(dim: usize, i: usize) -> ConvexCone {
        let mut e = vec![Q::from_integer(0.into()); dim];
        e[i] = Q::from_integer(1.into());
        ConvexCone::from_generators(dim, &[e], &[]).unwrap()
    }

    #[test]
    fn canonical_pruning() {
        let orth = ConvexCone::from_constraints(2, &[vec_i(&[-1, 0]), vec_i(&[0, -1])], &[]).unwrap();
        let u = UnionCone::new(2, vec![axis(2, 0), orth.clone(), axis(2, 0)]).unwrap();
        assert_eq!(u.pieces(), &[orth]);
        let v = UnionCone::new(2, vec![axis(2, 1), axis(2, 0)]).unwrap();
        let w = UnionCone::new(2, vec![axis(2, 0), axis(2, 1)]).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn complementarity_tangents() {
        let c = UnionCone::new(2, vec![axis(2, 0), axis(2, 1)]).unwrap();
        let s = c.to_union_set();
        assert_eq!(s.tangent_cone(&vec_i(&[0, 0])).unwrap(), c);
        let line = ConvexCone::from_constraints(2, &[], &[vec_i(&[0, 1])]).unwrap();
        assert_eq!(s.tangent_cone(&vec_i(&[1, 0])).unwrap(), UnionCone::single(line));
        assert_eq!(s.tangent_cone(&vec_i(&[1, 1])), Err(Error::NotMember));
        let full = UnionSet::new(2, vec![ConvexPolyhedron::from_cone(&ConvexCone::full(2))]).unwrap();
        assert!(full.tangent_cone(&vec_i(&[3, -1])).unwrap().pieces()[0].is_full());
    }
}
