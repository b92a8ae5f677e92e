//! Convex polyhedral cones in double-description form.
//!
//! A [`ConvexCone`] is always stored canonically:
//!
//! * `eqs` is a basis of `span(C)^⊥` (RREF, primitive integer rows),
//! * `ineqs` are the facet normals, projected onto `span(C)`,
//! * `lineality` is a basis of `C ∩ (−C)` (RREF, primitive),
//! * `rays` are the extreme rays, projected onto the orthogonal complement
//!   of the lineality space.
//!
//! Rows and rays are primitive integer vectors sorted lexicographically. With
//! this normalization the polar cone is obtained by swapping `ineqs` with
//! `rays` and `eqs` with `lineality`, and cone equality is structural.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::limits;
use super::matrix::{self, Matrix, Subspace};
use super::rational::{self, dot, primitive, Vector, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvexCone {
    dim: usize,
    eqs: Vec<Vector>,
    ineqs: Vec<Vector>,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
}

/// A nonempty face `C ∩ {a_i·z = 0 : i ∈ active}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into the parent's canonical `ineqs`.
    pub active: Vec<usize>,
    /// Indices into the parent's canonical `rays` that lie in the face.
    pub rays: Vec<usize>,
    /// Dimension of the face (including the lineality space).
    pub dim: usize,
    /// Sum of the face's rays and of the parent's lineality basis.
    pub ri_point: Vector,
}

fn check_rows(dim: usize, rows: &[Vector]) -> Result<()> {
    match rows.iter().find(|r| r.len() != dim) {
        Some(r) => Err(Error::DimensionMismatch {
            expected: dim,
            found: r.len(),
        }),
        None => Ok(()),
    }
}

fn sorted_unique(mut v: Vec<Vector>) -> Vec<Vector> {
    v.sort();
    v.dedup();
    v
}

impl ConvexCone {
    /// `{z : a·z ≤ 0 for a in ineqs, e·z = 0 for e in eqs}`.
    pub fn from_constraints(dim: usize, ineqs: &[Vector], eqs: &[Vector]) -> Result<Self> {
        check_rows(dim, ineqs)?;
        check_rows(dim, eqs)?;
        let (rays, lineality) = double_description(dim, ineqs, eqs);
        Ok(Self::canonical(dim, ineqs, eqs, rays, lineality))
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(dim: usize, rays: &[Vector], lineality: &[Vector]) -> Result<Self> {
        Ok(Self::from_constraints(dim, rays, lineality)?.polar())
    }

    pub fn full(dim: usize) -> Self {
        Self::from_constraints(dim, &[], &[]).expect("no rows")
    }

    pub fn zero(dim: usize) -> Self {
        Self::full(dim).polar()
    }

    /// Build the canonical form from a valid H-description and a generating set
    /// whose lineality part is exact.
    fn canonical(dim: usize, ineqs: &[Vector], eqs: &[Vector], rays: Vec<Vector>, lineality: Vec<Vector>) -> Self {
        let lin = Subspace::span(dim, &lineality);
        let rays: Vec<Vector> = rays
            .iter()
            .map(|r| primitive(&lin.reject(r)))
            .filter(|r| !rational::is_zero(r))
            .collect();
        let rays = sorted_unique(rays);
        let mut span_gens = rays.clone();
        span_gens.extend(lin.basis().iter().cloned());
        let span = Subspace::span(dim, &span_gens);
        let span_dim = span.rank();
        let lin_dim = lin.rank();

        // Extreme rays: the face they span has dimension lin_dim + 1.
        let rays: Vec<Vector> = rays
            .iter()
            .filter(|r| {
                let mut tight: Vec<Vector> = ineqs.iter().filter(|a| dot(a, r).is_zero()).cloned().collect();
                tight.extend(eqs.iter().cloned());
                dim - matrix::rank(&tight, dim) == lin_dim + 1
            })
            .cloned()
            .collect();

        let mut facets = Vec::new();
        for a in ineqs {
            let a = primitive(&span.project(a));
            if rational::is_zero(&a) || !rays.iter().any(|r| dot(&a, r).is_negative()) {
                continue;
            }
            let mut tight: Vec<Vector> = rays.iter().filter(|r| dot(&a, r).is_zero()).cloned().collect();
            tight.extend(lin.basis().iter().cloned());
            if matrix::rank(&tight, dim) + 1 == span_dim {
                facets.push(a);
            }
        }
        ConvexCone {
            dim,
            eqs: span.orthogonal_complement().basis().to_vec(),
            ineqs: sorted_unique(facets),
            rays,
            lineality: lin.basis().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Facet normals `a` with `a·z ≤ 0`.
    pub fn ineqs(&self) -> &[Vector] {
        &self.ineqs
    }

    /// Basis of the orthogonal complement of the linear span.
    pub fn eqs(&self) -> &[Vector] {
        &self.eqs
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        self.dim - self.eqs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.lineality.len() == self.dim
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// `{z* : ⟨z*, z⟩ ≤ 0 for all z ∈ C}`.
    pub fn polar(&self) -> Self {
        ConvexCone {
            dim: self.dim,
            eqs: self.lineality.clone(),
            ineqs: self.rays.clone(),
            rays: self.ineqs.clone(),
            lineality: self.eqs.clone(),
        }
    }

    pub fn lineality_space(&self) -> Subspace {
        Subspace::span(self.dim, &self.lineality)
    }

    pub fn linear_span(&self) -> Subspace {
        Subspace::kernel_of(self.dim, &self.eqs)
    }

    pub fn contains(&self, z: &[Q]) -> bool {
        assert_eq!(z.len(), self.dim, "dimension mismatch");
        self.eqs.iter().all(|e| dot(e, z).is_zero()) && self.ineqs.iter().all(|a| !dot(a, z).is_positive())
    }

    /// Membership in the relative interior.
    pub fn contains_relint(&self, z: &[Q]) -> bool {
        self.eqs.iter().all(|e| dot(e, z).is_zero()) && self.ineqs.iter().all(|a| dot(a, z).is_negative())
    }

    pub fn is_subset_of(&self, other: &ConvexCone) -> bool {
        self.rays.iter().all(|r| other.contains(r))
            && self
                .lineality
                .iter()
                .all(|l| other.contains(l) && other.contains(&rational::neg(l)))
    }

    pub fn generators(&self) -> Vec<Vector> {
        let mut g = self.rays.clone();
        g.extend(self.lineality.iter().cloned());
        g.extend(self.lineality.iter().map(|l| rational::neg(l)));
        g
    }

    /// Sum of all rays and lineality basis vectors; a relative interior point.
    pub fn ri_point(&self) -> Vector {
        rational::sum(self.dim, self.rays.iter().chain(&self.lineality))
    }

    pub fn intersect(&self, other: &ConvexCone) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        Self::from_constraints(self.dim, &ineqs, &eqs)
    }

    /// Intersection with `{z : a·z ≤ 0}` and `{z : e·z = 0}` for extra rows.
    pub fn with_rows(&self, ineqs: &[Vector], eqs: &[Vector]) -> Result<Self> {
        let mut i = self.ineqs.clone();
        i.extend(ineqs.iter().cloned());
        let mut e = self.eqs.clone();
        e.extend(eqs.iter().cloned());
        Self::from_constraints(self.dim, &i, &e)
    }

    /// Intersection with the hyperplane `[v]^⊥`.
    pub fn orthogonal_slice(&self, v: &[Q]) -> Result<Self> {
        self.with_rows(&[], &[v.to_vec()])
    }

    /// `−C`.
    pub fn negated(&self) -> Self {
        let neg = |rows: &[Vector]| -> Vec<Vector> { sorted_unique(rows.iter().map(|r| rational::neg(r)).collect()) };
        ConvexCone {
            dim: self.dim,
            eqs: self.eqs.clone(),
            ineqs: neg(&self.ineqs),
            rays: neg(&self.rays),
            lineality: self.lineality.clone(),
        }
    }

    /// `M C`, computed on generators.
    pub fn map_image(&self, m: &Matrix) -> Result<Self> {
        if m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.cols(),
            });
        }
        let rays: Vec<Vector> = self.rays.iter().map(|r| m.apply(r)).collect();
        let lin: Vec<Vector> = self.lineality.iter().map(|l| m.apply(l)).collect();
        Self::from_generators(m.rows(), &rays, &lin)
    }

    /// `{u : M u ∈ C}`, computed on inequalities.
    pub fn map_preimage(&self, m: &Matrix) -> Result<Self> {
        if m.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        let ineqs: Vec<Vector> = self.ineqs.iter().map(|a| m.left_apply(a)).collect();
        let eqs: Vec<Vector> = self.eqs.iter().map(|e| m.left_apply(e)).collect();
        Self::from_constraints(m.cols(), &ineqs, &eqs)
    }

    /// `C × other` in the concatenated space.
    pub fn product(&self, other: &ConvexCone) -> Self {
        let n = self.dim + other.dim;
        let left = |v: &Vector| {
            let mut w = v.clone();
            w.extend(rational::zeros(other.dim));
            w
        };
        let right = |v: &Vector| {
            let mut w = rational::zeros(self.dim);
            w.extend(v.iter().cloned());
            w
        };
        let ineqs: Vec<Vector> = self
            .ineqs
            .iter()
            .map(left)
            .chain(other.ineqs.iter().map(right))
            .collect();
        let eqs: Vec<Vector> = self.eqs.iter().map(left).chain(other.eqs.iter().map(right)).collect();
        Self::from_constraints(n, &ineqs, &eqs).expect("consistent dimensions")
    }

    /// Tangent cone of `C` at a member `z`: the active facets relaxed.
    pub fn tangent_at(&self, z: &[Q]) -> Result<Self> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        if !self.contains(z) {
            return Err(Error::NotMember);
        }
        let active: Vec<Vector> = self.ineqs.iter().filter(|a| dot(a, z).is_zero()).cloned().collect();
        Self::from_constraints(self.dim, &active, &self.eqs)
    }

    /// Regular normal cone at a member `z`.
    pub fn normal_at(&self, z: &[Q]) -> Result<Self> {
        Ok(self.tangent_at(z)?.polar())
    }

    /// The face `C ∩ {a_i·z = 0 : i ∈ active}` as a cone.
    pub fn face_cone(&self, face: &Face) -> Self {
        let eqs: Vec<Vector> = face.active.iter().map(|&i| self.ineqs[i].clone()).collect();
        self.with_rows(&[], &eqs).expect("consistent dimensions")
    }

    /// Face containing `z` in its relative interior.
    pub fn face_of(&self, z: &[Q]) -> Option<Face> {
        if !self.contains(z) {
            return None;
        }
        let active: Vec<usize> = (0..self.ineqs.len())
            .filter(|&i| dot(&self.ineqs[i], z).is_zero())
            .collect();
        Some(self.face_from_active(active))
    }

    fn face_from_active(&self, active: Vec<usize>) -> Face {
        let rays: Vec<usize> = (0..self.rays.len())
            .filter(|&r| active.iter().all(|&i| dot(&self.ineqs[i], &self.rays[r]).is_zero()))
            .collect();
        let mut gens: Vec<Vector> = rays.iter().map(|&r| self.rays[r].clone()).collect();
        gens.extend(self.lineality.iter().cloned());
        let dim = matrix::rank(&gens, self.dim);
        let ri_point = rational::sum(self.dim, gens.iter());
        Face {
            active,
            rays,
            dim,
            ri_point,
        }
    }

    /// The complete face lattice, ordered lexicographically by active index set.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let tight: Vec<BTreeSet<usize>> = self
            .ineqs
            .iter()
            .map(|a| {
                (0..self.rays.len())
                    .filter(|&r| dot(a, &self.rays[r]).is_zero())
                    .collect()
            })
            .collect();
        let closure = |rays: &BTreeSet<usize>| -> Vec<usize> {
            (0..self.ineqs.len()).filter(|&i| rays.is_subset(&tight[i])).collect()
        };
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
        let mut queue = vec![(closure(&all), all)];
        while let Some((active, rays)) = queue.pop() {
            if seen.contains_key(&active) {
                continue;
            }
            for i in 0..self.ineqs.len() {
                if active.contains(&i) {
                    continue;
                }
                let sub: BTreeSet<usize> = rays.intersection(&tight[i]).copied().collect();
                let sub_active = closure(&sub);
                if !seen.contains_key(&sub_active) {
                    queue.push((sub_active, sub));
                }
            }
            seen.insert(active, rays);
            limits::check_face_count(seen.len())?;
        }
        Ok(seen.into_keys().map(|a| self.face_from_active(a)).collect())
    }

    /// The H-representation as LP constraints.
    pub fn constraints(&self) -> super::lp::Constraints {
        let mut c = super::lp::Constraints::new(self.dim);
        for a in &self.ineqs {
            c.push_le(a.clone(), Q::zero());
        }
        for e in &self.eqs {
            c.push_eq(e.clone(), Q::zero());
        }
        c
    }
}

/// Double description conversion. Returns extreme rays (modulo lineality) and a
/// lineality basis of `{z : ineqs·z ≤ 0, eqs·z = 0}`.
fn double_description(dim: usize, ineqs: &[Vector], eqs: &[Vector]) -> (Vec<Vector>, Vec<Vector>) {
    let mut lin: Vec<Vector> = matrix::nullspace(eqs, dim).into_iter().map(|v| primitive(&v)).collect();
    let mut rays: Vec<Vector> = Vec::new();
    // Zero sets of rays relative to the inequalities processed so far.
    let mut zero_sets: Vec<BTreeSet<usize>> = Vec::new();

    for (k, a) in ineqs.iter().enumerate() {
        if let Some(p) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.swap_remove(p);
            let al = dot(a, &l);
            let reduce = |v: &Vector| -> Vector {
                let c = dot(a, v) / &al;
                primitive(&rational::axpy(v, &-c, &l))
            };
            lin = lin.iter().map(reduce).collect();
            rays = rays.iter().map(reduce).collect();
            for z in zero_sets.iter_mut() {
                z.insert(k);
            }
            if al.is_positive() {
                l = rational::neg(&l);
            }
            rays.push(primitive(&l));
            let z: BTreeSet<usize> = (0..k).collect();
            zero_sets.push(z);
            continue;
        }

        let vals: Vec<Q> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (i, z) in zero_sets.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.insert(k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_zero = Vec::new();
        for i in 0..rays.len() {
            if !vals[i].is_positive() {
                let mut z = zero_sets[i].clone();
                if vals[i].is_zero() {
                    z.insert(k);
                }
                new_rays.push(rays[i].clone());
                new_zero.push(z);
            }
        }
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> = zero_sets[p].intersection(&zero_sets[n]).copied().collect();
                let adjacent = (0..rays.len()).all(|r| r == p || r == n || !common.is_subset(&zero_sets[r]));
                if !adjacent {
                    continue;
                }
                let combo = rational::sub(
                    &rational::scale(&vals[p], &rays[n]),
                    &rational::scale(&vals[n], &rays[p]),
                );
                let mut z = common;
                z.insert(k);
                new_rays.push(primitive(&combo));
                new_zero.push(z);
            }
        }
        rays = new_rays;
        zero_sets = new_zero;
    }
    (rays, lin)
}
