//! Convex polyhedra via their homogenization.
//!
//! `P = {x : a·x ≤ b, e·x = c}` is stored as the cone
//! `{(x, t) : a·x − b·t ≤ 0, e·x − c·t = 0, t ≥ 0}` in one dimension more.
//! Rays with `t > 0` are vertices, rays with `t = 0` recession directions.

use num_traits::{One, Signed, Zero};

use super::cone::ConvexCone;
use super::lp::{self, Constraints, LpOutcome};
use super::matrix;
use super::rational::{self, dot, Vector, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvexPolyhedron {
    dim: usize,
    /// `None` for the empty set.
    hom: Option<ConvexCone>,
}

/// A nonempty face `P ∩ {a_i·x = b_i : i ∈ active}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFace {
    pub active: Vec<usize>,
    pub dim: usize,
    /// Barycenter of the face's vertices plus its rays and lineality basis.
    pub ri_point: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal {
        value: Q,
        /// Lexicographically smallest optimal vertex.
        point: Vector,
        face: PolyFace,
    },
    Unbounded {
        direction: Vector,
    },
    Infeasible,
}

impl ConvexPolyhedron {
    pub fn from_constraints(cons: &Constraints) -> Result<Self> {
        let n = cons.dim;
        let lift = |(a, b): &(Vector, Q)| -> Result<Vector> {
            if a.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.len(),
                });
            }
            let mut v = a.clone();
            v.push(-b.clone());
            Ok(v)
        };
        let mut ineqs = cons.ineqs.iter().map(lift).collect::<Result<Vec<_>>>()?;
        let mut t = rational::zeros(n + 1);
        t[n] = -Q::one();
        ineqs.push(t);
        let eqs = cons.eqs.iter().map(lift).collect::<Result<Vec<_>>>()?;
        let hom = ConvexCone::from_constraints(n + 1, &ineqs, &eqs)?;
        Ok(Self::from_hom(n, hom))
    }

    /// `conv(points) + cone(rays) + span(lineality)`; empty when `points` is empty.
    pub fn from_generators(dim: usize, points: &[Vector], rays: &[Vector], lineality: &[Vector]) -> Result<Self> {
        let lift = |v: &Vector, t: Q| -> Result<Vector> {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            let mut w = v.clone();
            w.push(t);
            Ok(w)
        };
        if points.is_empty() {
            return Ok(Self::empty(dim));
        }
        let mut gens = points.iter().map(|p| lift(p, Q::one())).collect::<Result<Vec<_>>>()?;
        for r in rays {
            gens.push(lift(r, Q::zero())?);
        }
        let lin = lineality
            .iter()
            .map(|l| lift(l, Q::zero()))
            .collect::<Result<Vec<_>>>()?;
        let hom = ConvexCone::from_generators(dim + 1, &gens, &lin)?;
        Ok(Self::from_hom(dim, hom))
    }

    pub fn from_cone(c: &ConvexCone) -> Self {
        Self::from_generators(c.dim(), &[rational::zeros(c.dim())], c.rays(), c.lineality())
            .expect("consistent dimensions")
    }

    pub fn empty(dim: usize) -> Self {
        ConvexPolyhedron { dim, hom: None }
    }

    fn from_hom(dim: usize, hom: ConvexCone) -> Self {
        let nonempty = hom.rays().iter().any(|r| r[dim].is_positive());
        ConvexPolyhedron {
            dim,
            hom: nonempty.then_some(hom),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_none()
    }

    pub fn homogenization(&self) -> Option<&ConvexCone> {
        self.hom.as_ref()
    }

    /// Facet inequalities `(a, b)` meaning `a·x ≤ b`, in canonical order.
    pub fn ineqs(&self) -> Vec<(Vector, Q)> {
        let Some(h) = &self.hom else {
            return Vec::new();
        };
        let n = self.dim;
        h.ineqs()
            .iter()
            .filter(|a| h.rays().iter().any(|r| r[n].is_positive() && dot(a, r).is_zero()))
            .map(|a| (a[..n].to_vec(), -a[n].clone()))
            .collect()
    }

    /// Equalities `(e, c)` meaning `e·x = c`.
    pub fn eqs(&self) -> Vec<(Vector, Q)> {
        match &self.hom {
            None => Vec::new(),
            Some(h) => h
                .eqs()
                .iter()
                .map(|e| (e[..self.dim].to_vec(), -e[self.dim].clone()))
                .collect(),
        }
    }

    pub fn constraints(&self) -> Constraints {
        let mut c = Constraints::new(self.dim);
        if self.hom.is_none() {
            // 0 ≤ −1
            c.push_le(rational::zeros(self.dim), -Q::one());
            return c;
        }
        for (a, b) in self.ineqs() {
            c.push_le(a, b);
        }
        for (e, v) in self.eqs() {
            c.push_eq(e, v);
        }
        c
    }

    pub fn vertices(&self) -> Vec<Vector> {
        let n = self.dim;
        let mut v: Vec<Vector> = self
            .hom
            .iter()
            .flat_map(|h| h.rays())
            .filter(|r| r[n].is_positive())
            .map(|r| rational::scale(&r[n].recip(), &r[..n]))
            .collect();
        v.sort();
        v
    }

    pub fn recession_rays(&self) -> Vec<Vector> {
        let n = self.dim;
        self.hom
            .iter()
            .flat_map(|h| h.rays())
            .filter(|r| r[n].is_zero())
            .map(|r| r[..n].to_vec())
            .collect()
    }

    pub fn lineality(&self) -> Vec<Vector> {
        let n = self.dim;
        self.hom
            .iter()
            .flat_map(|h| h.lineality())
            .map(|l| l[..n].to_vec())
            .collect()
    }

    pub fn recession_cone(&self) -> ConvexCone {
        ConvexCone::from_generators(self.dim, &self.recession_rays(), &self.lineality()).expect("consistent dimensions")
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        match &self.hom {
            None => false,
            Some(h) => {
                let mut y = x.to_vec();
                y.push(Q::one());
                h.contains(&y)
            }
        }
    }

    pub fn intersect(&self, other: &ConvexPolyhedron) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut c = self.constraints();
        c.extend(&other.constraints());
        Self::from_constraints(&c)
    }

    /// Intersection with extra constraints.
    pub fn with_constraints(&self, extra: &Constraints) -> Result<Self> {
        let mut c = self.constraints();
        c.extend(extra);
        Self::from_constraints(&c)
    }

    /// Tangent cone at a member: the active inequalities relaxed to their linear part.
    pub fn tangent_cone(&self, z: &[Q]) -> Result<ConvexCone> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: z.len(),
            });
        }
        if !self.contains(z) {
            return Err(Error::NotMember);
        }
        let active: Vec<Vector> = self
            .ineqs()
            .into_iter()
            .filter(|(a, b)| dot(a, z) == *b)
            .map(|(a, _)| a)
            .collect();
        let eqs: Vec<Vector> = self.eqs().into_iter().map(|(e, _)| e).collect();
        ConvexCone::from_constraints(self.dim, &active, &eqs)
    }

    fn face_from_active(&self, ineqs: &[(Vector, Q)], active: Vec<usize>) -> PolyFace {
        let on_face = |x: &Vector| active.iter().all(|&i| dot(&ineqs[i].0, x) == ineqs[i].1);
        let flat = |r: &Vector| active.iter().all(|&i| dot(&ineqs[i].0, r).is_zero());
        let verts: Vec<Vector> = self.vertices().into_iter().filter(on_face).collect();
        let rays: Vec<Vector> = self.recession_rays().into_iter().filter(flat).collect();
        let lin = self.lineality();
        let n = self.dim;
        let k = Q::from_integer((verts.len() as i64).into());
        let mut point = rational::scale(&k.recip(), &rational::sum(n, verts.iter()));
        point = rational::add(&point, &rational::sum(n, rays.iter().chain(&lin)));
        let mut dirs: Vec<Vector> = verts.iter().map(|v| rational::sub(v, &verts[0])).collect();
        dirs.extend(rays);
        dirs.extend(lin);
        PolyFace {
            active,
            dim: matrix::rank(&dirs, n),
            ri_point: point,
        }
    }

    /// Maximize `objective · x` over `P`.
    pub fn lp_optimize(&self, objective: &[Q]) -> Result<LpResult> {
        if objective.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: objective.len(),
            });
        }
        if self.is_empty() {
            return Ok(LpResult::Infeasible);
        }
        let value = match lp::maximize(&self.constraints(), objective) {
            LpOutcome::Infeasible => {
                return Err(Error::Internal(
                    "simplex reports a nonempty polyhedron infeasible".into(),
                ))
            }
            LpOutcome::Unbounded { .. } => {
                let direction = self
                    .recession_rays()
                    .into_iter()
                    .find(|r| dot(objective, r).is_positive())
                    .or_else(|| {
                        self.lineality().into_iter().find_map(|l| {
                            let s = dot(objective, &l);
                            if s.is_zero() {
                                None
                            } else if s.is_positive() {
                                Some(l)
                            } else {
                                Some(rational::neg(&l))
                            }
                        })
                    })
                    .ok_or_else(|| Error::Internal("no improving recession direction".into()))?;
                return Ok(LpResult::Unbounded { direction });
            }
            LpOutcome::Optimal { value, .. } => value,
        };
        let verts: Vec<Vector> = self
            .vertices()
            .into_iter()
            .filter(|v| dot(objective, v) == value)
            .collect();
        let Some(point) = verts.first().cloned() else {
            return Err(Error::Internal("optimal value attained at no vertex".into()));
        };
        let ineqs = self.ineqs();
        let flat_rays: Vec<Vector> = self
            .recession_rays()
            .into_iter()
            .filter(|r| dot(objective, r).is_zero())
            .collect();
        let active: Vec<usize> = (0..ineqs.len())
            .filter(|&i| {
                let (a, b) = &ineqs[i];
                verts.iter().all(|v| dot(a, v) == *b) && flat_rays.iter().all(|r| dot(a, r).is_zero())
            })
            .collect();
        let face = self.face_from_active(&ineqs, active);
        Ok(LpResult::Optimal { value, point, face })
    }

    /// The face `P ∩ {a_i·x = b_i : i ∈ face.active}` as a polyhedron.
    pub fn face_polyhedron(&self, face: &PolyFace) -> Result<Self> {
        let ineqs = self.ineqs();
        let mut extra = Constraints::new(self.dim);
        for &i in &face.active {
            extra.push_eq(ineqs[i].0.clone(), ineqs[i].1.clone());
        }
        self.with_constraints(&extra)
    }
}

/// Tangent cone of a convex polyhedron at a member point.
pub fn tangent_cone_convex(p: &ConvexPolyhedron, z: &[Q]) -> Result<ConvexCone> {
    p.tangent_cone(z)
}
