//! Constancy of the directional multiplier sets on `K̄_Γ \ {0}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{critical_cone_gamma, directional_face, multiplier_polytope, MpecInstance};
use crate::kernel::polyhedron::ConvexPolyhedron;
use crate::kernel::rational::{self, Vector, Q};
use crate::Result;

pub const DEFAULT_SAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierConstancy {
    /// `Λ̄` is a single point.
    CertifiedSingleton(ConvexPolyhedron),
    /// Every face of `K̄_Γ` has dimension at most one, and all ray
    /// representatives give the same face. Exact.
    CertifiedRaywise(ConvexPolyhedron),
    /// No mismatch among `samples` evaluated directions. Not a proof.
    SampledOk {
        samples: usize,
        face: ConvexPolyhedron,
    },
    Violated {
        v1: Vector,
        v2: Vector,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstancyStatus {
    CertifiedSingleton,
    CertifiedRaywise,
    SampledOk { samples: usize },
    Violated,
}

impl MultiplierConstancy {
    pub fn status(&self) -> ConstancyStatus {
        match self {
            MultiplierConstancy::CertifiedSingleton(_) => ConstancyStatus::CertifiedSingleton,
            MultiplierConstancy::CertifiedRaywise(_) => ConstancyStatus::CertifiedRaywise,
            MultiplierConstancy::SampledOk { samples, .. } => ConstancyStatus::SampledOk { samples: *samples },
            MultiplierConstancy::Violated { .. } => ConstancyStatus::Violated,
        }
    }

    /// `Λ̃`, unless violated.
    pub fn face(&self) -> Option<&ConvexPolyhedron> {
        match self {
            MultiplierConstancy::CertifiedSingleton(f) | MultiplierConstancy::CertifiedRaywise(f) => Some(f),
            MultiplierConstancy::SampledOk { face, .. } => Some(face),
            MultiplierConstancy::Violated { .. } => None,
        }
    }

    /// Lexicographically smallest vertex of `Λ̃`.
    pub fn lambda_tilde(&self) -> Option<Vector> {
        self.face().and_then(|f| f.vertices().into_iter().next())
    }
}

/// Decide or sample `Λ̄(v) = Λ̃` for all `v ∈ K̄_Γ \ {0}`.
///
/// `samples` extra pseudo-random directions are drawn in each face of
/// dimension at least two; the generator is seeded by the face index.
pub fn check_multiplier_constancy(inst: &MpecInstance, samples: usize) -> Result<MultiplierConstancy> {
    let lam = multiplier_polytope(inst)?;
    if lam.vertices().len() == 1 && lam.recession_rays().is_empty() && lam.lineality().is_empty() {
        return Ok(MultiplierConstancy::CertifiedSingleton(lam));
    }
    let k = critical_cone_gamma(inst)?;
    let faces = k.faces()?;
    let mut directions: Vec<Vector> = Vec::new();
    let mut sampled = false;
    for (idx, f) in faces.iter().enumerate() {
        if f.dim == 0 {
            continue;
        }
        directions.push(f.ri_point.clone());
        if f.dim >= 2 {
            sampled = true;
            let rays: Vec<&Vector> = f.rays.iter().map(|&r| &k.rays()[r]).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(idx as u64);
            for _ in 0..samples {
                let mut v = rational::zeros(inst.m);
                for r in &rays {
                    v = rational::axpy(&v, &Q::from_integer(rng.gen_range(1..=9).into()), r);
                }
                for l in k.lineality() {
                    v = rational::axpy(&v, &Q::from_integer(rng.gen_range(-9..=9).into()), l);
                }
                if !rational::is_zero(&v) {
                    directions.push(v);
                }
            }
        }
    }
    let Some(first) = directions.first() else {
        // K̄_Γ = {0}: nothing to compare.
        return Ok(MultiplierConstancy::CertifiedRaywise(lam));
    };
    let reference = directional_face(inst, &lam, first)?;
    for v in &directions[1..] {
        if directional_face(inst, &lam, v)? != reference {
            return Ok(MultiplierConstancy::Violated {
                v1: first.clone(),
                v2: v.clone(),
            });
        }
    }
    Ok(if sampled {
        MultiplierConstancy::SampledOk {
            samples: directions.len(),
            face: reference,
        }
    } else {
        MultiplierConstancy::CertifiedRaywise(reference)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, vec_i};
    use crate::mpec::examples::*;
    use crate::mpec::instance::cubic_example;

    #[test]
    fn condition_examples() {
        let c = check_multiplier_constancy(&cubic_example(&int(1)).unwrap(), DEFAULT_SAMPLES).unwrap();
        assert_eq!(c.status(), ConstancyStatus::CertifiedSingleton);
        assert_eq!(c.lambda_tilde(), Some(vec_i(&[0, 0])));
        let c = check_multiplier_constancy(&square_term(), DEFAULT_SAMPLES).unwrap();
        assert_eq!(c.status(), ConstancyStatus::CertifiedRaywise);
        assert_eq!(c.face().unwrap().vertices(), vec![vec_i(&[1, 0])]);
        match check_multiplier_constancy(&opposite_rays(), DEFAULT_SAMPLES).unwrap() {
            MultiplierConstancy::Violated { v1, v2 } => assert_ne!(v1, v2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_critical_cone_is_vacuous() {
        // y ∈ ℝ, g₁ = g₂ = y, ȳ* = 1: Λ̄ is a segment and K̄_Γ = {0}.
        let inst = MpecInstance::new(
            1,
            rational::zeros(2),
            crate::Matrix::from_i64(&[&[0, 1]]),
            vec_i(&[-1]),
            crate::Matrix::zeros(0, 2),
            Vec::new(),
            rational::zeros(2),
            crate::Matrix::from_i64(&[&[1], &[1]]),
            vec![crate::Matrix::zeros(1, 1), crate::Matrix::zeros(1, 1)],
            Default::default(),
        )
        .unwrap();
        let c = check_multiplier_constancy(&inst, DEFAULT_SAMPLES).unwrap();
        assert_eq!(
            c,
            MultiplierConstancy::CertifiedRaywise(multiplier_polytope(&inst).unwrap())
        );
        assert_eq!(c.lambda_tilde(), Some(vec_i(&[0, 1])));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = check_multiplier_constancy(&opposite_rays(), 3).unwrap();
        let b = check_multiplier_constancy(&opposite_rays(), 3).unwrap();
        assert_eq!(a, b);
    }
}
