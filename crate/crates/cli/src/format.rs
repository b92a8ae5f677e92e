//! JSON interchange: problem files, cone and set descriptions, certificates.
//!
//! Rationals travel as strings `"n/d"` (or `"n"`); JSON integers are
//! accepted on input as shorthand.

use conekit::geometry::{UnionCone, UnionSet};
use conekit::kernel::rational::{format_rational, parse_rational};
use conekit::mpec::{ConstancyStatus, MpecCertificate, MpecInstance};
use conekit::stationarity::{Assumptions, CertificateKind, LinearizedProblem, LspMethod, StationarityCertificate};
use conekit::{Constraints, ConvexCone, ConvexPolyhedron, Matrix, Vector, Q};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational string \"n/d\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rational(v).map(Rat).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(Q::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Q::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

pub type VecJ = Vec<Rat>;

pub fn to_j(v: &[Q]) -> VecJ {
    v.iter().cloned().map(Rat).collect()
}

pub fn from_j(v: &[Rat]) -> Vector {
    v.iter().map(|r| r.0.clone()).collect()
}

fn rows_to_j(rows: &[Vector]) -> Vec<VecJ> {
    rows.iter().map(|r| to_j(r)).collect()
}

fn rows_from_j(rows: &[VecJ]) -> Vec<Vector> {
    rows.iter().map(|r| from_j(r)).collect()
}

fn check_len(expected: usize, v: &[Rat]) -> Result<(), CliError> {
    if v.len() != expected {
        return Err(CliError::Schema(format!(
            "expected a vector of length {expected}, found length {}",
            v.len()
        )));
    }
    Ok(())
}

pub fn matrix_to_j(m: &Matrix) -> Vec<VecJ> {
    rows_to_j(&m.row_vectors())
}

/// A matrix with `cols` columns; `rows` may be empty.
pub fn matrix_from_j(rows: &[VecJ], cols: usize) -> Result<Matrix, CliError> {
    for r in rows {
        check_len(cols, r)?;
    }
    Ok(Matrix::from_rows(cols, rows_from_j(rows))?)
}

/// A convex cone. On input, inequalities/equalities take precedence; when
/// none are given the cone is built from `rays` and `lineality`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(default)]
    pub ineqs: Vec<VecJ>,
    #[serde(default)]
    pub eqs: Vec<VecJ>,
    #[serde(default)]
    pub rays: Vec<VecJ>,
    #[serde(default)]
    pub lineality: Vec<VecJ>,
}

impl ConeJson {
    pub fn from_cone(c: &ConvexCone) -> Self {
        ConeJson {
            dim: c.dim(),
            ineqs: rows_to_j(c.ineqs()),
            eqs: rows_to_j(c.eqs()),
            rays: rows_to_j(c.rays()),
            lineality: rows_to_j(c.lineality()),
        }
    }

    pub fn to_cone(&self) -> Result<ConvexCone, CliError> {
        for r in self
            .ineqs
            .iter()
            .chain(&self.eqs)
            .chain(&self.rays)
            .chain(&self.lineality)
        {
            check_len(self.dim, r)?;
        }
        let c = if self.ineqs.is_empty() && self.eqs.is_empty() && (!self.rays.is_empty() || !self.lineality.is_empty())
        {
            ConvexCone::from_generators(self.dim, &rows_from_j(&self.rays), &rows_from_j(&self.lineality))?
        } else {
            ConvexCone::from_constraints(self.dim, &rows_from_j(&self.ineqs), &rows_from_j(&self.eqs))?
        };
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowJson {
    pub a: VecJ,
    #[serde(default = "zero_rat")]
    pub b: Rat,
}

fn zero_rat() -> Rat {
    Rat(Q::from_integer(0.into()))
}

/// A convex polyhedron `{x : a·x ≤ b (ineqs), a·x = b (eqs)}`. Vertices,
/// rays and lineality are informative on output and ignored on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    #[serde(default)]
    pub ineqs: Vec<RowJson>,
    #[serde(default)]
    pub eqs: Vec<RowJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VecJ>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<VecJ>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lineality: Option<Vec<VecJ>>,
}

impl PolyJson {
    pub fn from_poly(p: &ConvexPolyhedron) -> Self {
        let c = p.constraints();
        let row = |(a, b): &(Vector, Q)| RowJson {
            a: to_j(a),
            b: Rat(b.clone()),
        };
        PolyJson {
            ineqs: c.ineqs.iter().map(row).collect(),
            eqs: c.eqs.iter().map(row).collect(),
            vertices: Some(rows_to_j(&p.vertices())),
            rays: Some(rows_to_j(&p.recession_rays())),
            lineality: Some(rows_to_j(&p.lineality())),
        }
    }

    pub fn to_poly(&self, dim: usize) -> Result<ConvexPolyhedron, CliError> {
        let mut c = Constraints::new(dim);
        for r in &self.ineqs {
            check_len(dim, &r.a)?;
            c.push_le(from_j(&r.a), r.b.0.clone());
        }
        for r in &self.eqs {
            check_len(dim, &r.a)?;
            c.push_eq(from_j(&r.a), r.b.0.clone());
        }
        Ok(ConvexPolyhedron::from_constraints(&c)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionSetJson {
    pub dim: usize,
    pub pieces: Vec<PolyJson>,
}

impl UnionSetJson {
    pub fn from_set(s: &UnionSet) -> Self {
        UnionSetJson {
            dim: s.dim(),
            pieces: s.pieces().iter().map(PolyJson::from_poly).collect(),
        }
    }

    pub fn to_set(&self) -> Result<UnionSet, CliError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.to_poly(self.dim))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UnionSet::new(self.dim, pieces)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionConeJson {
    pub dim: usize,
    pub pieces: Vec<ConeJson>,
}

impl UnionConeJson {
    pub fn from_union(u: &UnionCone) -> Self {
        UnionConeJson {
            dim: u.dim(),
            pieces: u.pieces().iter().map(ConeJson::from_cone).collect(),
        }
    }

    pub fn to_union(&self) -> Result<UnionCone, CliError> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                if p.dim != self.dim {
                    return Err(CliError::Schema(format!(
                        "piece of dimension {} in a union of dimension {}",
                        p.dim, self.dim
                    )));
                }
                p.to_cone()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UnionCone::new(self.dim, pieces)?)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssumptionsJson {
    #[serde(default)]
    pub ggcq: bool,
    #[serde(default)]
    pub mscq: bool,
    #[serde(default)]
    pub lin_map_subregular: bool,
}

impl From<Assumptions> for AssumptionsJson {
    fn from(a: Assumptions) -> Self {
        AssumptionsJson {
            ggcq: a.ggcq,
            mscq: a.mscq,
            lin_map_subregular: a.lin_map_subregular,
        }
    }
}

impl From<AssumptionsJson> for Assumptions {
    fn from(a: AssumptionsJson) -> Self {
        Assumptions {
            ggcq: a.ggcq,
            mscq: a.mscq,
            lin_map_subregular: a.lin_map_subregular,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetQueryJson {
    pub set: UnionSetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<VecJ>,
    /// Regular normal for `what = critical`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_star: Option<VecJ>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearizedJson {
    pub grad_f: VecJ,
    /// `s × d`, one row per component of `P`.
    pub jac: Vec<VecJ>,
    pub d_set: UnionSetJson,
    pub base: VecJ,
    #[serde(default)]
    pub assumptions: AssumptionsJson,
}

impl LinearizedJson {
    pub fn from_problem(p: &LinearizedProblem) -> Self {
        LinearizedJson {
            grad_f: to_j(&p.grad_f),
            jac: matrix_to_j(&p.jac),
            d_set: UnionSetJson::from_set(&p.d_set),
            base: to_j(&p.base),
            assumptions: p.assumptions.into(),
        }
    }

    pub fn to_problem(&self) -> Result<LinearizedProblem, CliError> {
        let jac = matrix_from_j(&self.jac, self.grad_f.len())?;
        if jac.rows() != self.d_set.dim {
            return Err(CliError::Schema(format!(
                "jac has {} rows but d_set has dimension {}",
                jac.rows(),
                self.d_set.dim
            )));
        }
        Ok(LinearizedProblem::new(
            from_j(&self.grad_f),
            jac,
            self.d_set.to_set()?,
            from_j(&self.base),
            self.assumptions.into(),
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MpecJson {
    pub n: usize,
    pub grad_f: VecJ,
    pub jac_phi: Vec<VecJ>,
    pub phi_val: VecJ,
    #[serde(default, rename = "jac_G")]
    pub jac_big_g: Vec<VecJ>,
    #[serde(default, rename = "G_val")]
    pub big_g_val: VecJ,
    pub g_val: VecJ,
    pub jac_g: Vec<VecJ>,
    pub hess_g: Vec<Vec<VecJ>>,
    #[serde(default)]
    pub assumptions: AssumptionsJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl MpecJson {
    pub fn from_instance(i: &MpecInstance) -> Self {
        MpecJson {
            n: i.n,
            grad_f: to_j(&i.grad_f),
            jac_phi: matrix_to_j(&i.jac_phi),
            phi_val: to_j(&i.phi_val),
            jac_big_g: matrix_to_j(&i.jac_big_g),
            big_g_val: to_j(&i.big_g_val),
            g_val: to_j(&i.g_val),
            jac_g: matrix_to_j(&i.jac_g),
            hess_g: i.hess_g.iter().map(matrix_to_j).collect(),
            assumptions: i.assumptions.into(),
            notes: i.notes.clone(),
        }
    }

    pub fn to_instance(&self) -> Result<MpecInstance, CliError> {
        let m = self.phi_val.len();
        let nm = self.n + m;
        let hess = self
            .hess_g
            .iter()
            .map(|h| matrix_from_j(h, m))
            .collect::<Result<Vec<_>, _>>()?;
        let mut inst = MpecInstance::new(
            self.n,
            from_j(&self.grad_f),
            matrix_from_j(&self.jac_phi, nm)?,
            from_j(&self.phi_val),
            matrix_from_j(&self.jac_big_g, nm)?,
            from_j(&self.big_g_val),
            from_j(&self.g_val),
            matrix_from_j(&self.jac_g, m)?,
            hess,
            self.assumptions.into(),
        )?;
        inst.notes = self.notes.clone();
        Ok(inst)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemFile {
    SetQuery(SetQueryJson),
    Linearized(LinearizedJson),
    Mpec(MpecJson),
}

pub fn kind_name(k: CertificateKind) -> &'static str {
    match k {
        CertificateKind::B => "B",
        CertificateKind::S => "S",
        CertificateKind::M => "M",
        CertificateKind::LinMK0 => "linM_k0",
        CertificateKind::LinMFull => "linM",
    }
}

fn kind_from_name(s: &str) -> Result<CertificateKind, CliError> {
    Ok(match s {
        "B" => CertificateKind::B,
        "S" => CertificateKind::S,
        "M" => CertificateKind::M,
        "linM_k0" => CertificateKind::LinMK0,
        "linM" => CertificateKind::LinMFull,
        other => return Err(CliError::Schema(format!("unknown certificate kind {other:?}"))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationarityCertJson {
    pub kind: String,
    pub k: usize,
    pub u_list: Vec<VecJ>,
    pub w: VecJ,
    pub w_star: VecJ,
    pub face_trace: Vec<Vec<i8>>,
    pub assumptions: AssumptionsJson,
    pub assumptions_propagated: bool,
    pub lsp_method: String,
}

impl StationarityCertJson {
    pub fn from_cert(c: &StationarityCertificate) -> Self {
        StationarityCertJson {
            kind: kind_name(c.kind).into(),
            k: c.k,
            u_list: rows_to_j(&c.u_list),
            w: to_j(&c.w),
            w_star: to_j(&c.w_star),
            face_trace: c.face_trace.clone(),
            assumptions: c.assumptions.into(),
            assumptions_propagated: c.assumptions_propagated,
            lsp_method: match c.lsp_method {
                LspMethod::ExactMembership => "exact_membership".into(),
            },
        }
    }

    pub fn to_cert(&self) -> Result<StationarityCertificate, CliError> {
        let lsp_method = match self.lsp_method.as_str() {
            "exact_membership" => LspMethod::ExactMembership,
            other => return Err(CliError::Schema(format!("unknown lsp_method {other:?}"))),
        };
        Ok(StationarityCertificate {
            kind: kind_from_name(&self.kind)?,
            k: self.k,
            u_list: rows_from_j(&self.u_list),
            w: from_j(&self.w),
            w_star: from_j(&self.w_star),
            face_trace: self.face_trace.clone(),
            assumptions: self.assumptions.into(),
            assumptions_propagated: self.assumptions_propagated,
            lsp_method,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstancyJson {
    pub status: ConstancyTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstancyTag {
    CertifiedSingleton,
    CertifiedRaywise,
    SampledOk,
    Violated,
}

impl From<ConstancyStatus> for ConstancyJson {
    fn from(s: ConstancyStatus) -> Self {
        let (status, samples) = match s {
            ConstancyStatus::CertifiedSingleton => (ConstancyTag::CertifiedSingleton, None),
            ConstancyStatus::CertifiedRaywise => (ConstancyTag::CertifiedRaywise, None),
            ConstancyStatus::SampledOk { samples } => (ConstancyTag::SampledOk, Some(samples)),
            ConstancyStatus::Violated => (ConstancyTag::Violated, None),
        };
        ConstancyJson { status, samples }
    }
}

impl ConstancyJson {
    pub fn to_status(self) -> Result<ConstancyStatus, CliError> {
        Ok(match (self.status, self.samples) {
            (ConstancyTag::CertifiedSingleton, None) => ConstancyStatus::CertifiedSingleton,
            (ConstancyTag::CertifiedRaywise, None) => ConstancyStatus::CertifiedRaywise,
            (ConstancyTag::SampledOk, Some(samples)) => ConstancyStatus::SampledOk { samples },
            (ConstancyTag::Violated, None) => ConstancyStatus::Violated,
            _ => return Err(CliError::Schema("inconsistent condition status".into())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MpecCertJson {
    pub lambda_tilde: VecJ,
    pub v: VecJ,
    pub z_star: VecJ,
    pub w: VecJ,
    pub mu: VecJ,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_ids: Option<(usize, usize)>,
    pub constancy: ConstancyJson,
    pub assumptions: AssumptionsJson,
}

impl MpecCertJson {
    pub fn from_cert(c: &MpecCertificate) -> Self {
        MpecCertJson {
            lambda_tilde: to_j(&c.lambda_tilde),
            v: to_j(&c.v),
            z_star: to_j(&c.z_star),
            w: to_j(&c.w),
            mu: to_j(&c.mu),
            face_ids: c.face_ids,
            constancy: c.condition.into(),
            assumptions: c.assumptions.into(),
        }
    }

    pub fn to_cert(&self) -> Result<MpecCertificate, CliError> {
        Ok(MpecCertificate {
            lambda_tilde: from_j(&self.lambda_tilde),
            v: from_j(&self.v),
            z_star: from_j(&self.z_star),
            w: from_j(&self.w),
            mu: from_j(&self.mu),
            face_ids: self.face_ids,
            condition: self.constancy.to_status()?,
            assumptions: self.assumptions.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CertificateBody {
    Stationarity(StationarityCertJson),
    Mpec(MpecCertJson),
}

/// The certificate file written by `stationarity` and `mpec search`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub tool: String,
    pub version: String,
    pub certificate: CertificateBody,
    /// Informative extras (QP values, condition witnesses); ignored by verify.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl CertificateFile {
    pub fn new(certificate: CertificateBody) -> Self {
        CertificateFile {
            tool: "conekit".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            certificate,
            details: None,
        }
    }
}

pub fn parse_point(s: &str) -> Result<Vector, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| CliError::Schema(format!("bad point entry {t:?}: {e}"))))
        .collect()
}
