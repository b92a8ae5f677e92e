//! The subcommands, as pure functions from parsed input to a [`Report`].

use std::path::Path;

use clap::ValueEnum;
use conekit::geometry::{critical_cone, limiting_normal_cone, lsp_under_approx, regular_normal_cone, tangent_cone};
use conekit::kernel::rational::{format_rational, zeros};
use conekit::mpec::{
    check_multiplier_constancy, critical_cone_gamma, mpec_certificate_search, multiplier_polytope,
    verify_mpec_certificate, ybar_star, MpecInstance, MultiplierConstancy,
};
use conekit::stationarity::{
    check_b_lin, lin_m_search, m_certificate, s_certificate, sharp_min_criterion, solve_aux_qp, verify_certificate,
    BOutcome, CertificateKind, LinearizedProblem, QpStatus, SharpOutcome, StationarityCertificate, Verdict,
};
use conekit::{Vector, Q};
use serde_json::{json, Value};

use crate::format::{
    to_j, CertificateBody, CertificateFile, ConeJson, ConstancyJson, MpecCertJson, PolyJson, ProblemFile, SetQueryJson,
    StationarityCertJson, UnionConeJson,
};
use crate::{CliError, Report, EXIT_CONDITION, EXIT_REJECTED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Tangent,
    Regular,
    Limiting,
    Lsp,
    Critical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    #[value(name = "B")]
    B,
    #[value(name = "S")]
    S,
    #[value(name = "M")]
    M,
    #[value(name = "linM")]
    LinM,
    #[value(name = "sharp")]
    Sharp,
    #[value(name = "auxqp")]
    AuxQp,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::B => "B",
            Check::S => "S",
            Check::M => "M",
            Check::LinM => "linM",
            Check::Sharp => "sharp",
            Check::AuxQp => "auxqp",
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile, CliError> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

fn rejection(code: &str, message: impl Into<String>, exit_code: i32) -> Value {
    json!({ "error": code, "message": message.into(), "exit_code": exit_code })
}

fn set_query(p: &ProblemFile) -> Result<&SetQueryJson, CliError> {
    match p {
        ProblemFile::SetQuery(q) => Ok(q),
        _ => Err(CliError::Schema("expected a problem of kind \"set_query\"".into())),
    }
}

pub fn linearized(p: &ProblemFile) -> Result<LinearizedProblem, CliError> {
    match p {
        ProblemFile::Linearized(l) => l.to_problem(),
        _ => Err(CliError::Schema("expected a problem of kind \"linearized\"".into())),
    }
}

pub fn mpec(p: &ProblemFile) -> Result<MpecInstance, CliError> {
    match p {
        ProblemFile::Mpec(m) => m.to_instance(),
        _ => Err(CliError::Schema("expected a problem of kind \"mpec\"".into())),
    }
}

fn point_or(flag: Option<Vector>, file: &Option<Vec<crate::format::Rat>>, name: &str) -> Result<Vector, CliError> {
    flag.or_else(|| file.as_ref().map(|v| crate::format::from_j(v)))
        .ok_or_else(|| CliError::Schema(format!("no {name} given (file field or command-line flag)")))
}

/// `analyze-set`: one cone of the set at the point.
pub fn analyze_set(
    problem: &ProblemFile,
    what: What,
    point: Option<Vector>,
    z_star: Option<Vector>,
) -> Result<Report, CliError> {
    let q = set_query(problem)?;
    let set = q.set.to_set()?;
    let z = point_or(point, &q.point, "point")?;
    let result = match what {
        What::Tangent => json!({ "union_cone": UnionConeJson::from_union(&tangent_cone(&set, &z)?) }),
        What::Regular => json!({ "cone": ConeJson::from_cone(&regular_normal_cone(&set, &z)?) }),
        What::Limiting => json!({ "union_cone": UnionConeJson::from_union(&limiting_normal_cone(&set, &z)?) }),
        What::Lsp => {
            let l = lsp_under_approx(&tangent_cone(&set, &z)?)?;
            json!({ "lsp_basis": l.basis().iter().map(|b| to_j(b)).collect::<Vec<_>>() })
        }
        What::Critical => {
            let zs = point_or(z_star, &q.z_star, "z_star")?;
            json!({ "union_cone": UnionConeJson::from_union(&critical_cone(&set, &z, &zs)?) })
        }
    };
    Report::ok(json!({
        "what": format!("{what:?}").to_lowercase(),
        "point": to_j(&z),
        "result": result,
    }))
}

fn stationarity_file(cert: &StationarityCertificate, details: Option<Value>) -> CertificateFile {
    let mut f = CertificateFile::new(CertificateBody::Stationarity(StationarityCertJson::from_cert(cert)));
    f.details = details;
    f
}

fn no_certificate(check: Check, message: &str, extra: Value) -> Result<Report, CliError> {
    let mut body = json!({ "check": check.name(), "holds": false, "message": message });
    if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
        b.extend(e);
    }
    Report::with_code(
        body,
        EXIT_REJECTED,
        Some(rejection("no_certificate", message, EXIT_REJECTED)),
    )
}

fn not_b_stationary(check: Check, prob: &LinearizedProblem) -> Result<Report, CliError> {
    let witness = match check_b_lin(prob)? {
        BOutcome::DescentDirection(u) => to_j(&u),
        BOutcome::Stationary => Vec::new(),
    };
    no_certificate(
        check,
        "problem is not B-stationary",
        json!({ "descent_direction": witness }),
    )
}

/// `stationarity`: run one check and emit a certificate file on success.
pub fn stationarity(problem: &ProblemFile, check: Check) -> Result<Report, CliError> {
    let prob = linearized(problem)?;
    let s = prob.dim_s();
    match check {
        Check::B => match check_b_lin(&prob)? {
            BOutcome::Stationary => Report::ok(stationarity_file(
                &StationarityCertificate::simple(CertificateKind::B, &prob, zeros(s), zeros(s)),
                None,
            )),
            BOutcome::DescentDirection(u) => no_certificate(
                check,
                "descent direction in the linearized tangent cone",
                json!({ "descent_direction": to_j(&u) }),
            ),
        },
        Check::S => match s_certificate(&prob)? {
            Some(c) => Report::ok(stationarity_file(&c, None)),
            None => no_certificate(check, "no multiplier in the regular normal cone", json!({})),
        },
        Check::M => match m_certificate(&prob)? {
            Some(c) => Report::ok(stationarity_file(&c, None)),
            None => no_certificate(check, "no multiplier in the limiting normal cone", json!({})),
        },
        Check::LinM => match lin_m_search(&prob) {
            Ok(c) => Report::ok(stationarity_file(&c, None)),
            Err(conekit::Error::NotBStationary) => not_b_stationary(check, &prob),
            Err(e) => Err(e.into()),
        },
        Check::AuxQp => match solve_aux_qp(&prob) {
            Ok(out) => {
                let cert =
                    StationarityCertificate::simple(CertificateKind::LinMK0, &prob, out.w(&prob), out.w_star.clone());
                let details = json!({
                    "status": match out.status {
                        QpStatus::GlobalSolution => "global_solution",
                        QpStatus::InfeasiblePiecewise => "infeasible_piecewise",
                    },
                    "u": to_j(&out.u),
                    "y": to_j(&out.y),
                    "value": format_rational(&out.value),
                    "piece": out.piece,
                });
                Report::ok(stationarity_file(&cert, Some(details)))
            }
            Err(conekit::Error::NotBStationary) => not_b_stationary(check, &prob),
            Err(e) => Err(e.into()),
        },
        Check::Sharp => match sharp_min_criterion(&prob)? {
            SharpOutcome::TrivialCone => {
                Report::ok(json!({ "check": "sharp", "holds": true, "outcome": "trivial_cone" }))
            }
            SharpOutcome::CriterionHolds {
                alpha1,
                euclid_upper_sq,
            } => Report::ok(json!({
                "check": "sharp",
                "holds": true,
                "outcome": "criterion_holds",
                "alpha1": format_rational(&alpha1),
                "euclid_upper_sq": format_rational(&euclid_upper_sq),
            })),
            SharpOutcome::Fails { witness, alpha1 } => no_certificate(
                check,
                "linear growth fails on the linearized tangent cone",
                json!({ "outcome": "fails", "witness": to_j(&witness), "alpha1": format_rational(&alpha1) }),
            ),
        },
    }
}

fn verdict_report(v: Verdict) -> Result<Report, CliError> {
    if v.ok {
        Report::ok(json!({ "ok": true }))
    } else {
        let reason = v.reason.unwrap_or_default();
        Report::with_code(
            json!({ "ok": false, "reason": reason }),
            EXIT_REJECTED,
            Some(rejection("certificate_rejected", reason, EXIT_REJECTED)),
        )
    }
}

/// `verify`: re-check a certificate file against the problem it belongs to.
pub fn verify(problem: &ProblemFile, cert: &CertificateFile) -> Result<Report, CliError> {
    match &cert.certificate {
        CertificateBody::Stationarity(c) => verdict_report(verify_certificate(&linearized(problem)?, &c.to_cert()?)?),
        CertificateBody::Mpec(c) => verdict_report(verify_mpec_certificate(&mpec(problem)?, &c.to_cert()?)?),
    }
}

fn violation(v1: &[Q], v2: &[Q]) -> (Value, Value) {
    let w = json!({ "v1": to_j(v1), "v2": to_j(v2) });
    let err = json!({
        "error": "constancy_violated",
        "message": "directional multiplier sets differ on the critical cone",
        "exit_code": EXIT_CONDITION,
        "witness": w.clone(),
    });
    (w, err)
}

/// `mpec analyze`: `Λ̄`, `K̄_Γ` and the multiplier constancy status.
pub fn mpec_analyze(problem: &ProblemFile, samples: usize) -> Result<Report, CliError> {
    let inst = mpec(problem)?;
    let lam = multiplier_polytope(&inst)?;
    let k = critical_cone_gamma(&inst)?;
    let cond = check_multiplier_constancy(&inst, samples)?;
    let mut body = json!({
        "ybar_star": to_j(&ybar_star(&inst)),
        "multiplier_set": PolyJson::from_poly(&lam),
        "critical_cone": ConeJson::from_cone(&k),
        "constancy": ConstancyJson::from(cond.status()),
    });
    match &cond {
        MultiplierConstancy::Violated { v1, v2 } => {
            let (w, err) = violation(v1, v2);
            body["witness"] = w;
            Report::with_code(body, EXIT_CONDITION, Some(err))
        }
        _ => {
            body["lambda_tilde"] = json!(cond.lambda_tilde().map(|l| to_j(&l)));
            body["lambda_face"] = json!(cond.face().map(PolyJson::from_poly));
            Report::ok(body)
        }
    }
}

/// `mpec search`: emit a certificate file for the M-stationarity system.
pub fn mpec_search(problem: &ProblemFile, samples: usize) -> Result<Report, CliError> {
    let inst = mpec(problem)?;
    if let MultiplierConstancy::Violated { v1, v2 } = check_multiplier_constancy(&inst, samples)? {
        let (w, err) = violation(&v1, &v2);
        return Report::with_code(json!({ "found": false, "witness": w }), EXIT_CONDITION, Some(err));
    }
    match mpec_certificate_search(&inst, samples)? {
        Some(c) => Report::ok(CertificateFile::new(CertificateBody::Mpec(MpecCertJson::from_cert(&c)))),
        None => Report::with_code(
            json!({ "found": false }),
            EXIT_REJECTED,
            Some(rejection(
                "no_certificate",
                "no certificate over the enumerated faces",
                EXIT_REJECTED,
            )),
        ),
    }
}

/// `mpec verify`.
pub fn mpec_verify(problem: &ProblemFile, cert: &CertificateFile) -> Result<Report, CliError> {
    match &cert.certificate {
        CertificateBody::Mpec(_) => verify(problem, cert),
        CertificateBody::Stationarity(_) => Err(CliError::Schema("expected an mpec certificate".into())),
    }
}
