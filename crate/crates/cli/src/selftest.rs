//! Built-in self-test: the cubic two-constraint MPEC example end to end,
//! followed by short randomized property runs.

use std::time::Instant;

use conekit::geometry::{is_in_lsp, limiting_at_origin, limiting_via_tangent_cells, lsp_under_approx};
use conekit::kernel::rational::{self, frac, int, vec_i};
use conekit::mpec::{
    check_multiplier_constancy, critical_cone_gamma, cubic_example, examples, graph_normal_regular,
    graph_tangent_pieces, mpec_certificate_search, multiplier_polytope, verify_mpec_certificate, ConstancyStatus,
    MpecCertificate, MpecInstance, DEFAULT_SAMPLES,
};
use conekit::stationarity::{
    check_b_lin, check_lin_m_k0, check_m, check_s, lin_m_search, verify_certificate, BOutcome,
};
use conekit::{gen, ConvexCone, Vector};
use serde::Serialize;

use crate::{CliError, Report, EXIT_REJECTED};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    /// Names of the failed checks.
    pub failures: Vec<String>,
    /// Wall-clock time in milliseconds; not part of the verdict.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn record(&mut self, name: &str, outcome: Result<Result<(), String>, conekit::Error>) {
        let (ok, detail) = match outcome {
            Ok(Ok(())) => (true, None),
            Ok(Err(msg)) => (false, Some(msg)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.checks.push(CheckResult {
            name: name.into(),
            ok,
            detail,
        });
    }
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The explicit tuple `λ̃ = 0, v = z* = 0, w = (0, 0, −1)`, no `μ`.
pub fn explicit_tuple(inst: &MpecInstance) -> MpecCertificate {
    MpecCertificate {
        lambda_tilde: rational::zeros(inst.q),
        v: rational::zeros(inst.m),
        z_star: rational::zeros(inst.m),
        w: vec_i(&[0, 0, -1]),
        mu: Vec::new(),
        face_ids: None,
        condition: ConstancyStatus::CertifiedSingleton,
        assumptions: inst.assumptions,
    }
}

/// `(x-equation residual, r)` of a tuple without `μ`:
/// `∇_xF − ∇_xφᵀ w` and `∇_yF − (∇²(λ̃ᵀg) + ∇_yφᵀ) w`.
pub fn residuals(inst: &MpecInstance, cert: &MpecCertificate) -> (Vector, Vector) {
    let (n, m) = (inst.n, inst.m);
    let jt = inst.jac_phi.transpose();
    let h = inst.hessian_of(&cert.lambda_tilde);
    let phi_t_w = jt.apply(&cert.w);
    let x: Vector = (0..n).map(|i| inst.grad_f[i].clone() - phi_t_w[i].clone()).collect();
    let hw = h.apply(&cert.w);
    let y: Vector = (0..m)
        .map(|i| inst.grad_f[n + i].clone() - hw[i].clone() - phi_t_w[n + i].clone())
        .collect();
    (x, y)
}

fn example_checks(rec: &mut Recorder, inject_fault: bool) {
    let build = |a: i64| -> Result<MpecInstance, conekit::Error> {
        let mut inst = cubic_example(&int(a))?;
        if inject_fault {
            inst.grad_f[0] += frac(1, 7);
        }
        Ok(inst)
    };
    let inst1 = build(1);
    rec.record(
        "cubic example builds",
        inst1.as_ref().map(|_| Ok(())).map_err(Clone::clone),
    );
    let Ok(inst) = inst1 else {
        return;
    };

    rec.record(
        "multiplier set is {(0,0)}",
        multiplier_polytope(&inst).map(|p| {
            expect(
                p.vertices() == vec![vec_i(&[0, 0])] && p.recession_rays().is_empty() && p.lineality().is_empty(),
                || format!("vertices {:?}", p.vertices()),
            )
        }),
    );

    rec.record(
        "critical cone is R x R x R_-",
        critical_cone_gamma(&inst).and_then(|k| {
            let expected = ConvexCone::from_constraints(3, &[vec_i(&[0, 0, 1])], &[])?;
            Ok(expect(k == expected, || format!("got {k:?}")))
        }),
    );

    rec.record(
        "condition is CertifiedSingleton",
        check_multiplier_constancy(&inst, DEFAULT_SAMPLES).map(|c| {
            expect(c.status() == ConstancyStatus::CertifiedSingleton, || {
                format!("{:?}", c.status())
            })
        }),
    );

    let found = mpec_certificate_search(&inst, DEFAULT_SAMPLES);
    rec.record(
        "certificate search finds a verified tuple",
        found.clone().and_then(|c| match c {
            None => Ok(Err("no certificate".to_string())),
            Some(c) => verify_mpec_certificate(&inst, &c).map(|v| expect(v.ok, || format!("{:?}", v.reason))),
        }),
    );

    let tuple = explicit_tuple(&inst);
    rec.record(
        "explicit tuple verifies",
        verify_mpec_certificate(&inst, &tuple).map(|v| expect(v.ok, || format!("{:?}", v.reason))),
    );
    let (x_res, r) = residuals(&inst, &tuple);
    rec.record(
        "x-equation residual is exactly 0",
        Ok(expect(rational::is_zero(&x_res), || {
            format!("{}", rational::Display(&x_res))
        })),
    );
    rec.record(
        "-r = (0,0,1) lies in {0}^2 x R_+",
        ConvexCone::from_constraints(3, &[vec_i(&[0, 0, -1])], &[vec_i(&[1, 0, 0]), vec_i(&[0, 1, 0])]).map(|c| {
            let minus_r = rational::neg(&r);
            expect(minus_r == vec_i(&[0, 0, 1]) && c.contains(&minus_r), || {
                format!("{}", rational::Display(&minus_r))
            })
        }),
    );

    rec.record(
        "a = 2 gives identical results",
        build(2).and_then(|inst2| {
            let same = multiplier_polytope(&inst2)? == multiplier_polytope(&inst)?
                && critical_cone_gamma(&inst2)? == critical_cone_gamma(&inst)?
                && check_multiplier_constancy(&inst2, DEFAULT_SAMPLES)?
                    == check_multiplier_constancy(&inst, DEFAULT_SAMPLES)?
                && mpec_certificate_search(&inst2, DEFAULT_SAMPLES)? == found.clone()?;
            Ok(expect(same, || "results differ".into()))
        }),
    );
}

/// `graph_normal_regular` against the polar of the tangent cone to the
/// graph pieces, at the relative interior point of every face.
pub fn graph_normal_matches_polar(inst: &MpecInstance) -> Result<Result<(), String>, conekit::Error> {
    let cond = check_multiplier_constancy(inst, DEFAULT_SAMPLES)?;
    let Some(lambda) = cond.lambda_tilde() else {
        return Ok(Err("condition violated".into()));
    };
    let m = inst.m;
    let t = graph_tangent_pieces(inst, &lambda, &cond)?;
    for piece in t.pieces() {
        for f in piece.faces()? {
            let p = &f.ri_point;
            let formula = graph_normal_regular(inst, &lambda, &cond, &p[..m], &p[m..])?;
            if t.regular_normal(p)? != formula {
                return Ok(Err(format!("mismatch at {}", rational::Display(p))));
            }
        }
    }
    Ok(Ok(()))
}

fn property_checks(rec: &mut Recorder) {
    rec.record(
        "polar involution (24 cones)",
        (|| {
            for seed in 0..24 {
                let c = gen::cone(&mut gen::rng(seed), 4, 6);
                if c.polar().polar() != c {
                    return Ok(Err(format!("seed {seed}")));
                }
            }
            Ok(Ok(()))
        })(),
    );
    rec.record(
        "two limiting-normal routes agree (12 cone unions)",
        (|| {
            for seed in 0..12 {
                let c = gen::union_cone(&mut gen::rng(seed), 3, 3);
                if limiting_via_tangent_cells(&c)? != limiting_at_origin(&c)? {
                    return Ok(Err(format!("seed {seed}")));
                }
            }
            Ok(Ok(()))
        })(),
    );
    rec.record(
        "lineality inclusion (12 cone unions)",
        (|| {
            for seed in 0..12 {
                let mut rng = gen::rng(seed);
                let c = gen::union_cone(&mut rng, 3, 3);
                let z = gen::member_point(&mut rng, &c);
                let t = c.tangent_cone(&z)?;
                for b in lsp_under_approx(&c)?.basis() {
                    if !is_in_lsp(&t, b)? {
                        return Ok(Err(format!("seed {seed}")));
                    }
                }
            }
            Ok(Ok(()))
        })(),
    );
    rec.record(
        "stationarity hierarchy (12 problems)",
        (|| {
            for seed in 0..12 {
                let prob = gen::linearized_problem(&mut gen::rng(seed), 3, 3, 2);
                if check_b_lin(&prob)? != BOutcome::Stationary {
                    continue;
                }
                let s = check_s(&prob)?.is_some();
                let k0 = check_lin_m_k0(&prob)?.is_some();
                let m = check_m(&prob)?.is_some();
                let c = lin_m_search(&prob)?;
                if (s && !k0) || (k0 && !m) || c.k != 0 || !verify_certificate(&prob, &c)?.ok {
                    return Ok(Err(format!("seed {seed}")));
                }
            }
            Ok(Ok(()))
        })(),
    );
    rec.record(
        "graph normal formula matches the polar (derived instances)",
        (|| {
            for inst in [examples::duplicated_gradient(&[0, 0]), examples::square_term()] {
                if let Err(e) = graph_normal_matches_polar(&inst)? {
                    return Ok(Err(e));
                }
            }
            Ok(Ok(()))
        })(),
    );
}

pub fn run_selftest(inject_fault: bool) -> SelftestReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    example_checks(&mut rec, inject_fault);
    property_checks(&mut rec);
    let failures: Vec<String> = rec.checks.iter().filter(|c| !c.ok).map(|c| c.name.clone()).collect();
    SelftestReport {
        passed: failures.is_empty(),
        checks: rec.checks,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn selftest(inject_fault: bool) -> Result<Report, CliError> {
    let r = run_selftest(inject_fault);
    if r.passed {
        Report::ok(&r)
    } else {
        let err = serde_json::json!({
            "error": "selftest_failed",
            "message": format!("{} check(s) failed", r.failures.len()),
            "exit_code": EXIT_REJECTED,
            "failures": r.failures,
        });
        Report::with_code(&r, EXIT_REJECTED, Some(err))
    }
}
