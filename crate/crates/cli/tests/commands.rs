//! Exit codes and outputs of the binary on the files in `docs/examples`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conekit::kernel::rational::int;
use conekit::mpec::{cubic_example, examples};
use conekit_cli::format::ProblemFile;
use serde_json::Value;

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/examples")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conekit")).args(args).output().unwrap()
}

fn run_on(args: &[&str], input: &str) -> (i32, Value, Value) {
    let file = example(input);
    let mut all = args.to_vec();
    all.extend(["--input", file.to_str().unwrap()]);
    let out = run(&all);
    let parse = |b: &[u8]| {
        let s = String::from_utf8_lossy(b);
        if s.trim().is_empty() {
            Value::Null
        } else {
            serde_json::from_str(s.trim()).unwrap()
        }
    };
    (out.status.code().unwrap(), parse(&out.stdout), parse(&out.stderr))
}

#[test]
fn mpec_example_files_match_library_instances() {
    for (file, inst) in [
        ("cubic_mpec.json", cubic_example(&int(1)).unwrap()),
        ("opposite_rays_mpec.json", examples::opposite_rays()),
    ] {
        let p: ProblemFile = serde_json::from_str(&std::fs::read_to_string(example(file)).unwrap()).unwrap();
        let ProblemFile::Mpec(m) = p else { panic!("{file}") };
        let mut built = m.to_instance().unwrap();
        built.notes = inst.notes.clone();
        assert_eq!(built, inst, "{file}");
    }
}

#[test]
fn analyze_set() {
    let (code, out, _) = run_on(&["analyze-set", "--what", "limiting"], "complementarity_set.json");
    assert_eq!(code, 0);
    assert_eq!(out["result"]["union_cone"]["pieces"].as_array().unwrap().len(), 3);

    let (code, _, err) = run_on(&["analyze-set", "--what", "tangent"], "outside_point.json");
    assert_eq!(code, 2);
    assert_eq!(err["error"], "not_member");

    let (code, out, _) = run_on(&["analyze-set", "--what", "lsp"], "halfplane_line.json");
    assert_eq!(code, 0);
    assert_eq!(
        out["result"]["lsp_basis"],
        serde_json::json!([["1", "0", "0"], ["0", "1", "0"]])
    );

    let (code, out, _) = run_on(&["analyze-set", "--what", "critical"], "complementarity_set.json");
    assert_eq!(code, 0);
    // z* = (−1, 0) cuts the tangent cone down to the ray along x₂.
    assert_eq!(
        out["result"]["union_cone"]["pieces"][0]["rays"],
        serde_json::json!([["0", "1"]])
    );

    let (code, _, err) = run_on(
        &["analyze-set", "--what", "regular", "--point", "0,x"],
        "complementarity_set.json",
    );
    assert_eq!(code, 1);
    assert_eq!(err["error"], "schema");
}

#[test]
fn stationarity_checks() {
    let (code, out, _) = run_on(&["stationarity", "--check", "linM"], "complementarity_linearized.json");
    assert_eq!(code, 0);
    assert_eq!(out["certificate"]["k"], 0);

    let (code, out, err) = run_on(&["stationarity", "--check", "B"], "descent_linearized.json");
    assert_eq!(code, 3);
    assert_eq!(out["descent_direction"], serde_json::json!(["0", "1"]));
    assert_eq!(err["exit_code"], 3);

    let (code, out, _) = run_on(&["stationarity", "--check", "sharp"], "trivial_cone_linearized.json");
    assert_eq!(code, 0);
    assert_eq!(out["outcome"], "trivial_cone");

    let (code, _, err) = run_on(&["stationarity", "--check", "linM"], "cubic_mpec.json");
    assert_eq!(code, 1);
    assert_eq!(err["error"], "schema");
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let dir = tempfile::tempdir().unwrap();
    let lin = example("complementarity_linearized.json");
    for check in ["B", "S", "M", "linM", "auxqp"] {
        let cert = dir.path().join(format!("{check}.json"));
        let out = run(&[
            "stationarity",
            "--check",
            check,
            "--input",
            lin.to_str().unwrap(),
            "--output",
            cert.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{check}");
        let out = run(&[
            "verify",
            "--input",
            lin.to_str().unwrap(),
            "--cert",
            cert.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{check}");
    }

    let mp = example("cubic_mpec.json");
    let cert = dir.path().join("mpec.json");
    let out = run(&[
        "mpec",
        "search",
        "--input",
        mp.to_str().unwrap(),
        "--output",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(c["certificate"]["w"], serde_json::json!(["0", "0", "-1"]));
    let out = run(&[
        "mpec",
        "verify",
        "--input",
        mp.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));

    c["certificate"]["w"] = serde_json::json!(["0", "0", "-2"]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&c).unwrap()).unwrap();
    let out = run(&[
        "mpec",
        "verify",
        "--input",
        mp.to_str().unwrap(),
        "--cert",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("x-equation residual nonzero"));
}

#[test]
fn mpec_commands() {
    let (code, out, _) = run_on(&["mpec", "analyze"], "cubic_mpec.json");
    assert_eq!(code, 0);
    assert_eq!(out["constancy"]["status"], "certified_singleton");
    assert_eq!(out["multiplier_set"]["vertices"], serde_json::json!([["0", "0"]]));
    assert_eq!(out["critical_cone"]["ineqs"], serde_json::json!([["0", "0", "1"]]));

    for sub in ["analyze", "search"] {
        let (code, _, err) = run_on(&["mpec", sub], "opposite_rays_mpec.json");
        assert_eq!(code, 4, "{sub}");
        assert!(err["witness"]["v1"].is_array() && err["witness"]["v2"].is_array());
    }
}

#[test]
fn selftest_and_fault_injection() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["selftest", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert!(!err["failures"].as_array().unwrap().is_empty());
}

#[test]
fn face_limit_flag_and_environment() {
    let file = example("complementarity_set.json");
    let args = ["analyze-set", "--what", "limiting", "--input", file.to_str().unwrap()];
    let mut with_flag = args.to_vec();
    with_flag.extend(["--max-faces", "1"]);
    let out = run(&with_flag);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("too_many_faces"));

    let out = Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(args)
        .env("CONEKIT_MAX_FACES", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_conekit"))
        .args(args)
        .env("CONEKIT_MAX_FACES", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
