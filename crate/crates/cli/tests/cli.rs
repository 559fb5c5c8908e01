use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperhom"));
    cmd.args(args).env_remove("HYPERHOM_BRUTE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, .. } = cmd.output().unwrap();
    let report: Value = serde_json::from_slice(&stdout).unwrap_or_else(|e| {
        panic!("stdout is not a report ({e}): {}", String::from_utf8_lossy(&stdout))
    });
    (status.code().unwrap(), report)
}

fn run(args: &[&str]) -> (i32, Value) {
    run_with(args, &[])
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperhom-cli-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn report_envelope() {
    let (code, r) = run(&["classify", "-g", &data("parity.sf")]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["tool", "version", "command", "status", "payload", "timing_ms"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(r["tool"], "hyperhom");
    assert_eq!(r["command"][0], "classify");
}

#[test]
fn classify_parity() {
    let (code, r) = run(&["classify", "-g", &data("parity.sf")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "tractable");
    let group = &r["payload"]["components"][0]["group"];
    assert_eq!(group["invariant_factors"], serde_json::json!([2]));
    assert_eq!(group["a"], 0);
}

#[test]
fn classify_not_all_zero() {
    let (code, r) = run(&["classify", "-g", &data("notallzero.sf")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "hard");
    assert_eq!(r["payload"]["kind"], "NotLatin");
    assert_eq!(r["payload"]["at"], "(0,1)");
}

#[test]
fn classify_hard_fixtures() {
    for (file, kind) in [("sts7.sf", "NotAssociative"), ("perturbed.sf", "UnequalClassSizes")] {
        let (code, r) = run(&["classify", "-g", &data(file)]);
        assert_eq!((code, r["status"].as_str()), (0, Some("hard")), "{file}");
        assert_eq!(r["payload"]["kind"], kind, "{file}");
    }
}

#[test]
fn eval_parity_edge() {
    let (code, r) = run(&["eval", "-g", &data("parity.sf"), "-i", &data("edge3.hg"), "--method", "auto"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "value");
    assert_eq!(r["payload"]["value"], "4");
    assert_eq!(r["payload"]["method"], "structured");
}

#[test]
fn structured_and_brute_agree_on_corpus() {
    let functions = ["parity.sf", "geometric.sf", "mixed.sf", "z4.sf", "half.sf"];
    let instances = ["edge3.hg", "k4.hg", "path.hg", "eq.csp", "repeat.csp"];
    for g in functions {
        let (_, c) = run(&["classify", "-g", &data(g)]);
        assert_eq!(c["status"], "tractable", "{g}");
        for i in instances {
            let value = |method: &str| {
                let (code, r) = run(&["eval", "-g", &data(g), "-i", &data(i), "--method", method]);
                assert_eq!(code, 0, "{g} on {i} with {method}: {r}");
                r["payload"]["value"].clone()
            };
            let brute = value("brute");
            assert_eq!(value("structured"), brute, "{g} on {i}");
            assert_eq!(value("dp-lambda"), brute, "{g} on {i}");
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut r: Value| {
        r.as_object_mut().unwrap().remove("timing_ms");
        r
    };
    for args in [
        vec!["classify", "-g", "mixed.sf"],
        vec!["classify", "-g", "sts7.sf"],
        vec!["eval", "-g", "mixed.sf", "-i", "k4.hg"],
        vec!["gadget", "power", "-i", "path.hg", "-j", "2"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.contains('.') { data(a) } else { a.to_string() })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = strip(run(&args).1);
        let b = strip(run(&args).1);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn input_errors_exit_one() {
    let cases: Vec<Vec<String>> = vec![
        vec!["classify".into(), "-g".into(), data("missing.sf")],
        vec!["eval".into(), "-g".into(), data("broken.sf"), "-i".into(), data("edge3.hg")],
        vec!["eval".into(), "--bogus".into()],
        vec!["eval".into(), "-g".into(), data("sts7.sf"), "-i".into(), data("large.hg")],
        vec!["eval".into(), "-g".into(), data("sts7.sf"), "-i".into(), data("edge3.hg"), "--method".into(), "structured".into()],
        vec!["gadget".into(), "separate".into(), "-i".into(), data("path.hg"), "-p".into(), "2".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, r) = run(&args);
        assert_eq!(code, 1, "{args:?}");
        assert_eq!(r["status"], "error");
        assert_eq!(r["payload"]["kind"], "input");
    }
}

#[test]
fn brute_cap_from_env_and_flag() {
    let args = ["eval", "-g", &data("geometric.sf"), "-i", &data("k4.hg"), "--method", "brute"];
    assert_eq!(run(&args).0, 0);
    let (code, r) = run_with(&args, &[("HYPERHOM_BRUTE_CAP", "8")]);
    assert_eq!(code, 1);
    assert!(r["payload"]["message"].as_str().unwrap().contains("cap 8"));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--brute-cap", "16"]);
    assert_eq!(run_with(&with_flag, &[("HYPERHOM_BRUTE_CAP", "8")]).0, 0);
}

#[test]
fn gadget_writes_instance_and_sidecar() {
    let dir = scratch_dir("gadget");
    let out = dir.join("stretched.hg");
    let (code, r) = run(&["gadget", "stretch", "-i", &data("loop.csp"), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let h = hyperhom::model::load_multi_hypergraph(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((h.n(), h.num_edges()), (7, 8));
    assert!(h.is_multi());
    let sidecar: Value = serde_json::from_str(&fs::read_to_string(dir.join("stretched.hg.json")).unwrap()).unwrap();
    assert_eq!(sidecar["construction"], "stretch");
    assert_eq!(sidecar["fresh"], 4);
    assert_eq!(r["payload"]["vertices"], 7);
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn gadget_payloads() {
    let (_, r) = run(&["gadget", "pad", "-i", &data("triangle.hg"), "-r", "3"]);
    assert_eq!((r["payload"]["vertices"].as_u64(), r["payload"]["edges"].as_u64()), (Some(6), Some(3)));
    let (_, r) = run(&["gadget", "tilde", "-g", &data("parity.sf"), "-k", "3"]);
    assert_eq!(r["payload"]["table"], serde_json::json!([["2", "0"], ["0", "2"]]));
    let (_, r) = run(&["gadget", "eq-elim", "-i", &data("eq.csp"), "-p", "1"]);
    assert_eq!((r["payload"]["vertices"].as_u64(), r["payload"]["edges"].as_u64()), (Some(5), Some(3)));
    let (_, r) = run(&["gadget", "separate", "-i", &data("edge3.hg"), "-p", "1"]);
    assert_eq!((r["payload"]["vertices"].as_u64(), r["payload"]["edges"].as_u64()), (Some(9), Some(7)));
    let (_, r) = run(&["gadget", "power", "-i", &data("edge3.hg"), "-j", "2"]);
    assert!(r["payload"]["hypergraph"].as_str().unwrap().starts_with("hypergraph v1\nn 9\n"));
}

#[test]
fn selftest_passes() {
    let (code, r) = run(&["selftest"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["payload"]["passed"].as_u64().unwrap() > 0);
}
