use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bochner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bochner")).args(args).output().expect("spawn bochner")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_model(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["model"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path]);
    let out = bochner(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn eigenvalues(v: &Value) -> Vec<f64> {
    v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn flat_model_spectrum_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let flat = write_model(dir.path(), "flat.json", &["flat", "--d", "6"]);
    let out = bochner(&["spectrum", "--algebra", "u", "-i", &flat]);
    assert_eq!(code(&out), 0);
    let mu = eigenvalues(&json(&out));
    assert_eq!(mu.len(), 9);
    assert!(mu.iter().all(|&x| x == 0.0));
}

#[test]
fn chsc_and_hpm_spectra() {
    let dir = tempfile::tempdir().unwrap();
    let chsc = write_model(dir.path(), "chsc.json", &["chsc", "--n", "3", "--c", "4"]);
    let mu = eigenvalues(&json(&bochner(&["spectrum", "-i", &chsc])));
    assert_eq!(mu.len(), 9);
    assert!(mu[..8].iter().all(|x| (x - 2.0).abs() < 1e-10), "{mu:?}");
    assert!((mu[8] - 8.0).abs() < 1e-10);

    let hpm = write_model(dir.path(), "hpm.json", &["hpm", "--m", "2"]);
    let mu = eigenvalues(&json(&bochner(&["spectrum", "--algebra", "sp", "-i", &hpm])));
    assert_eq!(mu.len(), 13);
    assert!(mu.iter().all(|&x| x > 0.0));
}

#[test]
fn leaky_operator_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = write_model(dir.path(), "sphere.json", &["constant", "--d", "4"]);
    let out = bochner(&["spectrum", "--algebra", "u", "-i", &sphere]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("leaks"));
    let out = bochner(&["spectrum", "--algebra", "so", "-i", &sphere]);
    assert_eq!(code(&out), 0);
    assert!(eigenvalues(&json(&out)).iter().all(|x| (x - 1.0).abs() < 1e-12));
}

#[test]
fn model_files_feed_every_consumer() {
    let dir = tempfile::tempdir().unwrap();
    let chsc = write_model(dir.path(), "chsc.json", &["chsc", "--n", "2"]);
    for args in [
        vec!["decompose", "kahler", "-i", &chsc],
        vec!["sharp-norm", "-i", &chsc],
        vec!["weitz", "verify", "-i", &chsc],
        vec!["check", "bochner", "--n", "2", "-i", &chsc],
    ] {
        let out = bochner(&args);
        assert!(code(&out) == 0 || code(&out) == 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        json(&out);
    }
    let hpm = write_model(dir.path(), "hpm.json", &["hpm", "--m", "2"]);
    let out = bochner(&["decompose", "quaternion", "-i", &hpm]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    json(&out);
}

#[test]
fn model_output_is_deterministic() {
    let a = bochner(&["model", "hpm", "--m", "2"]);
    let b = bochner(&["model", "hpm", "--m", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_is_byte_identical_for_a_seed() {
    let a = bochner(&["verify", "lemma212", "--seed", "42", "--samples", "10"]);
    let b = bochner(&["verify", "lemma212", "--seed", "42", "--samples", "10"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = bochner(&["verify", "lemma212", "--seed", "43", "--samples", "10"]);
    assert_ne!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["suite"], "lemma212");
    assert_eq!(v["seed"], 42);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "identities", "--samples", "100"],
        vec!["verify", "bochner-tracefree", "--n", "3", "--samples", "20"],
        vec!["verify", "prop27", "--n", "2", "--samples", "5"],
    ] {
        let out = bochner(&args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn printed_quaternion_coefficient_fails_visibly() {
    let out = bochner(&["verify", "lemma213", "--samples", "3"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["pass"], false);
    let cases = v["cases"].as_array().unwrap();
    for c in cases {
        let id = c["id"].as_str().unwrap();
        assert_eq!(c["pass"].as_bool().unwrap(), id.contains("casimir"), "{id}");
    }
}

#[test]
fn forms_checks() {
    let out = bochner(&["forms", "check-prop27", "--n", "3", "--p", "2", "--q", "1", "--k", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pass"], true);
    let out = bochner(&["forms", "check-prop28", "--n", "2", "--p", "1", "--q", "0"]);
    assert_eq!(code(&out), 0);
    let out = bochner(&["forms", "check-prop27", "--n", "2", "--p", "1", "--q", "1", "--k", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn pq_verdicts_and_exit_codes() {
    let base = ["check", "pq", "--n", "2", "--p", "1", "--q", "0"];
    let run = |extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        bochner(&args)
    };
    let out = run(&["--model", "chsc", "--c", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["conclusion"], "vanishing");
    assert!(v["condition_value"].as_f64().unwrap() > 0.0);

    let out = run(&["--model", "flat"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["conclusion"], "parallel");
    assert_eq!(v["condition_value"], 0.0);

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("mu.json");
    std::fs::write(&spec, "[-10, 1, 1, 1]").unwrap();
    let out = run(&["--spectrum", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["conclusion"], "inconclusive");

    std::fs::write(&spec, "[3, 1, 1, 1]").unwrap();
    assert_eq!(code(&run(&["--spectrum", spec.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&[])), 1);
}

#[test]
fn spectrum_output_feeds_check() {
    let dir = tempfile::tempdir().unwrap();
    let chsc = write_model(dir.path(), "chsc.json", &["chsc", "--n", "2"]);
    let mu = dir.path().join("mu.json").to_string_lossy().into_owned();
    assert_eq!(code(&bochner(&["spectrum", "-i", &chsc, "-o", &mu])), 0);
    let out = bochner(&["check", "pq", "--n", "2", "--p", "1", "--q", "1", "--spectrum", &mu]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["conclusion"], "vanishing");
    assert_eq!(v["theorem_id"], "T3_4");
}

#[test]
fn quaternion_and_bochner_admissibility() {
    let out = bochner(&["check", "quaternion", "--m", "2", "--k", "0.6", "--Q", "2", "--model", "hpm", "--scalar-flat"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["kappa_admissible"], false);

    let out = bochner(&["check", "bochner", "--n", "2", "--k", "1/4", "--model", "flat"]);
    assert_eq!(json(&out)["kappa_admissible"], false);
    let out = bochner(&["check", "bochner", "--n", "2", "--model", "flat"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["conclusion"], "bochner_flat");
}
