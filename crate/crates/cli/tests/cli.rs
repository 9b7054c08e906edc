//! End-to-end runs of the compseq binary: exit codes, JSON surfaces and
//! reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn compseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compseq"))
        .args(args)
        .env_remove("COMPSEQ_FIELD_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn rates_match_reference_row() {
    let out = compseq(&["rates", "--p", "5", "--m", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("0.369"), "{text}");
    assert!(text.contains("0.159"), "{text}");
    assert!(text.contains("125"), "{text}");

    let out = compseq(&["rates", "--p", "5", "--m", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["info_rate"], 0.369);
    assert_eq!(v["code_rate"], 0.159);
    assert_eq!(v["pmepr_bound"], 5);
}

#[test]
fn enumerate_counts_and_family_file() {
    let out = compseq(&["enumerate", "--p", "3", "--m", "2", "--exhaustive"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("486\n"), "{text}");
    assert!(text.contains("exhaustive dedup: 486"), "{text}");

    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("family.json");
    let out = compseq(&[
        "enumerate",
        "--p",
        "2",
        "--m",
        "3",
        "--exhaustive",
        "--output",
        fam.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&fam).unwrap()).unwrap();
    assert_eq!(v["count"], 48);
    assert_eq!(v["sequences"].as_array().unwrap().len(), 48);

    // the family file feeds the distance command
    let out = compseq(&["distance", "--input", fam.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["min_distance"].as_u64().unwrap() >= 1);
}

#[test]
fn pp_list_f5() {
    let out = compseq(&["pp", "list", "--p", "5", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 6);
    let polys = v["polynomials"].as_array().unwrap();
    let expect: Vec<serde_json::Value> = [
        vec![0u32, 0, 0, 1],
        vec![0, 1],
        vec![0, 2, 1, 1],
        vec![0, 2, 4, 1],
        vec![0, 3, 2, 1],
        vec![0, 3, 3, 1],
    ]
    .iter()
    .map(|c| serde_json::json!(c))
    .collect();
    assert_eq!(polys, &expect);
}

fn construct_golay(path: &Path) -> Output {
    compseq(&[
        "construct",
        "css",
        "--p",
        "2",
        "--n",
        "1",
        "--m",
        "2",
        "--seed-matrix",
        "dft",
        "--output",
        path.to_str().unwrap(),
    ])
}

#[test]
fn construct_verify_round_trip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert!(construct_golay(&a).status.success());
    assert!(construct_golay(&b).status.success());
    assert_eq!(
        fs::read(&a).unwrap(),
        fs::read(&b).unwrap(),
        "non-deterministic output"
    );

    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(v["role"], "css");
    assert_eq!(
        v["sequences"],
        serde_json::json!([[0, 0, 0, 1], [0, 1, 0, 0]])
    );

    let out = compseq(&["verify", "css", "--input", a.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass"));
}

#[test]
fn construct_quaternary_ccc() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ccc.json");
    let out = compseq(&[
        "construct",
        "ccc",
        "--p",
        "2",
        "--n",
        "2",
        "--m",
        "2",
        "--q",
        "4",
        "--seed-matrix",
        "field",
        "--pp-left",
        "0",
        "--pp-right",
        "1",
        "--d",
        "3",
        "--bound-right",
        "0,0,1",
        "--linear",
        "1,1,0,2,3,1,0",
        "--perm",
        "1,0,3,2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = compseq(&["verify", "ccc", "--input", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn construct_quinary_css_by_index() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("css.json");
    let out = compseq(&[
        "construct",
        "css",
        "--p",
        "5",
        "--m",
        "3",
        "--seed-matrix",
        "dft",
        "--pp-left",
        "0",
        "--pp-right",
        "5",
        "--d",
        "2,3",
        "--bound-left",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["sequences"].as_array().unwrap().len(), 5);
    assert_eq!(v["sequences"][0].as_array().unwrap().len(), 125);
    let out = compseq(&["verify", "css", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
}

#[test]
fn construct_from_sequence_seed() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("mseq.json");
    fs::write(&seq, r#"{"q":2,"values":[0,1,1]}"#).unwrap();
    let set = dir.path().join("set.json");
    let out = compseq(&[
        "construct",
        "css",
        "--p",
        "2",
        "--n",
        "2",
        "--m",
        "2",
        "--q",
        "2",
        "--seed-matrix",
        &format!("sequence:{}", seq.display()),
        "--output",
        set.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = compseq(&["verify", "css", "--input", set.to_str().unwrap()]);
    assert!(out.status.success());

    // an unbalanced sequence is rejected up front
    fs::write(&seq, r#"{"q":2,"values":[0,0,1]}"#).unwrap();
    let out = compseq(&[
        "construct",
        "css",
        "--p",
        "2",
        "--n",
        "2",
        "--m",
        "2",
        "--q",
        "2",
        "--seed-matrix",
        &format!("sequence:{}", seq.display()),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.json");
    assert!(construct_golay(&path).status.success());
    let mut v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["sequences"][1][0] = serde_json::json!(1);
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = compseq(&["verify", "css", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn distinct_exit_codes() {
    // usage: non-prime p
    let out = compseq(&["construct", "css", "--p", "9", "--n", "1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    // I/O: missing input
    let out = compseq(&["verify", "css", "--input", "/nonexistent/set.json"]);
    assert_eq!(out.status.code(), Some(3));
    // cap: factorial enumeration refused
    let out = compseq(&["pp", "list", "--p", "2", "--n", "6"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn autocorr_check_spectra() {
    let out = compseq(&[
        "autocorr",
        "check",
        "--p",
        "2",
        "--n",
        "5",
        "--spectrum",
        "1:1,5:1,7:1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass"));

    // Gold-style two-term spectrum over F_8 is not 2-level
    let out = compseq(&[
        "autocorr",
        "check",
        "--p",
        "2",
        "--n",
        "3",
        "--spectrum",
        "1:1,3:1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["two_level"], false);
    assert!(v["failing_shift"].is_u64());

    // subfield coset exponent is a usage error
    let out = compseq(&[
        "autocorr",
        "check",
        "--p",
        "2",
        "--n",
        "6",
        "--spectrum",
        "9:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bh_and_pu_checks() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("dft6.json");
    let phase: Vec<Vec<u32>> = (0..6)
        .map(|u| (0..6).map(|v| u * v % 6).collect())
        .collect();
    fs::write(
        &matrix,
        serde_json::to_string(&serde_json::json!({"q": 6, "N": 6, "phase": phase})).unwrap(),
    )
    .unwrap();
    let out = compseq(&["bh", "verify", "--input", matrix.to_str().unwrap()]);
    assert!(out.status.success());

    let flat = dir.path().join("flat.json");
    fs::write(&flat, r#"{"q":2,"N":2,"phase":[[0,0],[0,0]]}"#).unwrap();
    let out = compseq(&["bh", "verify", "--input", flat.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["witness"], serde_json::json!([0, 1]));

    let chain = dir.path().join("chain.json");
    let dft2 = serde_json::json!({"q": 2, "N": 2, "phase": [[0, 0], [0, 1]]});
    fs::write(
        &chain,
        serde_json::to_string(&serde_json::json!({"p": 2, "n": 1, "matrices": [dft2, dft2, dft2]}))
            .unwrap(),
    )
    .unwrap();
    let out = compseq(&["pu", "check", "--chain", chain.to_str().unwrap(), "--json"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["constant"], 8);
}

#[test]
fn field_config_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("fields.json");
    fs::write(&cfg, r#"{"2,3": [1,0,1,1]}"#).unwrap();
    // m-sequences stay 2-level under any primitive polynomial
    let out = Command::new(env!("CARGO_BIN_EXE_compseq"))
        .args([
            "autocorr",
            "check",
            "--p",
            "2",
            "--n",
            "3",
            "--spectrum",
            "1:1",
        ])
        .env("COMPSEQ_FIELD_CONFIG", cfg.to_str().unwrap())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // a reducible override is rejected as usage error
    fs::write(&cfg, r#"{"2,3": [1,1,1,1]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_compseq"))
        .args([
            "autocorr",
            "check",
            "--p",
            "2",
            "--n",
            "3",
            "--spectrum",
            "1:1",
        ])
        .env("COMPSEQ_FIELD_CONFIG", cfg.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
