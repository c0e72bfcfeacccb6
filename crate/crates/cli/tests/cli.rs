//! End-to-end tests of the binary: exit-code contract, JSON shapes, and the
//! file formats.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn epilat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_epilat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).expect("write test file");
}

#[test]
fn applicable_exit_codes() {
    let yes = epilat(&["applicable", "xx", "abab"]);
    assert_eq!(code(&yes), 0);
    let json = stdout_json(&yes);
    assert_eq!(json["applicable"], Value::Bool(true));
    assert_eq!(json["witness"]["substitution"]["x"], "ab");
    assert_eq!(json["witness"]["start"], 0);
    assert_eq!(json["witness"]["end"], 4);

    let no = epilat(&["applicable", "xx", "aba"]);
    assert_eq!(code(&no), 1);
    assert_eq!(stdout_json(&no)["applicable"], Value::Bool(false));

    let short = epilat(&["applicable", "xy", "a"]);
    assert_eq!(code(&short), 1);

    let bad = epilat(&["applicable", "@@", "a"]);
    assert_eq!(code(&bad), 2);

    let budget = epilat(&["applicable", "xx", "abab", "--budget", "1"]);
    assert_eq!(code(&budget), 3);
}

#[test]
fn applicable_raw_letter_ids() {
    let out = epilat(&["applicable", "23,23", "0,1,0,1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn squarefree_check_and_enumerate() {
    assert_eq!(code(&epilat(&["squarefree", "check", "abcacb"])), 0);
    let sq = epilat(&["squarefree", "check", "abab"]);
    assert_eq!(code(&sq), 1);
    assert_eq!(stdout_json(&sq)["square"]["root"], "ab");

    let out = epilat(&[
        "squarefree",
        "enumerate",
        "--alphabet",
        "2",
        "--max-len",
        "10",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["count"], 6);
    assert_eq!(json["words"][5], "bab");
}

#[test]
fn family_generate_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    let generate = epilat(&["family", "generate", "4", "--out", fam.to_str().unwrap()]);
    assert_eq!(code(&generate), 0);
    let cert = stdout_json(&generate);
    assert_eq!(cert["member_count"], 4);
    assert_eq!(cert["checked_pairs"], 12);

    let verify = epilat(&["family", "verify", fam.to_str().unwrap()]);
    assert_eq!(code(&verify), 0);

    // duplicating a member breaks verification with a pair counterexample
    let members: Value = serde_json::from_str(&std::fs::read_to_string(&fam).unwrap()).unwrap();
    let mut dup = members.as_array().unwrap().clone();
    let mut copy = dup[0].clone();
    copy["index"] = Value::String("9/1".to_string());
    dup.push(copy);
    let dup_path = dir.path().join("dup.json");
    write(&dup_path, &serde_json::to_string(&dup).unwrap());
    let bad = epilat(&["family", "verify", dup_path.to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    let json = stdout_json(&bad);
    assert_eq!(json["counterexample"]["kind"], "applicable_pair");
}

#[test]
fn family_square_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    write(&path, r#"[{"index": "0/1", "word": "abab"}]"#);
    let out = epilat(&["family", "verify", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let json = stdout_json(&out);
    assert_eq!(json["counterexample"]["kind"], "square");
    assert_eq!(json["counterexample"]["witness"]["root"], "ab");
}

#[test]
fn family_generation_exhausted_exit_code() {
    let out = epilat(&["family", "generate", "1000", "--max-length", "10"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn variety_compare_chain_and_antichain() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    let generate = epilat(&[
        "family",
        "generate",
        "--pool=-2..2/4",
        "--out",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&generate), 0);

    let chain = epilat(&[
        "variety",
        "compare",
        "C:1:0",
        "C:1:1",
        "--pool=-2..2/4",
        "--family",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&chain), 0);
    let json = stdout_json(&chain);
    assert_eq!(json["comparison"]["verdict"], "a-strictly-below");
    assert!(json["comparison"]["witness"].is_string());

    let anti = epilat(&[
        "variety",
        "compare",
        "A:1:0",
        "A:1:1",
        "--pool=-2..2/4",
        "--family",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&anti), 0);
    let json = stdout_json(&anti);
    assert_eq!(json["comparison"]["verdict"], "incomparable");
    assert!(json["comparison"]["witness_not_below_a"].is_string());
    assert!(json["comparison"]["witness_not_below_b"].is_string());

    let equal = epilat(&[
        "variety",
        "compare",
        "C:1:0",
        "C:1:0",
        "--pool=-2..2/4",
        "--family",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(stdout_json(&equal)["comparison"]["verdict"], "equal");
}

#[test]
fn variety_missing_family_member_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("small.json");
    let generate = epilat(&[
        "family",
        "generate",
        "--pool=0..1/1",
        "--out",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&generate), 0);
    let out = epilat(&[
        "variety",
        "compare",
        "C:1:0",
        "C:1:1",
        "--pool=-2..2/4",
        "--family",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn variety_build_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    assert_eq!(
        code(&epilat(&[
            "family",
            "generate",
            "--pool=-1..1/2",
            "--out",
            fam.to_str().unwrap()
        ])),
        0
    );
    let spec = dir.path().join("spec.json");
    write(
        &spec,
        r#"{"kind": "C", "n": 2, "xi": "0/1", "pool": ["-1/1", "-1/2", "0/1", "1/2", "1/1"]}"#,
    );
    let out = epilat(&[
        "variety",
        "build",
        spec.to_str().unwrap(),
        "--family",
        fam.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["nil_exponent"], 3);
    assert_eq!(json["extra_generators"].as_array().unwrap().len(), 3);
}

#[test]
fn variety_free_object() {
    let out = epilat(&[
        "variety",
        "free-object",
        "--gens",
        "xx",
        "--alphabet",
        "2",
        "--max-len",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["count"], 6);
    assert_eq!(json["words"][0], "a");
    assert_eq!(json["words"][5], "bab");
}

#[test]
fn lattice_analyze_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let n5 = dir.path().join("n5.json");
    write(
        &n5,
        r#"{"size": 5, "leq": [[0,1],[1,3],[3,4],[0,2],[2,4]], "labels": ["0","a","b","c","1"]}"#,
    );
    let out = epilat(&["lattice", "analyze", n5.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["lower_modular"], serde_json::json!([0, 2, 3, 4]));

    let dot = epilat(&["lattice", "dot", n5.to_str().unwrap()]);
    assert_eq!(code(&dot), 0);
    let text = String::from_utf8_lossy(&dot.stdout);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 5);
    assert!(text.contains("label=\"c\""));

    // a poset that is not a lattice is an input error
    let bowtie = dir.path().join("bowtie.json");
    write(&bowtie, r#"{"size": 4, "leq": [[0,2],[0,3],[1,2],[1,3]]}"#);
    assert_eq!(
        code(&epilat(&["lattice", "analyze", bowtie.to_str().unwrap()])),
        2
    );
}

#[test]
fn lattice_check_lemmas_eq4() {
    let out = epilat(&["lattice", "check-lemmas", "--eq", "4"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["chain_separation"]["holds"], Value::Bool(true));
    assert_eq!(json["antichain_separation"]["holds"], Value::Bool(true));
    assert_eq!(json["vv_proposition"]["holds"], Value::Bool(true));
}

#[test]
fn epigroup_analyze_examples() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = dir.path().join("c3.json");
    write(&c3, r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#);
    let out = epilat(&["epigroup", "analyze", c3.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["index"], 1);
    assert_eq!(json["pseudo_inverse"], serde_json::json!([0, 2, 1]));
    assert_eq!(json["member_of_e_n"], Value::Bool(true));

    let null2 = dir.path().join("null2.json");
    write(&null2, r#"{"order": 2, "table": [[0,0],[0,0]]}"#);
    let out = epilat(&["epigroup", "analyze", null2.to_str().unwrap(), "--n", "1"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["index"], 2);
    assert_eq!(json["member_of_e_n"], Value::Bool(false));

    let bad = dir.path().join("bad.json");
    write(&bad, r#"{"order": 2, "table": [[1,0],[0,0]]}"#);
    let out = epilat(&["epigroup", "analyze", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout_json(&out)["details"]["triple"].is_array());
}

#[test]
fn epigroup_supplied_unary() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = dir.path().join("c3u.json");
    write(
        &c3,
        r#"{"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]], "unary": [0,1,2]}"#,
    );
    let out = epilat(&[
        "epigroup",
        "analyze",
        c3.to_str().unwrap(),
        "--supplied-unary",
    ]);
    assert_eq!(code(&out), 0);
    // the identity map is not a valid pseudo-inversion for the 3-cycle
    assert_eq!(stdout_json(&out)["member_of_e_n"], Value::Bool(false));
}

#[test]
fn epigroup_scan_is_clean() {
    let out = epilat(&["epigroup", "scan"]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["all_invariants_hold"], Value::Bool(true));
    assert_eq!(json["orders"][2]["semigroups"], 113);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let fam_a = dir.path().join("a.json");
    let fam_b = dir.path().join("b.json");
    for (path, manifest) in [(&fam_a, "ma.json"), (&fam_b, "mb.json")] {
        let m = dir.path().join(manifest);
        let out = epilat(&[
            "family",
            "generate",
            "5",
            "--out",
            path.to_str().unwrap(),
            "--manifest",
            m.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(
        std::fs::read(&fam_a).unwrap(),
        std::fs::read(&fam_b).unwrap(),
        "identical invocations must produce identical outputs"
    );
}

#[test]
fn manifest_records_inputs_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    assert_eq!(
        code(&epilat(&[
            "family",
            "generate",
            "3",
            "--out",
            fam.to_str().unwrap()
        ])),
        0
    );
    let manifest = dir.path().join("manifest.json");
    let out = epilat(&[
        "family",
        "verify",
        fam.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(json["subcommand"], "family verify");
    let digest = json["input_digests"][fam.to_str().unwrap()]
        .as_str()
        .unwrap();
    assert_eq!(digest.len(), 64);
}
