//! Drives the installed binary end to end: JSON shape, exit codes,
//! stdout/stderr separation, determinism, and file round-trips.

use rand::SeedableRng;
use rigidim::io::{parse_algebra_file, parse_module_file};
use rigidim::rep::Rep;
use rigidim::rigidity::enumerate_indecomposables;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn examples() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "examples"].iter().collect()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rigidim"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn example(name: &str) -> String {
    examples().join(name).to_str().expect("utf8 path").to_string()
}

#[test]
fn cf_report_matches_the_contract() {
    let (code, stdout, _) = run(&["cf", &example("cyc2.alg")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    assert_eq!(v["cf"]["value"], 3);
    assert_eq!(v["cf"]["status"], "exact");
    assert_eq!(v["witness"], serde_json::json!(["P1", "P2", "S1"]));
    assert_eq!(v["completeness"], "exact");
    assert_eq!(v["rep_n_finite_up_to"], 2);
    // key order is part of the output contract
    assert!(stdout.starts_with("{\"cf\":{\"value\":3,\"status\":\"exact\"}"));
}

#[test]
fn same_input_same_bytes() {
    let a = run(&["cf", &example("nak3.alg"), "--seed", "5"]);
    let b = run(&["cf", &example("nak3.alg"), "--seed", "5"]);
    assert_eq!(a, b);
    let c = run(&["invariants", &example("a3r.alg")]);
    let d = run(&["invariants", &example("a3r.alg")]);
    assert_eq!(c, d);
}

#[test]
fn invariants_cover_both_shapes() {
    let (code, stdout, _) = run(&["invariants", &example("a2.alg")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["gldim"]["value"], 1);
    assert_eq!(v["selfinjective"], false);
    assert!(v.get("nodes").is_none(), "nodes only appear for self-injective algebras");

    let (code, stdout, _) = run(&["invariants", &example("cyc2.alg")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["gldim"]["status"], "infinite");
    assert_eq!(v["selfinjective"], true);
    assert_eq!(v["nodes"], serde_json::json!(["1", "2"]));
    assert_eq!(v["rho"], 2);
}

#[test]
fn mueller_reports_both_sides() {
    let (code, stdout, _) = run(&[
        "mueller",
        &example("cyc2.alg"),
        "--module",
        &example("b_plus_s1.mod"),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["evd_plus_two"]["value"], 3);
    assert_eq!(v["endo_domdim"]["value"], 3);
    assert_eq!(v["agree"], true);
}

#[test]
fn ext_command_counts_extensions() {
    let dir = tempfile::tempdir().unwrap();
    let s1 = dir.path().join("s1.mod");
    let p2 = dir.path().join("p2.mod");
    std::fs::write(&s1, "dims = [1, 0]\n").unwrap();
    std::fs::write(&p2, "dims = [0, 1]\n").unwrap();
    let (code, stdout, _) = run(&[
        "ext",
        &example("a2.alg"),
        "--from",
        s1.to_str().unwrap(),
        "--to",
        p2.to_str().unwrap(),
        "--degree",
        "1",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["ext_dim"], 1);
}

#[test]
fn evd_accepts_summand_files() {
    let (code, stdout, _) = run(&[
        "evd",
        &example("cyc2.alg"),
        "--module",
        &example("b_plus_s1.mod"),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["evd"]["value"], 1);
    assert_eq!(v["total_dim"], 5);
}

#[test]
fn indecs_round_trips_isomorphically() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x3_catalog.toml");
    let (code, stdout, _) =
        run(&["indecs", &example("x3.alg"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["count"], 3);
    assert_eq!(v["complete"], true);

    let alg = parse_algebra_file(&examples().join("x3.alg")).unwrap().algebra;
    let loaded = parse_module_file(&alg, &out).unwrap();
    assert!(loaded.complete);
    let reference = enumerate_indecomposables(&alg);
    assert_eq!(loaded.labels, reference.labels);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for (read, built) in loaded.summands.iter().zip(&reference.reps) {
        assert!(Rep::is_isomorphic(read, built, true, &mut rng).is_yes());
    }
}

#[test]
fn catalog_feeds_cf_and_maxortho() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nak3_catalog.toml");
    let (code, _, _) = run(&["indecs", &example("nak3.alg"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0);

    let (code, stdout, _) = run(&[
        "cf",
        &example("nak3.alg"),
        "--indecs",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["cf"]["value"], 4);

    let (code, stdout, _) = run(&[
        "maxortho",
        &example("nak3.alg"),
        "--module",
        &example("nak3_a_plus_s1.mod"),
        "--n",
        "2",
        "--indecs",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["self_orthogonal"], true);
    assert_eq!(v["is_maximal"], true);
}

#[test]
fn parse_failures_exit_two_and_quote_the_relation() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(
        &bad,
        "field = \"Q\"\nrelations = [\"a\"]\n\n[quiver]\nvertices = [\"1\", \"2\"]\n\n\
         [[quiver.arrows]]\nname = \"a\"\nfrom = \"1\"\nto = \"2\"\n",
    )
    .unwrap();
    let (code, stdout, stderr) = run(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty(), "stdout stays machine-clean on errors");
    assert!(stderr.contains("\"a\""), "diagnostic quotes the offending relation: {stderr}");

    let (code, _, _) = run(&["invariants", dir.path().join("absent.alg").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn unsupported_enumeration_exits_three() {
    let (code, stdout, stderr) = run(&["cf", &example("kronecker.alg")]);
    assert_eq!(code, 3);
    assert!(stdout.is_empty());
    assert!(stderr.contains("Nakayama"));
}

#[test]
fn strict_mode_rejects_bounds() {
    let (code, stdout, _) = run(&["cf", &example("cyc2.alg"), "--cutoff", "1", "--strict"]);
    assert_eq!(code, 4);
    // the interval report is still emitted before the strict exit
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["cf"]["status"], "at_least");
    assert_eq!(v["completeness"], "lower_bound_only");

    let (code, _, _) = run(&["cf", &example("cyc2.alg"), "--cutoff", "1"]);
    assert_eq!(code, 0, "without --strict a bound is an ordinary answer");
}
