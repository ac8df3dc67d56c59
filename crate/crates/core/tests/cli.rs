//! End-to-end runs of the `superpair` binary.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superpair"))
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = bin().args(args).env_remove("SUPERPAIR_OUT_DIR").output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("superpair-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn list_algebras_reports_ten_entries() {
    let (code, v) = run(&["list-algebras"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "superpair-report/1");
    let dims: Vec<u64> = v["results"].as_array().unwrap().iter().map(|a| a["real_dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 4, 8, 4, 8, 4, 2, 2, 4]);
}

#[test]
fn realize_q1_over_r() {
    let (code, v) = run(&["realize", "--family", "q", "--params", "1", "--field", "R"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["span"]["graded_dim"], serde_json::json!([1, 1]));
}

#[test]
fn verify_tables_passes_and_is_reproducible() {
    let dir = scratch("tables");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for (p, jobs) in [(&a, "1"), (&b, "3")] {
        let st = bin().args(["verify-tables", "--minimal", "--jobs", jobs, "--out"]).arg(p).status().unwrap();
        assert_eq!(st.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 20);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn out_dir_from_environment() {
    let dir = scratch("env");
    let st = bin().args(["howe", "--max-degree", "2"]).env("SUPERPAIR_OUT_DIR", &dir).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let v: Value = serde_json::from_slice(&std::fs::read(dir.join("howe.json")).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"]["per_degree"][2]["dim"], 5);
}

#[test]
fn invariant_commands() {
    for args in [
        vec!["double-commutant", "--pair", "gl11c"],
        vec!["double-commutant", "--pair", "II:1", "--max-degree", "2"],
        vec!["wc-invariants", "--pair", "pfaffian"],
        vec!["wc-invariants", "--pair", "spo21-osp20", "--max-degree", "2"],
        vec!["crosscheck", "--complexification"],
        vec!["crosscheck", "--family", "osp", "--params", "1,0,1"],
        vec!["commutant", "--pair", "I:3", "--side", "g-prime"],
        vec!["verify-pair", "--pair", "I:1:1,0,1;2,1,0"],
    ] {
        let (code, v) = run(&args);
        assert_eq!(code, 0, "{args:?}: {v}");
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn degenerate_shape_is_a_finding() {
    // o(2) is abelian: its commutant is larger than spo(2|1).
    let (code, v) = run(&["verify-pair", "--pair", "IC:1:1,1;2,0"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["commutant_of_g_ok"], true);
    assert_eq!(v["results"]["commutant_of_g_prime_ok"], false);
}

#[test]
fn exit_codes_for_usage_and_resource_errors() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["realize", "--family", "nope"]).0, 2);
    assert_eq!(run(&["verify-pair", "--pair", "I:99"]).0, 2);
    assert_eq!(run(&["double-commutant", "--pair", "gl11c", "--guard", "10"]).0, 2);
    assert_eq!(run(&["howe", "--guard", "0"]).0, 2);
}

#[test]
fn library_entry_point_matches() {
    let dir = scratch("lib");
    let p = dir.join("r.json");
    let code = superpair::cli::run(["superpair", "realize", "--family", "gl", "--params", "1,1", "--field", "C", "--out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(v["results"]["span"]["graded_dim"], serde_json::json!([4, 4]));
}
