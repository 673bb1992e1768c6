use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ttmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttmap")).args(args).output().expect("spawn ttmap")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = ttmap(&all);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (v, o.status.code().unwrap())
}

/// Compares against `tests/golden/<name>.json`, ignoring timing. Set
/// `UPDATE_GOLDEN=1` to rewrite the file.
fn golden(name: &str, args: &[&str]) -> Value {
    let (mut v, code) = json(args);
    assert_eq!(code, 0, "{v}");
    v.as_object_mut().unwrap().remove("elapsed_ms");
    let path = Path::new("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, serde_json::to_string_pretty(&v).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v, want, "golden {name}");
    v
}

#[test]
fn golden_outputs() {
    let v = golden("check_tt", &["check-tt", "--g", "k_4", "--h", "k_3", "--map", "tests/data/factorization.map", "--group", "Z_2"]);
    assert_eq!(v["result"], true);
    let v = golden("divisor_set", &["divisor-set", "--g", "dc_9", "--h", "tests/data/k2.txt", "--map", "tests/data/const9.map"]);
    assert_eq!(v["result"], "{1,3,9}");
    let v = golden("gm", &["gm", "--g", "tests/data/petersen.g6", "--group", "Z_2"]);
    assert_eq!(v["result"], 5);
    let v = golden("find_tt_z6", &["find-tt", "--g", "dc_9", "--h", "dc_7", "--group", "Z_6"]);
    assert_eq!((v["result"].clone(), v["proof_status"].clone()), (Value::Bool(false), "exhaustive".into()));
    golden("find_hom", &["find-hom", "--g", "c_5", "--h", "petersen"]);
    golden("nice_k4", &["nice", "--g", "k_4"]);
    golden("tt_set_circuits", &["tt-set-circuits", "--a", "9", "--b", "7"]);
}

#[test]
fn schema_is_shared() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["check-cut-tt", "--g", "dc_9", "--h", "tests/data/k2.txt", "--map", "tests/data/const9.map"],
        vec!["compare", "--g", "petersen", "--h", "c_5"],
        vec!["rigid", "--g", "c_5"],
        vec!["chi", "--g", "grotzsch"],
        vec!["chi-tt", "--g", "k_4"],
        vec!["homotens-pair", "--g", "k_5", "--h", "k_5"],
        vec!["k5-check", "--h", "k_6"],
        vec!["delta", "--h", "c_5"],
        vec!["cone", "--a", "9", "--b", "7", "--n", "3"],
        vec!["construct", "subdivide", "--h", "k_3", "--p", "3"],
        vec!["construct", "product", "--h", "k_2", "--r", "c_5"],
    ];
    for args in cases {
        let (v, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["elapsed_ms", "params", "proof_status", "result", "verb", "witness"], "{args:?}");
        assert!(["exhaustive", "budget", "n/a"].contains(&v["proof_status"].as_str().unwrap()));
    }
}

#[test]
fn witnesses_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("w.map");
    let map_s = map.to_str().unwrap();
    let o = ttmap(&["find-tt", "--g", "dc_9", "--h", "dc_7", "--group", "Z_3", "--out", map_s]);
    assert!(o.status.success());
    let o = ttmap(&["check-tt", "--g", "dc_9", "--h", "dc_7", "--map", map_s, "--group", "Z_3"]);
    assert_eq!(stdout(&o).trim(), "true");

    let o = ttmap(&["find-tt", "--g", "petersen", "--h", "c_5", "--out", map_s]);
    assert!(o.status.success());
    let o = ttmap(&["check-tt", "--g", "petersen", "--h", "c_5", "--map", map_s]);
    assert_eq!(stdout(&o).trim(), "true");

    let g = dir.path().join("d.txt");
    let g_s = g.to_str().unwrap();
    assert!(ttmap(&["delta", "--h", "c_5", "--out", g_s]).status.success());
    // two Clebsch components
    let (v, _) = json(&["chi", "--g", g_s]);
    assert_eq!(v["result"], 4);

    let f = dir.path().join("f.txt");
    let f_s = f.to_str().unwrap();
    let o = ttmap(&["functor-f", "--g", "k_2", "--base", "../core/data/rigid11.txt", "--out", f_s]);
    assert_eq!(stdout(&o).trim(), "24 vertices, 46 edges");
    // the base copies are non-bipartite with odd girth 5
    let (v, _) = json(&["gm", "--g", f_s]);
    assert_eq!(v["result"], 5);
}

#[test]
fn exit_codes() {
    let o = ttmap(&["find-tt", "--g", "k_6", "--h", "k_5", "--budget-nodes", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("proof: budget"));
    assert_eq!(ttmap(&["no-such-verb"]).status.code(), Some(1));
    assert_eq!(ttmap(&["gm"]).status.code(), Some(1));
    assert_eq!(ttmap(&["gm", "--g", "not_a_graph"]).status.code(), Some(1));
    assert_eq!(ttmap(&["check-tt", "--g", "k_3", "--h", "k_3", "--map", "tests/data/factorization.map"]).status.code(), Some(1));
    assert_eq!(ttmap(&["gm", "--g", "petersen", "--group", "Q"]).status.code(), Some(1));
    // orientation-sensitive questions on undirected graphs
    assert_eq!(ttmap(&["check-cut-tt", "--g", "k_4", "--h", "k_3", "--map", "tests/data/factorization.map"]).status.code(), Some(1));
    assert_eq!(ttmap(&["check-tt", "--g", "k_4", "--h", "k_3", "--map", "tests/data/factorization.map", "--group", "Z_3"]).status.code(), Some(1));
    assert_eq!(ttmap(&["--help"]).status.code(), Some(0));
    let (v, code) = json(&["rigid-search", "--max-vertices", "6"]);
    assert_eq!((code, v["proof_status"].as_str()), (0, Some("exhaustive")));
    assert_eq!(v["result"]["found"], false);
}

#[test]
fn experiment_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let fails = dir.path().join("fails");
    let args = ["experiment", "--n", "7", "--p", "0.6", "--trials", "20", "--seed", "5", "--failures-dir", fails.to_str().unwrap()];
    let (a, code) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a["result"], b["result"]);
    let misses = a["result"]["misses"].as_u64().unwrap();
    assert_eq!(fs::read_dir(&fails).unwrap().count() as u64, misses);
    let (full, _) = json(&["experiment", "--n", "6", "--p", "1", "--trials", "3"]);
    assert_eq!(full["result"]["fraction"], 1.0);
}
