use std::process::{Command, Output};

use serde_json::Value;

fn realdp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realdp")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = realdp(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (v, out.status.code().unwrap())
}

fn checks_pass(v: &Value) -> bool {
    v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true)
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["lattice", "--degree", "12"][..],
        &["table", "--id", "8"],
        &["invariants", "--group", "q7", "--degree", "2"],
        &["dp1", "rationality", "--f4", "[1,0,2,0,1]", "--f6", "[1,0,3,0,3,0,1]"],
        &["cubic", "--model", "fermat"],
        &["dp4", "--form", "nonsense", "--enumerate-minimal"],
    ] {
        assert_eq!(realdp(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_shape() {
    let (v, code) = report(&["lattice", "--degree", "4", "--what", "lines"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1.0");
    assert_eq!(v["command"], "lattice");
    assert_eq!(v["inputs"]["degree"], 4);
    assert_eq!(v["results"].as_array().unwrap().len(), 16);
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "expected", "actual", "pass", "source"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["table", "--id", "4"][..], &["dp4", "--form", "q31_02", "--enumerate-minimal"], &["graph", "--degree", "5", "--sigma", "fig_b"]] {
        assert_eq!(realdp(args).stdout, realdp(args).stdout, "{args:?}");
    }
}

#[test]
fn tables_3_and_7() {
    let (v, code) = report(&["table", "--id", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 5);
    let (v, code) = report(&["table", "--id", "7"]);
    assert_eq!(code, 0);
    assert!(checks_pass(&v));
    let sources: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["source"].as_str().unwrap()).collect();
    assert!(sources.iter().all(|s| s.starts_with("table:7")));
}

#[test]
fn inputs_from_files() {
    let dir = std::env::temp_dir().join(format!("realdp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let roots = dir.join("roots.json");
    std::fs::write(&roots, "[[0,1,-1,0,0,0,0],[0,0,0,1,-1,0,0]]").unwrap();
    let (v, code) = report(&["classify-involution", "--degree", "3", "--roots", roots.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["class"], "A_1^2");
    assert_eq!(v["results"]["fingerprint"]["fixed_line_count"], 7);

    // reflection in e1 - e2 generates a group of order 2 with a contractible pair
    let gens = dir.join("gens.json");
    std::fs::write(&gens, "[[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]]").unwrap();
    let (v, code) = report(&["minimal", "--degree", "6", "--generators", gens.to_str().unwrap(), "--sigma", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["rank"], 3);
    assert_eq!(v["results"]["strongly_minimal"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn graph_dot() {
    let out = realdp(&["graph", "--degree", "6", "--sigma", "split", "--dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    let (v, _) = report(&["graph", "--degree", "5", "--sigma", "fig_b"]);
    assert_eq!(v["results"]["automorphism_order"], 8);
    assert_eq!(v["results"]["real_vertices"], 2);
}

#[test]
fn coordinate_commands() {
    let (v, code) = report(&["cubic", "--model", "clebsch", "--twist", "t1234", "--count-real-lines", "--count-real-tritangents"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["real_lines"], 7);
    assert_eq!(v["results"]["real_tritangents"], 5);
    let out = Command::new(env!("CARGO_BIN_EXE_realdp"))
        .args(["cubic", "--model", "clebsch", "--count-real-lines"])
        .env("REALDP_CONDUCTOR", "9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_realdp"))
        .args(["cubic", "--model", "fermat", "--count-real-lines"])
        .env("REALDP_CONDUCTOR", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let (v, code) = report(&["dp2-example", "--orbits"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["lines"].as_array().unwrap().len(), 56);
}

#[test]
fn invariants_and_degree_one() {
    let (v, code) = report(&["invariants", "--group", "z4", "--degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], 3);
    let (v, code) = report(&["invariants", "--group", "d8", "--degree", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["basis"], serde_json::json!([[1, 0, 3, 0, 3, 0, 1]]));

    let (v, code) = report(&["dp1", "rationality", "--f4", "[-2,0,-4,0,-2]", "--f6", "[0,0,27,0,-18,0,3]", "--row", "D_6"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["verdict"], "rational");
    assert_eq!(v["results"]["certified"], true);
    let (v, code) = report(&["dp1", "rationality", "--f4", "[\"1/2\",0,0,0,1]", "--f6", "[1,0,0,0,0,0,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["euler"], 0);

    let (v, code) = report(&["dp1", "star"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["fixed_classes"], 12);
    assert!(checks_pass(&v));
}
