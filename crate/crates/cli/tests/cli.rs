use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn wlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlab")).args(args).output().expect("wlab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// A scratch directory unique to one test.
fn scratch(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wlab-cli-{}-{test}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &PathBuf, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_string_lossy().into_owned()
}

/// 2-colouring of [6]^2 in ϑ order: colour 1 exactly on pairs inside {0,1,2}.
fn coloring() -> Value {
    // ϑ_2 order: rank r lists {a<b} by gap code ⟨a, b-a-1⟩.
    // Ranks 0..15 are exactly the pairs inside [6], diagonal by diagonal.
    let mut table = Vec::new();
    for s in 0..5u64 {
        for gap in 0..=s {
            let (a, b) = (s - gap, s + 1);
            table.push(u32::from(a < 3 && b < 3));
        }
    }
    json!({ "arity": 2, "colors": 2, "window": 6, "table": table })
}

#[test]
fn reduce_list_prints_the_registry_with_anchors() {
    let o = wlab(&["reduce", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines[0].starts_with("thm3.2-lower-bound") && lines[0].ends_with("Theorem 3.2"));
    assert!(text.contains("prop5.9-ivt") && text.contains("weak"));
}

#[test]
fn ramsey_solve_and_enumerate() {
    let dir = scratch("ramsey");
    let file = write(&dir, "c.json", &coloring());
    let o = wlab(&["ramsey", "solve", "--in", &file, "--size", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["elements"], json!([0, 1, 2]));
    assert_eq!(m["color"], 1);

    let o = wlab(&["ramsey", "solve", "--in", &file, "--size", "3", "--color", "0"]);
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["elements"], json!([0, 3, 4]));

    let o = wlab(&["ramsey", "enumerate", "--in", &file, "--size", "4"]);
    let all: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let sets: Vec<&Value> = all.iter().map(|m| &m["elements"]).collect();
    assert_eq!(sets, [&json!([0, 3, 4, 5]), &json!([1, 3, 4, 5]), &json!([2, 3, 4, 5])]);

    // Restricted to [3] there is no homogeneous triple of colour 0.
    let o = wlab(&["ramsey", "solve", "--in", &file, "--size", "3", "--window", "3", "--color", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no homogeneous set"));
}

#[test]
fn reduce_run_then_transport_round_trips() {
    let dir = scratch("reduce");
    let c = coloring();
    let x = json!({ "kind": "pair", "value": [{ "kind": "coloring", "value": c }, { "kind": "coloring", "value": c }] });
    let input = write(&dir, "x.json", &x);
    let target = dir.join("y.json").to_string_lossy().into_owned();
    let o = wlab(&["reduce", "run", "lemma3.6-product", "--in", &input, "--out", &target]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = wlab(&["ramsey", "solve", "--in", &target, "--size", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sol = write(&dir, "s.json", &json!({ "kind": "hom_set", "value": m }));

    let o = wlab(&["reduce", "transport", "lemma3.6-product", "--solution", &sol, "--instance", &input]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let back: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(back["kind"], "pair");
    assert_eq!(back["value"][0]["value"]["elements"], json!([0, 1, 2]));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Accept"));
}

#[test]
fn weak_transport_needs_the_instance() {
    let dir = scratch("weak");
    let sol = write(&dir, "s.json", &json!({ "kind": "natural", "value": 3 }));
    let o = wlab(&["reduce", "transport", "prop5.9-ivt", "--solution", &sol]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--instance"));
    let o = wlab(&["reduce", "run", "no-such", "--in", &sol]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("no reduction named"));
}

#[test]
fn verify_writes_a_report() {
    let dir = scratch("verify");
    let report = dir.join("r.json").to_string_lossy().into_owned();
    let o = wlab(&["verify", "prop7.1-min", "--trials", "6", "--seed", "3", "--report", &report]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS prop7.1-min"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["trials"], 6);
    assert_eq!(r["failed"], 0);

    let o = wlab(&["verify", "prop7.1-min", "--trials", "4", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
}

#[test]
fn catalog_subcommands() {
    let o = wlab(&["catalog", "derive", "RT_{2,2} <=W lim''"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("derivable"));

    let o = wlab(&["catalog", "derive", "lim <=W RT_{2,N}"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Corollary 3.16"));

    let o = wlab(&["catalog", "derive", "RT_{2,2} ~~ lim"]);
    assert_eq!(o.status.code(), Some(2));

    let o = wlab(&["catalog", "check"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 conflicts, 0 lint issues"));

    let o = wlab(&["catalog", "dot", "fig1"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph fig1 {") && dot.trim_end().ends_with('}'));

    let o = wlab(&["catalog", "dot", "fig3"]);
    assert_eq!(o.status.code(), Some(2));
}
