use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn moncp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moncp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(dir: &Path, file: &str) -> Value {
    serde_json::from_slice(&std::fs::read(dir.join(file)).unwrap()).unwrap()
}

fn write(dir: &Path, file: &str, text: &str) {
    std::fs::write(dir.join(file), text).unwrap();
}

fn complete_graph(n: usize) -> String {
    let mut s = String::new();
    for a in 0..n {
        for b in a + 1..n {
            s.push_str(&format!("n{a}\tn{b}\n"));
        }
    }
    s
}

#[test]
fn help_and_bad_arguments() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&moncp(tmp.path(), &["--help"])), 0);
    assert_eq!(code(&moncp(tmp.path(), &["solve", "--help"])), 0);
    assert_eq!(code(&moncp(tmp.path(), &["frobnicate"])), 1);
    assert_eq!(code(&moncp(tmp.path(), &["solve", "--model", "mds"])), 1);
}

#[test]
fn missing_input_file_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = moncp(
        tmp.path(),
        &[
            "solve",
            "--network",
            "nope.edges",
            "--labels",
            "nope.labels",
            "--model",
            "mds",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("nope.edges"));
}

#[test]
fn solve_writes_result_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "star.edges", "hub\ta\nhub\tb\nhub\tc\nhub\td\n");
    write(dir, "star.labels", "a\n");
    let out = moncp(
        dir,
        &[
            "solve",
            "--network",
            "star.edges",
            "--labels",
            "star.labels",
            "--model",
            "mds",
            "--budget",
            "3000",
            "--seed",
            "1",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(dir, "r.json");
    assert_eq!(doc["pf"], serde_json::json!([[1, 0], [2, 1]]));
    assert_eq!(doc["ps"][0], serde_json::json!(["hub"]));
    let manifest = json(dir, "r.json.manifest.json");
    assert_eq!(manifest["command"], "solve");
    assert_eq!(manifest["seed"], 1);
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn empty_feasible_set_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "k12.edges", &complete_graph(12));
    write(dir, "k12.labels", "n0\n");
    let out = moncp(
        dir,
        &[
            "solve",
            "--network",
            "k12.edges",
            "--labels",
            "k12.labels",
            "--model",
            "ncua",
            "--pop",
            "4",
            "--aux",
            "2",
            "--budget",
            "8",
            "--seed",
            "1",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 2);
    let doc = json(dir, "r.json");
    assert_eq!(doc["feasible_found"], false);
    assert!(doc["pf"].as_array().unwrap().is_empty());
    assert!(doc["infeasible"]["min_cv"].as_f64().unwrap() > 0.0);
}

#[test]
fn model_rejects_wrong_graph_kind() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "g.edges", "a\tb\n");
    write(dir, "g.labels", "a\n");
    let out = moncp(
        dir,
        &[
            "solve",
            "--network",
            "g.edges",
            "--labels",
            "g.labels",
            "--model",
            "dfvs",
            "--undirected",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("directed"));
}

#[test]
fn oracle_refuses_large_instances() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let path: String = (0..20).map(|i| format!("n{i}\tn{}\n", i + 1)).collect();
    write(dir, "p.edges", &path);
    let out = moncp(
        dir,
        &[
            "oracle",
            "--network",
            "p.edges",
            "--model",
            "mds",
            "--out",
            "o.json",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("21"));
    assert!(!dir.join("o.json").exists());
}

#[test]
fn oracle_front_on_triangle() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "t.edges", "a\tb\nb\tc\na\tc\n");
    write(dir, "t.labels", "a\n");
    let out = moncp(
        dir,
        &[
            "oracle",
            "--network",
            "t.edges",
            "--labels",
            "t.labels",
            "--model",
            "ncua",
            "--out",
            "o.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(dir, "o.json");
    assert_eq!(doc["pf"], serde_json::json!([[2, 1]]));
    assert_eq!(doc["ps"][0].as_array().unwrap().len(), 2);
}

#[test]
fn identical_groups_are_indistinguishable() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "ref.tsv", "1\t0\n2\t1\n4\t2\n");
    write(dir, "a.json", r#"{"pf": [[1, 0], [4, 2]]}"#);
    write(dir, "b.json", r#"{"pf": [[2, 1]]}"#);
    let out = moncp(
        dir,
        &[
            "metrics",
            "--reference",
            "ref.tsv",
            "--result",
            "x=a.json",
            "--result",
            "x=b.json",
            "--result",
            "y=a.json",
            "--result",
            "y=b.json",
            "--out",
            "m",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(dir, "m.json");
    let comparisons = doc["comparisons"].as_array().unwrap();
    assert_eq!(comparisons.len(), 2);
    for c in comparisons {
        assert_eq!(c["p_value"].as_f64().unwrap(), 1.0);
    }
    let runs = std::fs::read_to_string(dir.join("m.runs.tsv")).unwrap();
    assert_eq!(runs.lines().count(), 5);
}

#[test]
fn metrics_needs_a_reference() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "a.json", r#"{"pf": [[1, 0]]}"#);
    assert_eq!(
        code(&moncp(
            dir,
            &["metrics", "--result", "a.json", "--out", "m"]
        )),
        1
    );
}

#[test]
fn malformed_metrics_input_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "ref.tsv", "1\tnot-a-number\n");
    write(dir, "a.json", r#"{"pf": [[1, 0]]}"#);
    write(dir, "bad.json", r#"{"pf": "oops"}"#);
    let out = moncp(
        dir,
        &[
            "metrics",
            "--reference",
            "ref.tsv",
            "--result",
            "a.json",
            "--out",
            "m",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("ref.tsv"));
    let out = moncp(
        dir,
        &[
            "metrics",
            "--union-reference",
            "--result",
            "bad.json",
            "--out",
            "m",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("bad.json"));
}

fn drugs(dir: &Path, threshold: &str) -> Value {
    let out = moncp(
        dir,
        &[
            "evaluate-drugs",
            "--ps",
            "ps.txt",
            "--combos",
            "combos.tsv",
            "--threshold",
            threshold,
            "--out",
            "d",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    json(dir, "d.json")
}

#[test]
fn drug_ranking_and_auc() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    // g1 in every solution, g2 in half, g3 in one of four
    write(dir, "ps.txt", "g1,g2\ng1 g2\ng1\ng1,g3\n");
    write(
        dir,
        "combos.tsv",
        "c1\t1\tg1,g9\nc2\t0\tg8\nc3\t1\tg1\nc4\t0\tg2,g3\n",
    );

    let doc = drugs(dir, "0.8");
    assert_eq!(doc["drivers"], serde_json::json!(["g1"]));
    assert_eq!(doc["auc"].as_f64().unwrap(), 1.0);
    assert_eq!(doc["ranking"][0]["probability"].as_f64().unwrap(), 1.0);

    // strict threshold: nothing is selected more often than always
    let doc = drugs(dir, "1");
    assert!(doc["drivers"].as_array().unwrap().is_empty());
    assert_eq!(doc["auc"].as_f64().unwrap(), 0.5);

    // every gene seen at least once becomes a driver
    let doc = drugs(dir, "0");
    assert_eq!(doc["drivers"].as_array().unwrap().len(), 3);
    assert_eq!(doc["auc"].as_f64().unwrap(), 0.5);
}

#[test]
fn single_class_labels_leave_auc_undefined() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "ps.txt", "g1\n");
    write(dir, "combos.tsv", "c1\t1\tg1\nc2\t1\tg2\n");
    let doc = drugs(dir, "0.8");
    assert!(doc["auc"].is_null());
    assert!(doc["auc_note"].is_string());
}

#[test]
fn drug_threshold_out_of_range() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "ps.txt", "g1\n");
    write(dir, "combos.tsv", "c1\t1\tg1\n");
    let out = moncp(
        dir,
        &[
            "evaluate-drugs",
            "--ps",
            "ps.txt",
            "--combos",
            "combos.tsv",
            "--threshold",
            "1.5",
            "--out",
            "d",
        ],
    );
    assert_eq!(code(&out), 1);
}

#[test]
fn synthetic_generation() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    for out in ["a", "b"] {
        let o = moncp(
            dir,
            &[
                "gen-synthetic",
                "--nodes",
                "50",
                "--type",
                "ba",
                "--m",
                "2",
                "--seed",
                "3",
                "--out",
                out,
            ],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for ext in ["edges", "nodes", "labels"] {
        assert_eq!(
            std::fs::read(dir.join(format!("a.{ext}"))).unwrap(),
            std::fs::read(dir.join(format!("b.{ext}"))).unwrap()
        );
    }
    let labels = std::fs::read_to_string(dir.join("a.labels")).unwrap();
    assert_eq!(labels.lines().count(), 10);

    let o = moncp(
        dir,
        &[
            "gen-synthetic",
            "--nodes",
            "10",
            "--type",
            "er",
            "--p",
            "0.3",
            "--label-frac",
            "0",
            "--seed",
            "3",
            "--out",
            "z",
        ],
    );
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(dir.join("z.labels"))
        .unwrap()
        .trim()
        .is_empty());

    assert_eq!(
        code(&moncp(
            dir,
            &[
                "gen-synthetic",
                "--nodes",
                "10",
                "--type",
                "er",
                "--out",
                "x"
            ]
        )),
        1
    );
}

#[test]
fn command_line_overrides_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "star.edges", "hub\ta\nhub\tb\nhub\tc\n");
    write(dir, "star.labels", "a\n");
    write(
        dir,
        "run.cfg",
        "# shared settings\nbudget = 600\npop = 20\naux = 6\nseed = 4\nno_trace = true\n",
    );
    let out = moncp(
        dir,
        &[
            "solve",
            "--config",
            "run.cfg",
            "--network",
            "star.edges",
            "--labels",
            "star.labels",
            "--model",
            "mds",
            "--pop",
            "30",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc = json(dir, "r.json");
    assert_eq!(doc["config"]["pop_size"], 30);
    assert_eq!(doc["config"]["aux_size"], 6);
    assert_eq!(doc["config"]["max_evaluations"], 600);
    assert_eq!(doc["seed"], 4);
    assert!(doc["trace"].as_array().unwrap().is_empty());
}

#[test]
fn rerun_reproduces_an_unseeded_run() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    write(dir, "star.edges", "hub\ta\nhub\tb\nb\tc\nc\td\n");
    write(dir, "star.labels", "c\n");
    let out = moncp(
        dir,
        &[
            "solve",
            "--network",
            "star.edges",
            "--labels",
            "star.labels",
            "--model",
            "mds",
            "--budget",
            "1000",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = moncp(
        dir,
        &[
            "rerun",
            "--manifest",
            "r.json.manifest.json",
            "--out",
            "again.json",
        ],
    );
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        std::fs::read(dir.join("r.json")).unwrap(),
        std::fs::read(dir.join("again.json")).unwrap()
    );
}
