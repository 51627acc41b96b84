use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const CONE: &str =
    r#"{"dim":2,"halfspaces":[{"a":["-2","1"],"b":"1/2"},{"a":["2","1"],"b":"5/2"}]}"#;

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twohalf-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twohalf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

#[test]
fn verify_example_succeeds() {
    let o = run(&["verify-example"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["outside_facet_pair_closure"], true);
    assert_eq!(v["inside_split_hull"], true);
}

#[test]
fn two_halfspace_hull_of_cone() {
    let input = scratch("cone.json", CONE);
    let o = run(&["two-halfspace", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let mut rows: Vec<(Vec<String>, String)> = v["halfspaces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| {
            let a = h["a"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().to_string())
                .collect();
            (a, h["b"].as_str().unwrap().to_string())
        })
        .collect();
    rows.sort();
    let s = |x: &str| x.to_string();
    assert_eq!(
        rows,
        vec![
            (vec![s("-2"), s("1")], s("0")),
            (vec![s("0"), s("1")], s("0")),
            (vec![s("2"), s("1")], s("2")),
        ]
    );
}

#[test]
fn malformed_input_exits_two_naming_the_field() {
    let input = scratch(
        "bad.json",
        r#"{"dim":2,"halfspaces":[{"a":["1","0"],"b":"1/x"}]}"#,
    );
    let o = run(&["facet-pair-closure", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(err["error"]["message"]
        .as_str()
        .unwrap()
        .contains("halfspaces[0].b"));
}

#[test]
fn dimension_mismatch_exits_two() {
    let input = scratch(
        "dim.json",
        r#"{"dim":3,"halfspaces":[{"a":["1","0"],"b":"1"}]}"#,
    );
    let o = run(&["hull2d", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn split_closure_and_split_hull() {
    let input = scratch("cone2.json", CONE);
    let splits = scratch("splits.json", r#"{"splits":[{"a":["1","0"],"K":0}]}"#);
    let o = run(&[
        "split-hull",
        "--input",
        input.to_str().unwrap(),
        "--splits",
        splits.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "split-closure",
        "--input",
        input.to_str().unwrap(),
        "--box",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_out(&o)["family_size"].as_u64().unwrap() > 0);
}

#[test]
fn cg_cut_rounds_down() {
    let input = scratch("cone3.json", CONE);
    let o = run(&[
        "cg-cut",
        "--input",
        input.to_str().unwrap(),
        "--direction",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["cut"]["b"], "1");
}

#[test]
fn verify_2dih_and_rank_ih_pass() {
    let input = scratch("cone4.json", CONE);
    for verb in ["verify-2dih", "rank-ih"] {
        let o = run(&[verb, "--input", input.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{verb}");
    }
}

#[test]
fn classify_and_helly() {
    let tri = scratch(
        "tri.json",
        r#"{"dim":2,"vertices":[["0","0"],["2","0"],["0","2"]],"rays":[],"lineality":[]}"#,
    );
    let o = run(&["classify", "--input", tri.to_str().unwrap()]);
    assert_eq!(json_out(&o)["tag"], "Triangle");
    let strip = scratch(
        "strip.json",
        r#"{"dim":2,"halfspaces":[{"a":["1","0"],"b":"1/3"},{"a":["-1","0"],"b":"-1/4"}]}"#,
    );
    let o = run(&["helly", "--input", strip.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["facets"], serde_json::json!([0, 1]));
    let o = run(&[
        "helly",
        "--input",
        scratch("cone5.json", CONE).to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn push_out_reports_trace_and_rejects_bad_hypotheses() {
    let diamond = scratch(
        "diamond.json",
        r#"{"dim":2,"halfspaces":[{"a":["1","-1"],"b":"9/10"},{"a":["1","1"],"b":"19/10"},{"a":["-1","1"],"b":"9/10"},{"a":["-1","-1"],"b":"0"}]}"#,
    );
    let o = run(&["push-out", "--input", diamond.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["outcome"]["kind"], "maximal");
    assert_eq!(v["outcome"]["area"], "1");
    let o = run(&[
        "push-out",
        "--input",
        scratch("cone6.json", CONE).to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "hypothesis");
}

#[test]
fn plot_marks_clipped_edges() {
    let input = scratch("cone7.json", CONE);
    let o = run(&[
        "plot",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "svg",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let svg = String::from_utf8(o.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-dasharray").count(), 1);
    let o = run(&[
        "plot",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "csv",
        "--viewport",
        "-1,2,-1,2",
    ]);
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("x,y,edge_to_next"));
    assert!(csv.contains("clipped"));
}

#[test]
fn output_file_and_seeded_corpus() {
    let out = scratch("corpus.json", "");
    let args = [
        "gen-corpus",
        "--seed",
        "7",
        "--count",
        "3",
        "--output",
        out.to_str().unwrap(),
    ];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = fs::read_to_string(&out).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(first, fs::read_to_string(&out).unwrap());
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 3);
}

#[test]
fn parse_then_serialize_is_canonical() {
    let input = scratch(
        "scaled.json",
        r#"{"dim":2,"halfspaces":[{"a":["4","2"],"b":"1"},{"a":["-1/2","0"],"b":"3"}]}"#,
    );
    let o = run(&["facet-pair-closure", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}
