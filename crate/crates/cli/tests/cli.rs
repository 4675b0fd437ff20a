use std::process::{Command, Output};

use serde_json::Value;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercohom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn json_roundtrips_byte_for_byte() {
    let stupid = format!("{DATA}/stupid.json");
    let two = format!("{DATA}/two_level.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["hodge", "--n", "2", "--d", "4", "--json"],
        vec!["reduce", "--n", "1", "--d", "3", "--form", "x0*x1*x2:2,1/3*x0^6:3", "--json"],
        vec!["exact", "--n", "1", "--d", "3", "--form", "x0^2*x1^2*x2^2:3", "--json"],
        vec!["residue", "--n", "2", "--d", "4", "--form", "1:1,x0*x1*x2*x3:2", "--json"],
        vec!["thm41", "--n", "2", "--d", "3", "--json"],
        vec!["complement", "--n", "3", "--d", "3", "--json"],
        vec!["specseq", &stupid, "--json"],
        vec!["specseq", &two, "--les", "--json"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let text = stdout(&o);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(serde_json::to_string(&v).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn documented_examples() {
    let v = json(&["hodge", "--n", "2", "--d", "4", "--f", "fermat", "--json"]);
    assert_eq!(v["primitive_hodge_numbers"], serde_json::json!([1, 19, 1]));
    assert_eq!(v["euler_characteristic"], "24");

    let o = run(&["reduce", "--n", "1", "--d", "3", "--f", "fermat", "--form", "x0^2*x1^2*x2^2:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict  exact"));
    let v = json(&["reduce", "--n", "1", "--d", "3", "--form", "x0^2*x1^2*x2^2:3", "--json"]);
    assert_eq!(v["normal_form"], serde_json::json!([]));
    assert_eq!(v["verdict"], "exact");

    let o = run(&["hodge", "--n", "1", "--d", "3", "--f", "x0*x1*x2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("singular hypersurface"));
}

#[test]
fn residue_and_exactness() {
    let v = json(&["residue", "--n", "2", "--d", "4", "--form", "1:1,x0*x1*x2*x3:2", "--json"]);
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0]["hodge_type"], serde_json::json!([2, 0]));
    assert_eq!(comps[1]["hodge_type"], serde_json::json!([1, 1]));
    assert_eq!(v["hodge_level"], 1);

    let v = json(&["exact", "--n", "2", "--d", "4", "--form", "x0^3*x1^3*x2^3*x3^3:4", "--json"]);
    assert_eq!(v["exact"], true);
    assert_eq!(v["second_kind"], true);
    let v = json(&["exact", "--n", "2", "--d", "4", "--form", "x0^2*x1^2*x2^2*x3^2:3", "--json"]);
    assert_eq!(v["exact"], false);
}

#[test]
fn thm41_and_complement() {
    let v = json(&["thm41", "--n", "3", "--d", "5", "--json"]);
    assert_eq!(v["all_hold"], true);
    let dims: Vec<u64> = v["reports"].as_array().unwrap().iter().map(|r| r["hodge_filtration_dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![204, 203, 102, 1]);

    let v = json(&["complement", "--n", "2", "--d", "4", "--json"]);
    assert_eq!(v["cohomology_dims"], serde_json::json!([1, 0, 0, 21, 0, 0, 0]));
    assert_eq!(v["hodge_filtration"], serde_json::json!([21, 21, 20, 1]));
}

#[test]
fn polynomial_from_file() {
    let dir = std::env::temp_dir().join(format!("hypercohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quartic.txt");
    std::fs::write(&path, "x0^4 + x1^4 + x2^4 + x3^4 + x0*x1*x2*x3\n").unwrap();
    let v = json(&["hodge", "--n", "2", "--d", "4", "--f", path.to_str().unwrap(), "--json"]);
    assert_eq!(v["primitive_hodge_numbers"], serde_json::json!([1, 19, 1]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn specseq_pages() {
    let v = json(&["specseq", &format!("{DATA}/stupid.json"), "--json"]);
    assert_eq!(v["degeneration_page"], 2);
    let e2 = &v["pages"][2]["entries"];
    let live: Vec<(i64, i64, u64)> = e2
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["p"].as_i64().unwrap(), e["q"].as_i64().unwrap(), e["dim"].as_u64().unwrap()))
        .filter(|e| e.2 > 0)
        .collect();
    assert_eq!(live, vec![(0, 0, 1)]);

    let v = json(&["specseq", &format!("{DATA}/two_level.json"), "--les", "--json"]);
    assert_eq!(v["les"]["exact"], true);
    let o = run(&["specseq", &format!("{DATA}/stupid.json"), "--les"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["hodge", "--n", "2", "--d", "4", "--f", "x0^4 + y"],
        vec!["hodge", "--n", "0", "--d", "4"],
        vec!["hodge", "--n", "2"],
        vec!["reduce", "--n", "1", "--d", "3", "--form", "x0^3"],
        vec!["reduce", "--n", "1", "--d", "3", "--form", "x0^3:two"],
        vec!["specseq", "/nonexistent/complex.json"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn domain_errors_exit_1() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["hodge", "--n", "2", "--d", "3", "--f", "x0^4 + x1^4 + x2^4 + x3^4"],
        vec!["reduce", "--n", "1", "--d", "3", "--form", "x0^2:2"],
        vec!["reduce", "--n", "1", "--d", "3", "--form", "x0^3:9"],
        vec!["hodge", "--n", "2", "--d", "2", "--f", "x0*x1 + x2^2"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}
