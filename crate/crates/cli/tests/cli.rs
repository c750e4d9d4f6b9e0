use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn netcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netcurve")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, doc: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn f3_two_members() -> Value {
    json!({
        "field": {"p": 3, "k": 1},
        "n": 4,
        "members": [
            {"label": "a", "basis": [[1, 0, 0, 0], [0, 1, 0, 0]]},
            {"label": "b", "basis": [[0, 0, 1, 1]]}
        ]
    })
}

#[test]
fn realize_valid_code() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "code.json", &f3_two_members());
    let output = dir.path().join("out.json");
    let out = netcurve(&["realize", p(&input), "--output", p(&output)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(doc["all_pass"], json!(true));
    assert_eq!(doc["degree"], json!(3));
    for row in doc["verification"].as_array().unwrap() {
        assert_eq!(row["image_is_marked_point"], "PASS");
        assert_eq!(row["unramified"], "PASS");
        assert_eq!(row["osculating_space_matches"], "PASS");
    }

    // The realization document can be inspected directly.
    let out = netcurve(&["inspect", p(&output), "--points", "t=0", "--x", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["points"][0]["osculating"][0]["basis"], json!([[1, 0, 0, 0], [0, 1, 0, 0]]));
}

#[test]
fn realize_to_stdout_with_overrides() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "code.json", &f3_two_members());
    let out = netcurve(&["realize", p(&input), "--mode", "ordinary", "--points", "inf,t=2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["mode"], "ordinary");
    assert_eq!(doc["members"][0]["point"], "inf");
    assert_eq!(doc["members"][1]["point"], "t=2");
    assert!(doc["verification"].as_array().unwrap().iter().all(|r| r["ordinary_osculation"] == "PASS"));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "code.json", &f3_two_members());
    let a = netcurve(&["realize", p(&input)]);
    let b = netcurve(&["realize", p(&input)]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hall_violation_names_members() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "field": {"p": 2, "k": 1},
        "n": 3,
        "members": [
            {"label": "x", "basis": [[1, 0, 0]]},
            {"label": "y", "basis": [[1, 0, 0]]}
        ]
    });
    let out = netcurve(&["realize", p(&write(&dir, "code.json", &doc))]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('x') && err.contains('y'), "{err}");
}

#[test]
fn too_many_members() {
    let dir = TempDir::new().unwrap();
    // q + 2 = 4 distinct one-point members over F_2 in dimension 3.
    let members: Vec<Value> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]
        .iter()
        .enumerate()
        .map(|(i, v)| json!({"label": format!("m{i}"), "basis": [v]}))
        .collect();
    let doc = json!({"field": {"p": 2, "k": 1}, "n": 3, "members": members});
    let out = netcurve(&["realize", p(&write(&dir, "code.json", &doc))]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ordinary_mode_dimension() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "field": {"p": 3, "k": 1},
        "n": 3,
        "members": [{"label": "big", "basis": [[1, 0, 0], [0, 1, 0]]}],
        "options": {"mode": "ordinary"}
    });
    let out = netcurve(&["realize", p(&write(&dir, "code.json", &doc))]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("big"));
}

#[test]
fn invalid_input() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(netcurve(&["realize", p(&path)]).status.code(), Some(5));

    let unknown = json!({"field": {"p": 3, "k": 1}, "n": 3, "members": [], "extra": 1});
    assert_eq!(netcurve(&["realize", p(&write(&dir, "u.json", &unknown))]).status.code(), Some(5));

    let not_prime = json!({"field": {"p": 4, "k": 1}, "n": 3, "members": [{"label": "a", "basis": [[1, 0, 0]]}]});
    assert_eq!(netcurve(&["realize", p(&write(&dir, "np.json", &not_prime))]).status.code(), Some(5));

    let input = write(&dir, "code.json", &f3_two_members());
    assert_eq!(netcurve(&["realize", p(&input), "--points", "t=7,inf"]).status.code(), Some(5));
    assert_eq!(netcurve(&["realize", p(&input), "--points", "inf,inf"]).status.code(), Some(5));
    assert_eq!(netcurve(&["realize", p(&input), "--bogus"]).status.code(), Some(5));
    assert_eq!(netcurve(&["realize", p(&dir.path().join("missing.json"))]).status.code(), Some(6));
}

#[test]
fn distances_single_member() {
    let dir = TempDir::new().unwrap();
    let doc = json!({"field": {"p": 2, "k": 1}, "n": 2, "members": [{"label": "a", "basis": [[1, 0]]}]});
    let out = netcurve(&["distances", p(&write(&dir, "d.json", &doc))]);
    assert_eq!(out.status.code(), Some(0));
    let table = stdout_json(&out);
    assert_eq!(table["matrix"], json!([]));
    assert_eq!(table["min_distance"], "n/a");
}

#[test]
fn distances_two_lines() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "field": {"p": 2, "k": 1},
        "n": 2,
        "members": [{"label": "a", "basis": [[1, 0]]}, {"label": "b", "basis": [[0, 1]]}]
    });
    let table = stdout_json(&netcurve(&["distances", p(&write(&dir, "d.json", &doc))]));
    assert_eq!(table["matrix"], json!([[0, 2], [2, 0]]));
    assert_eq!(table["min_distance"], 2);
}

#[test]
fn inspect_rational_normal_curve() {
    let dir = TempDir::new().unwrap();
    let doc = json!({
        "field": {"p": 3, "k": 1},
        "n": 3,
        "degree": 2,
        "coords": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    });
    let out = netcurve(&["inspect", p(&write(&dir, "c.json", &doc))]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let points = report["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    for pt in points {
        assert_eq!(pt["orders"], json!([0, 1, 2]));
        assert_eq!(pt["ramification"], "unramified");
    }
}

#[test]
fn inspect_ramified_and_base_points() {
    let dir = TempDir::new().unwrap();
    let cusp = json!({"field": {"p": 2, "k": 1}, "n": 2, "degree": 2, "coords": [[1, 0, 0], [0, 0, 1]]});
    let out = netcurve(&["inspect", p(&write(&dir, "cusp.json", &cusp)), "--points", "t=0"]);
    let report = stdout_json(&out);
    assert_eq!(report["points"][0]["ramification"], "ramified");
    assert_eq!(report["points"][0]["orders"], json!([0, 2]));

    let based = json!({"field": {"p": 3, "k": 1}, "n": 2, "degree": 2, "coords": [[0, 1, 0], [0, 0, 1]]});
    let out = netcurve(&["inspect", p(&write(&dir, "based.json", &based)), "--points", "t=0,t=1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["points"][0]["status"], "base point: all coordinates vanish");
    assert_eq!(report["points"][1]["status"], "ok");
}

/// Vectors of F_p^n as integer tuples, for a brute-force distance oracle.
fn span_vectors(p: u32, basis: &[Vec<u32>]) -> std::collections::BTreeSet<Vec<u32>> {
    let n = basis[0].len();
    let k = basis.len();
    let mut out = std::collections::BTreeSet::new();
    for mut code in 0..p.pow(k as u32) {
        let mut v = vec![0u32; n];
        for row in basis {
            let c = code % p;
            code /= p;
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + c * r) % p;
            }
        }
        out.insert(v);
    }
    out
}

#[test]
fn distances_match_brute_force() {
    let dir = TempDir::new().unwrap();
    let bases: Vec<Vec<Vec<u32>>> = vec![
        vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0]],
        vec![vec![0, 1, 0, 0], vec![0, 0, 1, 2]],
        vec![vec![1, 1, 1, 1]],
        vec![vec![1, 0, 2, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 1]],
    ];
    let members: Vec<Value> =
        bases.iter().enumerate().map(|(i, b)| json!({"label": format!("u{i}"), "basis": b})).collect();
    let doc = json!({"field": {"p": 3, "k": 1}, "n": 4, "members": members});
    let table = stdout_json(&netcurve(&["distances", p(&write(&dir, "d.json", &doc))]));
    let spans: Vec<_> = bases.iter().map(|b| span_vectors(3, b)).collect();
    let log3 = |n: usize| (n as f64).log(3.0).round() as i64;
    let mut min = i64::MAX;
    for i in 0..4 {
        for j in 0..4 {
            let inter = spans[i].intersection(&spans[j]).count();
            let d = log3(spans[i].len()) + log3(spans[j].len()) - 2 * log3(inter);
            assert_eq!(table["matrix"][i][j], json!(d), "pair ({i}, {j})");
            if i < j {
                min = min.min(d);
            }
        }
    }
    assert_eq!(table["min_distance"], json!(min));
}
