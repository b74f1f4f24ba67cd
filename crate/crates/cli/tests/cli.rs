use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn happylab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_happylab")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = happylab(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gap_instance_exact_values() {
    let muhv = json(&["solve", "--gen", "gap:k=3,wt=1,wb=0", "--problem", "muhv", "--json"]);
    assert_eq!(muhv["value"]["exact"], "2");
    assert_eq!(muhv["instance"]["num_vertices"], 6);
    let mhv = json(&["solve", "--gen", "gap:k=3,wt=1,wb=0", "--problem", "mhv", "--with-lp", "--json"]);
    assert_eq!(mhv["value"]["exact"], "1");
    assert_eq!(mhv["lp_value"]["exact"], "3/2");
    assert_eq!(mhv["exact_over_lp"]["exact"], "2/3");
}

#[test]
fn worked_instance_rounds_within_bound() {
    let report = json(&["solve", "--gen", "appxc:W=10,eps=1", "--problem", "muhv", "--algo", "round-derand", "--json"]);
    let value: i64 = report["value"]["exact"].as_str().unwrap().parse().unwrap();
    assert!(value <= 8, "derandomized value {value}");
    assert!(report["rounding"]["cells"].as_u64().unwrap() >= 3);
    let contracted =
        json(&["solve", "--gen", "appxc:W=10,eps=1,contracted=1", "--problem", "muhv", "--json"]);
    assert_eq!(contracted["value"]["exact"], "25");
}

#[test]
fn gap_table_rows() {
    let rows = json(&["gap-table", "--problem", "mhv", "--k-min", "3", "--k-max", "5", "--json"]);
    let ratios: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["ratio"]["exact"].as_str().unwrap()).collect();
    assert_eq!(ratios, ["2/3", "1/2", "2/5"]);
    let csv = stdout(&["gap-table", "--problem", "muhv", "--k-min", "3", "--k-max", "4", "--csv"]);
    assert_eq!(csv, "k,opt,lp,ratio,bound,holds\n3,2,3/2,4/3,4/3,true\n4,3,2,3/2,3/2,true\n");
    // with pair weight the MUHV lower bound no longer applies
    let text = stdout(&["gap-table", "--problem", "muhv", "--wb", "1/2", "--k-max", "3"]);
    assert!(text.lines().all(|l| !l.ends_with("NO")));
}

#[test]
fn check_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let dump = path_str(dir.path());
    for (suite, trials) in [("submodular", "200"), ("lovasz-lp-muhv", "100"), ("reduction", "50")] {
        let out = stdout(&["check", suite, "--trials", trials, "--seed", "7", "--dump-dir", dump]);
        assert!(out.starts_with(&format!("{suite}: pass")), "{out}");
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn reduce_single_hyperedge() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("h.hh"), dir.path().join("g.hg"));
    fs::write(&input, "2 1 2\n1 2\n4 2 1 2\n").unwrap();
    stdout(&["reduce", "--input", path_str(&input), "--output", path_str(&output)]);
    let graph = fs::read_to_string(&output).unwrap();
    assert!(graph.contains("\n3 2 2\n"), "{graph}");
    let map = fs::read_to_string(dir.path().join("g.hg.map")).unwrap();
    assert!(map.ends_with("1 3\n"), "{map}");
    let report = json(&["solve", "--input", path_str(&output), "--problem", "muhv", "--json"]);
    assert_eq!(report["value"]["exact"], "4");
}

#[test]
fn reduce_without_hyperedges() {
    let dir = tempfile::tempdir().unwrap();
    let (input, output) = (dir.path().join("h.hh"), dir.path().join("g.hg"));
    fs::write(&input, "2 0 2\n1 2\n").unwrap();
    stdout(&["reduce", "--input", path_str(&input), "--output", path_str(&output), "--map", path_str(&dir.path().join("m"))]);
    let report = json(&["solve", "--input", path_str(&output), "--problem", "muhv", "--json"]);
    assert_eq!(report["instance"]["num_vertices"], 2);
    assert_eq!(report["instance"]["num_edges"], 0);
    assert_eq!(report["value"]["exact"], "0");
}

#[test]
fn generate_then_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (hyper, graph) = (dir.path().join("h.hh"), dir.path().join("g.hg"));
    stdout(&["generate", "--gen", "hyper:n=6,m=5,k=3", "--seed", "4", "--output", path_str(&hyper)]);
    stdout(&["reduce", "--input", path_str(&hyper), "--output", path_str(&graph)]);
    let report = json(&["solve", "--input", path_str(&graph), "--problem", "muhv", "--json"]);
    assert_eq!(report["instance"]["num_vertices"], 11);
    assert_eq!(report["instance"]["source"], format!("file:{}", graph.display()));

    let text = stdout(&["generate", "--gen", "rand:n=7,k=2", "--seed", "3"]);
    let copy = dir.path().join("r.hg");
    fs::write(&copy, &text).unwrap();
    let from_file = json(&["solve", "--input", path_str(&copy), "--problem", "mhv", "--json"]);
    let from_gen = json(&["solve", "--gen", "rand:n=7,k=2", "--seed", "3", "--problem", "mhv", "--json"]);
    assert_eq!(from_file["value"], from_gen["value"]);
    assert_eq!(from_file["coloring"], from_gen["coloring"]);
}

#[test]
fn config_file_matches_flag() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("gap.conf");
    fs::write(&config, "# gap family\ngen = gap\nk = 4\nwb = 1\n").unwrap();
    let a = json(&["solve", "--config", path_str(&config), "--problem", "muhv", "--json"]);
    let b = json(&["solve", "--gen", "gap:k=4,wb=1", "--problem", "muhv", "--json"]);
    assert_eq!(a, b);
    let c = json(&["solve", "--config", path_str(&config), "--gen", "gap:k=3", "--problem", "muhv", "--json"]);
    assert_eq!(c["instance"]["source"], "gap:k=3,wb=1");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hg");
    fs::write(&bad, "3 1 2\n1 1 1\n1 0 2\n").unwrap();
    let out = happylab(&["solve", "--input", path_str(&bad), "--problem", "muhv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.hg"));

    assert_eq!(happylab(&["solve", "--gen", "gap:q=1", "--problem", "mhv"]).status.code(), Some(2));
    assert_eq!(happylab(&["solve", "--problem", "mhv"]).status.code(), Some(2));
    assert_eq!(happylab(&["check", "nonsense"]).status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_happylab"))
        .args(["solve", "--gen", "rand:n=14,k=3", "--problem", "muhv"])
        .env("HAPPYLAB_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_and_csv_agree() {
    let args = ["solve", "--gen", "rand:n=8,k=3,p=0.5", "--seed", "11", "--problem", "muhv", "--algo", "round-random", "--with-exact"];
    let report = json(&[&args[..], &["--json"]].concat());
    let csv = stdout(&[&args[..], &["--csv"]].concat());
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row = lines.next().unwrap();
    // the source column is quoted because the spec contains commas
    let (_, rest) = row.rsplit_once('"').unwrap();
    let fields: Vec<&str> = rest.trim_start_matches(',').split(',').collect();
    let get = |name: &str| fields[header.iter().position(|h| *h == name).unwrap() - 1];
    assert_eq!(get("value"), report["value"]["exact"]);
    assert_eq!(get("exact_value"), report["exact_value"]["exact"]);
    assert_eq!(get("value_over_exact"), report["value_over_exact"]["exact"]);
    assert_eq!(get("seed"), "11");
    assert_eq!(get("lp_value"), report["lp_value"]["exact"]);
}

#[test]
fn export_lp_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("gap.lp");
    let report = json(&["solve", "--gen", "gap:k=3", "--problem", "mhv", "--export-lp", path_str(&lp), "--timing", "--json"]);
    assert!(report["elapsed_ms"].as_f64().is_some());
    let text = fs::read_to_string(&lp).unwrap();
    assert!(text.to_lowercase().contains("maximize"), "{text}");
    let plain = json(&["solve", "--gen", "gap:k=3", "--problem", "mhv", "--json"]);
    assert!(plain.get("elapsed_ms").is_none());
}
