use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use vmc_cli::format;

const PATH3: &str = "p vmc 3 2 1\ne 1 2\ne 2 3\nt 1 3\nk 1\n";

fn vmc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vmc")).args(args).output().expect("spawn vmc")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_path_returns_a_single_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p3.vmc", PATH3);
    let o = vmc(&["solve", &f, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "yes");
    let w = v["witness"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert!(v["stats"]["wall_ms"].is_null());

    let witness = w[0].to_string();
    assert_eq!(vmc(&["verify", &f, "--witness", &witness]).status.code(), Some(0));
}

#[test]
fn no_instance_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p3.vmc", PATH3);
    let o = vmc(&["solve", &f, "--k", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("no"));
}

#[test]
fn verify_rejects_a_non_cut() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "p3.vmc", PATH3);
    let o = vmc(&["verify", &f, "--witness", ""]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "invalid");
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.vmc", "p vmc 3 1 0\n\ne 1 4\n");
    let o = vmc(&["solve", &f]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(vmc(&["solve"]).status.code(), Some(2));
    assert_eq!(vmc(&["--threads", "0", "gen", "--seed", "1", "--n", "3", "--p", "0.5"]).status.code(), Some(2));
}

#[test]
fn generated_instances_round_trip_and_agree_with_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..6 {
        let o = vmc(&["gen", "--seed", &seed.to_string(), "--n", "7", "--p", "0.35", "--pairs", "2", "--k", "1"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let doc = format::parse(&text).unwrap();
        assert_eq!(format::serialize(&doc), text);

        let f = write(dir.path(), &format!("g{seed}.vmc"), &text);
        let solved = vmc(&["solve", &f]).status.code();
        let oracle = vmc(&["oracle", &f]).status.code();
        assert_eq!(solved, oracle, "seed {seed}");
    }
}

#[test]
fn bench_writes_a_csv_row_per_file() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite");
    fs::create_dir(&suite).unwrap();
    write(&suite, "a.vmc", PATH3);
    write(&suite, "b.vmc", "p vmc 2 1 1\ne 1 2\nt 1 2\nk 1\n");
    let csv = dir.path().join("out.csv");
    let o = vmc(&["bench", "--suite", suite.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,n,m,k,verdict,nodes,lp_solves,wall_ms"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn dump_tree_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let text = "p vmc 4 3 1\ne 1 2\ne 2 3\ne 3 4\nt 1 4\nw 1\nw 4\nk 1\n";
    let f = write(dir.path(), "c.vmc", text);
    let o = vmc(&["branch", &f, "--dump-tree"]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let out = stdout(&o);
    let nodes: Vec<serde_json::Value> = out
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!nodes.is_empty(), "{out}");
    assert!(nodes[0]["parent"].is_null());
    // children that fail the budget are listed without a measure
    for n in &nodes {
        assert!(n["measure"].is_null() || n["measure"].as_str().unwrap().contains('/'));
    }
    assert!(nodes[1..].iter().all(|n| n["parent"] == 0));
}
