use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn graph_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn domatic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domatic"))
        .args(args)
        .output()
        .unwrap()
}

fn domatic_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_domatic"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const K4: &str = "p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const P3: &str = "p edge 3 2\ne 1 2\ne 2 3\n";
const K3: &str = "1 2\n2 3\n1 3\n";
const C4: &str = "1 2\n2 3\n3 4\n4 1\n";
const C6: &str = "1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
const STAR: &str = "1 2\n1 3\n1 4\n";

/// Parses a text-mode witness back into three vertex lists.
fn parts(text: &str) -> Vec<Vec<usize>> {
    text.lines()
        .filter_map(|l| l.strip_prefix("part "))
        .map(|l| {
            let (_, vs) = l.split_once(':').unwrap();
            vs.split_whitespace().map(|x| x.parse().unwrap()).collect()
        })
        .collect()
}

#[test]
fn solve_exact_k4_yes() {
    let f = graph_file(K4);
    let o = domatic(&["solve", "--exact", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("decision: yes"));
    let p = parts(&text);
    assert_eq!(p.len(), 3);
    // part 2 is the minimal dominating set
    assert_eq!(p[2], vec![1]);
    let mut all: Vec<usize> = p.concat();
    all.sort();
    assert_eq!(all, vec![1, 2, 3, 4]);
}

#[test]
fn solve_exact_p3_no() {
    let f = graph_file(P3);
    let o = domatic(&["solve", "--exact", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("decision: no"));
}

#[test]
fn solve_randomized_c6_yes() {
    let f = graph_file(C6);
    let o = domatic(&[
        "solve",
        "--randomized",
        "--seed",
        "7",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let p = parts(&stdout(&o));
    for part in p {
        assert_eq!(part.len(), 2);
        assert_eq!(part[1] - part[0], 3);
    }
}

#[test]
fn solve_json_reports() {
    let f = graph_file(C6);
    let path = f.path().to_str().unwrap();
    let o = domatic(&["solve", "--format", "json", path]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["decision"], "yes");
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    assert!(v["candidates_tried"].as_u64().unwrap() >= 1);
    assert!(v["elapsed_ms"].as_f64().unwrap() >= 0.0);

    let o = domatic(&[
        "solve",
        "--randomized",
        "--seed",
        "5",
        "--format",
        "json",
        path,
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "randomized");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["walk_length"], 18);

    let p = graph_file(P3);
    let o = domatic(&[
        "solve",
        "--randomized",
        "--format",
        "json",
        "--max-trials",
        "10",
        p.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["decision"], "probably-no");
    assert_eq!(v["trials_used"], 10);
}

#[test]
fn randomized_output_is_reproducible() {
    let f = graph_file(C6);
    let path = f.path().to_str().unwrap();
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = strip(domatic(&[
        "solve",
        "--randomized",
        "--seed",
        "11",
        "--format",
        "json",
        path,
    ]));
    let b = strip(domatic(&[
        "solve",
        "--randomized",
        "--seed",
        "11",
        "--format",
        "json",
        path,
    ]));
    assert_eq!(a, b);
}

#[test]
fn isolated_vertex_reason() {
    let f = graph_file("p edge 3 1\ne 1 2\n");
    let o = domatic(&["solve", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("reason: isolated vertex"));
}

#[test]
fn enum_mds_listings() {
    let k3 = graph_file(K3);
    let o = domatic(&["enum-mds", k3.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "1\n2\n3\ncount=3\n");

    let p3 = graph_file(P3);
    let o = domatic(&["enum-mds", p3.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "2\n1 3\ncount=2\n");

    let c4 = graph_file(C4);
    let o = domatic(&["enum-mds", c4.path().to_str().unwrap()]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.ends_with("count=6\n"));

    let o = domatic(&["enum-mds", "--format", "json", c4.path().to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 6);
    assert_eq!(v["sets"].as_array().unwrap().len(), 6);
}

#[test]
fn encode_k3_first_set() {
    let f = graph_file(K3);
    let o = domatic(&["encode", "--index", "0", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("c nae_clauses=6\n"));
    assert!(text.contains("c var 1 = vertex 2\n"));
    assert!(text.ends_with("p cnf 2 2\n1 2 0\n-1 -2 0\n"), "{text}");
}

#[test]
fn encode_star_is_trivially_unsat() {
    let f = graph_file(STAR);
    let o = domatic(&["encode", f.path().to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("c minimal dominating set #0: 1\n"));
    assert!(text.lines().any(|l| l == "1 0"));
    assert!(text.lines().any(|l| l == "-1 0"));
    let s = domatic_stdin(&["sat", "-"], &text);
    assert_eq!(s.status.code(), Some(1));
    assert!(stdout(&s).contains("s UNSATISFIABLE"));
}

#[test]
fn encode_index_out_of_range() {
    let f = graph_file(P3);
    let o = domatic(&["encode", "--index", "2", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn oracle_reports_delta() {
    let c4 = graph_file(C4);
    let o = domatic(&["oracle", c4.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "delta=2\n");
    let c6 = graph_file(C6);
    let o = domatic(&["oracle", c6.path().to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.starts_with("delta=3\n"));
    assert_eq!(parts(&text).len(), 3);
    let k2 = graph_file("1 2\n");
    assert_eq!(
        stdout(&domatic(&["oracle", k2.path().to_str().unwrap()])),
        "delta=2\n"
    );
}

#[test]
fn oracle_limit_suggests_exact() {
    let edges: String = (1..=14)
        .map(|i| format!("{} {}\n", i, i % 14 + 1))
        .collect();
    let f = graph_file(&edges);
    let o = domatic(&["oracle", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("solve --exact"));
    let o = domatic(&["oracle", "--oracle-limit", "14", f.path().to_str().unwrap()]);
    assert_eq!(stdout(&o), "delta=2\n");
}

#[test]
fn sat_subcommand() {
    let o = domatic_stdin(&["sat", "-"], "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("s SATISFIABLE\n"));
    let v = text.lines().find(|l| l.starts_with("v ")).unwrap();
    assert!(v == "v 1 -2 0" || v == "v -1 2 0", "{v}");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let f = graph_file(C6);
    let path = f.path().to_str().unwrap();
    assert_eq!(
        domatic(&["solve", "--exact", "--randomized", path])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        domatic(&["solve", "--exact", "--seed", "1", path])
            .status
            .code(),
        Some(2)
    );
    let bad = graph_file("p edge 2 1\ne 1 1\n");
    let o = domatic(&["solve", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-loop on vertex 1"));
    let syntax = graph_file("p edge 3 1\ne 1 two\n");
    let o = domatic(&["solve", syntax.path().to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        domatic(&["solve", "/nonexistent/graph"]).status.code(),
        Some(2)
    );
    assert_eq!(
        domatic(&["bench", "--generator", "nope"]).status.code(),
        Some(2)
    );
}

#[test]
fn bench_cycles_exact() {
    let o = domatic(&[
        "bench",
        "--generator",
        "cycles",
        "--n-min",
        "3",
        "--n-max",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("id,n,m,delta_max,mode,decision,mds_count,sat_calls,trials,wall_ms")
    );
    let mut rows = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let n: usize = cols[1].parse().unwrap();
        let expected = if n.is_multiple_of(3) { "yes" } else { "no" };
        assert_eq!(cols[5], expected, "C{n}");
        let mds: f64 = cols[6].parse().unwrap();
        assert!(mds <= 1.7697f64.powi(n as i32));
        rows += 1;
    }
    assert_eq!(rows, 10);
}

#[test]
fn bench_planted_randomized_all_yes() {
    let args = [
        "bench",
        "--generator",
        "bounded:4",
        "--n-min",
        "6",
        "--n-max",
        "6",
        "--per-n",
        "1",
        "--mode",
        "both",
        "--format",
        "json",
    ];
    let o = domatic(&args);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 2);

    let args = [
        "bench",
        "--generator",
        "planted:0.05",
        "--n-min",
        "6",
        "--n-max",
        "12",
        "--per-n",
        "3",
        "--mode",
        "randomized",
        "--format",
        "json",
        "--workers",
        "2",
    ];
    let o = domatic(&args);
    let text = stdout(&o);
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 21);
    for r in records
        .iter()
        .filter(|r| r["delta_max"].as_u64().unwrap() <= 4)
    {
        assert_eq!(r["decision"], "yes", "{r}");
    }
    // same settings, same seed, same corpus
    let again = stdout(&domatic(&args));
    let without_time = |t: &str| {
        t.lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("wall_ms");
                v
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(without_time(&text), without_time(&again));
}
