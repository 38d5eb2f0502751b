use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdim"))
        .args(args)
        .env_remove("MDIM_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(code(out), 0, "stderr: {}", stderr(out));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compute_examples() {
    let r = json(&mdim(&["compute", "--family", "petersen", "--k", "3", "--mode", "fractional"]));
    assert_eq!(r["command"], "compute");
    assert_eq!(r["input"]["family"], "petersen");
    assert_eq!(r["result"]["value"], "5");
    assert_eq!(r["result"]["kappa"], 6);
    assert_eq!(r["result"]["certificate"].as_array().unwrap().len(), 10);
    assert!(r["timing_ms"].is_u64());

    let r = json(&mdim(&["compute", "--family", "path:5", "--k", "4"]));
    assert_eq!(r["result"]["value"], "5");

    let r = json(&mdim(&["compute", "--family", "cycle:7", "--k", "1.0"]));
    assert_eq!(r["result"]["value"], "7/6");

    let r = json(&mdim(&["compute", "--family", "grid:3x4", "--k", "3", "--mode", "integer"]));
    assert_eq!(r["result"]["value"], 6);
    assert_eq!(r["result"]["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn k_outside_domain_exits_2() {
    let out = mdim(&["compute", "--family", "path:5", "--k", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("k=9 exceeds kappa=4"), "{}", stderr(&out));
    let out = mdim(&["compute", "--family", "cycle:5", "--k", "3/2", "--mode", "integer"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_examples() {
    let out = mdim(&["sweep", "--family", "path:4", "--samples", "1,2,5/2,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "k,value\n1,1\n2,2\n5/2,3\n3,4\n");

    let out = mdim(&["sweep", "--family", "grid:3x3", "--count", "4"]);
    assert_eq!(stdout(&out), "k,value\n1,2\n2,4\n3,6\n4,8\n");

    assert_eq!(code(&mdim(&["sweep", "--family", "path:4", "--samples", "0"])), 2);
    assert_eq!(code(&mdim(&["sweep", "--family", "path:4", "--samples", "1,x"])), 1);
}

#[test]
fn sweep_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("phi.csv");
    let out = mdim(&["sweep", "--family", "cycle:6", "--samples", "1,4", "--out", path_arg(&out_path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "k,value\n1,3/2\n4,6\n");
}

#[test]
fn oracle_examples() {
    let r = json(&mdim(&["oracle", "--family", "cycle:5", "--k", "4"]));
    assert_eq!(r["result"]["value"], 5);
    let r = json(&mdim(&["oracle", "--family", "path:4", "--k", "1"]));
    assert_eq!(r["result"]["value"], 1);
    let out = mdim(&["oracle", "--family", "grid:5x5", "--k", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("guard"));
}

#[test]
fn verify_scopes_match() {
    let out = mdim(&["verify", "--scope", "cycles", "--max-n", "10"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with(" 0 mismatches\n"));

    let out = mdim(&["verify", "--scope", "remark", "--s", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("remark:path:2,s=2\tdim^k\t3\t10\t10\tyes"));

    let out = mdim(&["verify", "--scope", "trees", "--count", "30", "--max-n", "20"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("\tkappa\t")).count(), 30);
}

#[test]
fn generate_then_compute_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for family in [
        "path:6",
        "cycle:7",
        "wheel:8",
        "petersen",
        "bouquet:3,5",
        "multipartite:1,3,3",
        "grid:3x4",
        "spider:1,3,3,3",
        "remark:path:2,s=2",
        "blowup:path:3,sizes=2K,2E,3K",
    ] {
        let file = dir.path().join("g.edges");
        assert_eq!(code(&mdim(&["generate", "--family", family, "--out", path_arg(&file)])), 0);
        for k in ["1", "2"] {
            let from_file = json(&mdim(&["compute", "--graph", path_arg(&file), "--k", k]));
            let direct = json(&mdim(&["compute", "--family", family, "--k", k]));
            assert_eq!(from_file["result"], direct["result"], "{family} at k={k}");
        }
    }
}

#[test]
fn generate_prints_edge_list() {
    let out = mdim(&["generate", "--family", "path:3"]);
    assert_eq!(stdout(&out), "0 1\n1 2\n");
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = strip(json(&mdim(&["compute", "--family", "wheel:7", "--k", "5/2"])));
    let b = strip(json(&mdim(&["compute", "--family", "wheel:7", "--k", "5/2"])));
    assert_eq!(a, b);
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.edges");
    assert_eq!(code(&mdim(&["compute", "--graph", path_arg(&missing), "--k", "1"])), 1);

    let bad = dir.path().join("bad.edges");
    std::fs::write(&bad, "0 1\n1 1\n").unwrap();
    let out = mdim(&["compute", "--graph", path_arg(&bad), "--k", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"));

    assert_eq!(code(&mdim(&["compute", "--family", "torus:3", "--k", "1"])), 1);
    assert_eq!(code(&mdim(&["compute", "--family", "path:3", "--k", "one"])), 1);
    assert_eq!(
        code(&mdim(&["compute", "--family", "path:3", "--graph", path_arg(&bad), "--k", "1"])),
        1
    );
    assert_eq!(code(&mdim(&["compute", "--k", "1"])), 1);
}

#[test]
fn disconnected_graph_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("split.edges");
    std::fs::write(&file, "0 1\n2 3\n").unwrap();
    let out = mdim(&["compute", "--graph", path_arg(&file), "--k", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("disconnected"));
}

#[test]
fn thread_variable() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_mdim"))
            .args(["sweep", "--family", "path:4", "--samples", "1,2"])
            .env("MDIM_THREADS", value)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("2")), 0);
    assert_eq!(code(&run("0")), 0);
    assert_eq!(code(&run("many")), 1);
}
