use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkscope"))
        .args(args)
        .env_remove("LINKSCOPE_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn edge_lines(text: &str) -> usize {
    text.lines().skip(1).filter(|l| !l.trim().is_empty()).count()
}

#[test]
fn analyze_blown_cycle_sphere_summary() {
    let out = run(&["analyze", "--family", "blown-cycle", "--params", "n=5,k=2", "--mode", "sphere", "--format", "table"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("summary sphere: min 2 at (v=0, r=1)"));

    let out = run(&["analyze", "--family", "blown-cycle", "--params", "n=5,k=2"]);
    let v = json(&out);
    assert_eq!(v["reports"][0]["global_min"], 2);
    assert_eq!(v["reports"][0]["witness"]["r"], 1);
    assert_eq!(v["seed"], 0);
}

#[test]
fn analyze_cycle_and_ball_mode() {
    let v = json(&run(&["analyze", "--family", "cycle", "--params", "n=6", "--mode", "sphere"]));
    assert_eq!(v["reports"][0]["global_min"], 0);

    let v = json(&run(&["analyze", "--family", "blown-cycle", "--params", "n=7,k=2", "--mode", "ball"]));
    assert_eq!(v["reports"][0]["mode"], "ball");
    assert_eq!(v["reports"][0]["global_min"], 3);

    let v = json(&run(&["analyze", "--family", "blown-cycle", "--params", "n=7,k=2", "--mode", "both", "--expansion"]));
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    assert_eq!(v["expansion"]["global_min_num"], 0);
    let keys = ["links", "min_min_degree", "min_avg_degree_num", "min_avg_degree_den", "component_histogram"];
    for key in keys {
        assert!(v["profile"].get(key).is_some(), "{key}");
    }
}

#[test]
fn analyze_file_input_and_errors() {
    let dir = std::env::temp_dir().join(format!("linkscope-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("c5.txt");
    std::fs::write(&good, "# pentagon\n5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let v = json(&run(&["analyze", "--input", good.to_str().unwrap()]));
    assert_eq!(v["reports"][0]["global_min"], 0);
    assert_eq!(v["n"], 5);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "3\n0 1\n1 7\n").unwrap();
    let out = run(&["analyze", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let split = dir.join("split.txt");
    std::fs::write(&split, "4\n0 1\n2 3\n").unwrap();
    let out = run(&["analyze", "--input", split.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));

    let out = run(&["analyze", "--input", good.to_str().unwrap(), "--family", "cycle", "--params", "n=5"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn generate_edge_counts() {
    let out = run(&["generate", "--family", "cycle-power", "--params", "n=11,k=2"]);
    assert!(out.status.success());
    assert_eq!(edge_lines(&stdout(&out)), 22);

    let out = run(&["generate", "--family", "complete-minus-matching", "--params", "d=6"]);
    assert_eq!(edge_lines(&stdout(&out)), 24);

    let out = run(&["generate", "--family", "product-blowup", "--params", "m=7,t=2"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("42"));
    assert_eq!(edge_lines(&text), 42 * 9 / 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d=9"));

    let out = run(&["generate", "--family", "cycle-power", "--params", "n=5,k=2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 2k+2"));
}

#[test]
fn generate_is_seed_stable() {
    let args = ["generate", "--family", "random-regular", "--params", "n=16,d=3", "--seed", "5"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn enumerate_cubic_eight() {
    let out = run(&["enumerate", "--n", "8", "--d", "3", "--connected", "--checks", "sphere-bound"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    let check = &v["checks"][0];
    for key in ["check", "graphs", "applicable", "passed", "failed", "counterexample"] {
        assert!(check.get(key).is_some(), "{key}");
    }
    assert_eq!(check["check"], "sphere-bound");
    assert_eq!(check["graphs"], 19320);

    let out = run(&["enumerate", "--n", "30", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));
}

#[test]
fn verify_random_regular_is_reproducible() {
    let args = ["verify", "--family", "random-regular", "--params", "n=20,d=4", "--samples", "100", "--seed", "7", "--checks", "all"];
    let a = run(&args);
    assert!(a.status.success());
    let v = json(&a);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["graphs"], 100);
    assert_eq!(v["seed"], 7);
    let threaded = Command::new(env!("CARGO_BIN_EXE_linkscope"))
        .args(args)
        .env("LINKSCOPE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, threaded.stdout);
}

#[test]
fn verify_cycle_power_residue_error() {
    let out = run(&["verify", "--family", "cycle-power", "--params", "n=10,k=2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("residue condition"));

    let out = run(&["verify", "--family", "cycle-power", "--params", "n=11,k=2", "--checks", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_counts_inapplicable_graphs() {
    let out = run(&["verify", "--family", "cycle", "--params", "n=4", "--checks", "ball-bound"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["checks"][0]["applicable"], 0);
}

#[test]
fn explore_ladders() {
    let out = run(&["explore", "--family", "blown-cycle", "--k", "2", "--sizes", "5,7,9,13", "--format", "json"]);
    assert!(out.status.success());
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["zero"], false);
    assert!(rows[1..].iter().all(|r| r["zero"] == true && r["min_link_expansion_num"] == 0));

    let out = run(&["explore", "--family", "cycle-power", "--k", "2", "--sizes", "11,15,19"]);
    let text = stdout(&out);
    assert!(text.starts_with("size,n,d,diameter,min_link_expansion"));
    assert_eq!(text.lines().skip(1).filter(|l| l.contains(",true,")).count(), 3);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(4) == Some("0")));

    let out = run(&["explore", "--family", "expander-blowup", "--t", "1", "--sizes", "10,20", "--seed", "3", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["seed"], 3);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["seed"] == 3));
}
