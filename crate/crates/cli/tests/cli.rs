use std::path::PathBuf;
use std::process::{Command, Stdio};

use stablecut_cli::{run, EXIT_NO, EXIT_OK, EXIT_USAGE};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn stablecut(args: &[&str]) -> stablecut_cli::Report {
    run(std::iter::once("stablecut").chain(args.iter().copied()))
}

#[test]
fn stable_oct_on_five_cycle() {
    let c5 = data("c5.txt");
    let r = stablecut(&["solve", "oct", &c5, "--k", "1"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("verdict yes"));
    assert!(r.stdout.contains("check independent"));
    let r = stablecut(&["solve", "oct", &c5, "--k", "0"]);
    assert_eq!(r.code, EXIT_NO);
    assert!(r.stdout.contains("verdict no"));
}

#[test]
fn multicut_json_report() {
    let r = stablecut(&[
        "solve",
        "multicut",
        &data("p4.txt"),
        "--terminals",
        &data("p4_terminals.txt"),
        "--k",
        "1",
        "--json",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(value["feasible"], true);
    assert_eq!(value["solution"].as_array().unwrap().len(), 1);
}

#[test]
fn dfvs_needs_one_vertex_per_cycle() {
    let two = data("two_cycles.txt");
    assert_eq!(stablecut(&["solve", "dfvs", &two, "--k", "1"]).code, EXIT_NO);
    let r = stablecut(&["solve", "dfvs", &two, "--k", "2", "--mode", "rand", "--seed", "3"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
}

#[test]
fn cover_verifies_each_construction() {
    let c5 = data("c5.txt");
    for construction in ["lopsided", "hash", "random"] {
        let r = stablecut(&["cover", &c5, "--k", "2", "--construction", construction, "--verify"]);
        assert_eq!(r.code, EXIT_OK, "{construction}: {}", r.stderr);
        assert!(r.stdout.ends_with("# verdict covered\n"));
    }
    let r = stablecut(&["cover", &c5, "--k", "2", "--modulator", "0,1", "--verify", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(value["verdict"]["verdict"], "covered");
}

#[test]
fn oracle_and_sparsify_agree_on_path() {
    let p4 = data("p4.txt");
    let pairs = data("p4_terminals.txt");
    let r = stablecut(&["oracle", "multicuts", &p4, &pairs, "--k", "1"]);
    assert_eq!(r.stdout, "# 4 sets\n{0}\n{1}\n{2}\n{3}\n");
    let r = stablecut(&["sparsify", &p4, &pairs, "--k", "1"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("# kept 0 1 2 3"));
    let r = stablecut(&["oracle", "solve", "multicut", &p4, "--terminals", &pairs, "--k", "0"]);
    assert_eq!(r.code, EXIT_NO);
}

#[test]
fn gen_then_sparsify_deletes_in_dense_core() {
    let dir = std::env::temp_dir().join(format!("stablecut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("g.txt");
    let pairs = dir.join("t.txt");
    let r = stablecut(&[
        "gen",
        "dense-core",
        "--core",
        "8",
        "--extra",
        "3",
        "--terminals",
        "2",
        "--seed",
        "4",
        "--terminals-out",
        pairs.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    std::fs::write(&graph, &r.stdout).unwrap();
    let args = [
        "sparsify",
        graph.to_str().unwrap(),
        pairs.to_str().unwrap(),
        "--k",
        "0",
        "--connected-set-size",
        "2",
        "--root-in-cap",
        "0",
    ];
    let r = stablecut(&args);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert!(r.stdout.contains("irrelevant"));
    assert_eq!(stablecut(&args), r);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_reproducible() {
    let c5 = data("c5.txt");
    let args = [
        "solve", "oct", &c5, "--k", "2", "--mode", "rand", "--seed", "11", "--json",
    ];
    assert_eq!(stablecut(&args), stablecut(&args));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(stablecut(&["solve", "oct"]).code, EXIT_USAGE);
    assert_eq!(stablecut(&["bogus"]).code, EXIT_USAGE);
    let r = stablecut(&["solve", "separator", &data("c5.txt"), "--k", "1"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("--source"));
    let r = stablecut(&["solve", "dfvs", &data("c5.txt"), "--k", "1"]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = stablecut(&["solve", "oct", &data("missing.txt"), "--k", "1"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert_eq!(stablecut(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_stablecut");
    let c5 = data("c5.txt");
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("STABLECUT_SEED")
            .stdout(Stdio::null())
            .stderr(Stdio::null())
            .status()
            .unwrap()
            .code()
    };
    assert_eq!(status(&["solve", "oct", &c5, "--k", "1"]), Some(EXIT_OK));
    assert_eq!(status(&["solve", "oct", &c5, "--k", "0"]), Some(EXIT_NO));
    assert_eq!(status(&["solve"]), Some(EXIT_USAGE));
    let seeded = Command::new(bin)
        .args(["solve", "oct", &c5, "--k", "1", "--mode", "rand"])
        .env("STABLECUT_SEED", "5")
        .output()
        .unwrap();
    let explicit = Command::new(bin)
        .args(["solve", "oct", &c5, "--k", "1", "--mode", "rand", "--seed", "5"])
        .output()
        .unwrap();
    assert_eq!(seeded.stdout, explicit.stdout);
}
