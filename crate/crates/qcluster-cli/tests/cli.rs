use std::path::PathBuf;
use std::process::{Command, Output};

fn qcluster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcluster"))
        .args(args)
        .env_remove("QCLUSTER_GOLDEN_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qcluster-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_golden_a3_exits_zero() {
    let o = qcluster(&["verify", "--suite", "golden-A3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("golden-A3: 11/11 passed\n"));
}

#[test]
fn a1_quiver_as_dot_has_three_nodes() {
    let o = qcluster(&["quiver", "build", "--type", "A", "--rank", "1", "--word", "1", "--emit-dot"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.lines().filter(|l| l.contains("shape=")).count(), 3, "{dot}");
    assert_eq!(dot.matches("->").count(), 2);
}

#[test]
fn b3_phi1_report_has_the_35_step_sequence() {
    let o = qcluster(&["flip", "--example", "B3", "--which", "phi1", "--report", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["sequence"].as_array().unwrap().len(), 35);
    assert_eq!(v["factors"].as_array().unwrap().len(), 35);
    assert_eq!(v["roots"].as_array().unwrap().len(), 3);
    assert!(v.get("dot").is_none());
}

#[test]
fn output_is_byte_identical_across_runs_and_job_counts() {
    let a = qcluster(&["verify", "--suite", "golden-B3", "--report", "json", "--jobs", "1"]);
    let b = qcluster(&["verify", "--suite", "golden-B3", "--report", "json", "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let f = qcluster(&["flip", "--example", "A3", "--which", "phi3", "--report", "junit"]);
    let g = qcluster(&["flip", "--example", "A3", "--which", "phi3", "--report", "junit"]);
    assert_eq!(f.stdout, g.stdout);
}

#[test]
fn seed_file_round_trip_through_flip() {
    let dir = scratch("roundtrip");
    let seed = dir.join("seed.json");
    let seed_arg = seed.to_str().unwrap();
    let o = qcluster(&[
        "quiver", "build", "--type", "A", "--rank", "3", "--word", "1,2,1,3,2,1", "--mode", "doubled", "--out", seed_arg,
    ]);
    assert!(o.status.success());
    let flipped = qcluster(&["flip", "--seed", seed_arg, "--which", "phi1", "--report", "text"]);
    assert!(flipped.status.success(), "{}", String::from_utf8_lossy(&flipped.stderr));
    assert!(stdout(&flipped).contains("sequence (10): 1̄,2̄,6,3̄,5,3,4̄,5̄,2̄,6̄"));
    // Φ₃ lives on the tensor-square quiver, not on this one
    let wrong = qcluster(&["flip", "--seed", seed_arg, "--which", "phi3"]);
    assert_eq!(wrong.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn mutation_twice_at_a_node_restores_the_seed() {
    let dir = scratch("mutate");
    let seed = dir.join("seed.json");
    let back = dir.join("back.json");
    let seed_arg = seed.to_str().unwrap();
    assert!(qcluster(&["quiver", "build", "--example", "B3", "--out", seed_arg]).status.success());
    let o = qcluster(&["mutate", "--seed", seed_arg, "--at", "3b,3b", "--out", back.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let original: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&seed).unwrap()).unwrap();
    let restored: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&back).unwrap()).unwrap();
    assert_eq!(original["seed"], restored["seed"]);
    let frozen = qcluster(&["mutate", "--seed", seed_arg, "--at", "1"]);
    assert_eq!(frozen.status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn polarize_renders_the_a1_flip_exponent() {
    let o = qcluster(&["polarize", "--example", "A1", "--render-phi", "phi1", "--format", "latexish", "--shift"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("Φ #1: g_b(e^{πb(2u1-4λ1)})"), "{text}");
    assert!(text.contains("K'_1 = e^{πb(2u1-2λ1)}"));
    let json = qcluster(&["polarize", "--example", "A3", "--lambda", "zero", "--render-phi", "phi3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["mode"], "tensorsquare");
    assert_eq!(v["phi"].as_array().unwrap().len(), 10);
    let clash = qcluster(&["polarize", "--example", "A3", "--mode", "single", "--render-phi", "phi3"]);
    assert_eq!(clash.status.code(), Some(2));
}

#[test]
fn oracle_identities_pass() {
    let o = qcluster(&["oracle", "--identity", "all", "--order", "6", "--samples", "20"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(qcluster(&["oracle", "--identity", "pentagon"]).status.code(), Some(2));
}

#[test]
fn paths_list_f_and_e_paths() {
    let o = qcluster(&["quiver", "paths", "--example", "A3", "--root", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("F path  (4,9)"), "{text}");
    assert!(text.contains("E path  (9,5,3,E)"), "{text}");
    assert!(text.contains("e       X_{3,5,9} + X_{5,9} + X_{9}"));
}

#[test]
fn failing_checks_exit_one() {
    let dir = scratch("golden");
    let a1 = include_str!("../../qcluster/golden/a1.json");
    std::fs::write(dir.join("a1.json"), a1.replace("\"sequence\": \"1b\"", "\"sequence\": \"2b\"")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qcluster"))
        .args(["verify", "--suite", "golden-A1", "--report", "junit"])
        .env("QCLUSTER_GOLDEN_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("<failure message="));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(qcluster(&["quiver", "build", "--type", "A", "--rank", "2", "--word", "1,1,2"]).status.code(), Some(2));
    assert!(!qcluster(&["flip", "--which", "phi2", "--example", "A1"]).status.success());
    assert!(!qcluster(&["quiver", "build"]).status.success());
    assert!(!qcluster(&["verify", "--suite", "golden-G2"]).status.success());
}
