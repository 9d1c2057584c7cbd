//! Black-box tests of the command line binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigcd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gcd_command_splits_and_reports() {
    let out = run(&[
        "gcd",
        "--tset",
        &fixture("gaussian_pair.tset"),
        "--a",
        &format!("@{}", fixture("gaussian_pair_a.txt")),
        "--b",
        &format!("@{}", fixture("gaussian_pair_b.txt")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("component 1:"));
    assert!(text.contains("component 2:"));
    assert!(text.contains("z2 - z1"));
    assert!(text.contains("z2 + z1"));
    assert!(text.contains("primes used:"));
}

#[test]
fn gcd_json_schema() {
    let out = run(&[
        "gcd",
        "--tset",
        &fixture("four_components.tset"),
        "--a",
        &format!("@{}", fixture("four_components_a.txt")),
        "--b",
        &format!("@{}", fixture("four_components_b.txt")),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let components = doc["components"].as_array().unwrap();
    assert_eq!(components.len(), 4);
    for c in components {
        assert!(c["tset"].is_array());
        assert!(c["gcd"].is_string());
    }
    assert!(doc["primes_used"].as_u64().unwrap() >= 1);
    let splits = doc["split_events"].as_array().unwrap();
    assert!(!splits.is_empty());
    for s in splits {
        assert!(s["level"].is_u64());
        assert!(s["u"].is_string());
        assert!(s["v"].is_string());
    }
}

#[test]
fn gcd_output_is_deterministic_across_jobs() {
    let base = [
        "gcd",
        "--tset",
        &fixture("four_components.tset"),
        "--a",
        &format!("@{}", fixture("four_components_a.txt")),
        "--b",
        &format!("@{}", fixture("four_components_b.txt")),
        "--json",
    ]
    .map(String::from);
    let a = run(&base.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    let b = run(&base.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    let mut with_jobs: Vec<String> = base.to_vec();
    with_jobs.push("--jobs".into());
    with_jobs.push("4".into());
    let c = run(&with_jobs.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a), stdout(&c));
}

#[test]
fn gcd_no_check_prime_flag() {
    let out = run(&[
        "gcd",
        "--tset",
        &fixture("gaussian_pair.tset"),
        "--a",
        "x^2 - 1",
        "--b",
        "x - 1",
        "--no-check-prime",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("gcd: x - 1"));
}

#[test]
fn invalid_input_exits_one() {
    let out = run(&[
        "gcd",
        "--tset",
        &fixture("gaussian_pair.tset"),
        "--a",
        "(3*z1+51)/2",
        "--b",
        "x",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["gcd", "--tset", "/nonexistent.tset", "--a", "x", "--b", "x"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_radical_input_exits_two() {
    let dir = std::env::temp_dir().join("trigcd-nonradical-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.tset");
    std::fs::write(&path, "vars: z1\nt1: z1^2 - 2*z1 + 1\n").unwrap();
    let out = run(&[
        "gcd",
        "--tset",
        path.to_str().unwrap(),
        "--a",
        "x^2 - 1",
        "--b",
        "x - 1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mul_command_and_count() {
    let out = run(&[
        "mul",
        "--tset",
        &fixture("gaussian_pair.tset"),
        "--a",
        "z2 - z1",
        "--b",
        "z2 + z1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0");

    // over a fully dense set with dense operands the reported count equals
    // the closed-form dense bound
    let out = run(&[
        "mul",
        "--tset",
        &fixture("dense_pair.tset"),
        "--a",
        "(2*z1 + 3)*z2 + 4*z1 + 5",
        "--b",
        "(6*z1 + 7)*z2 + 8*z1 + 9",
        "--count-muls",
    ]);
    let text = stdout(&out);
    assert!(text.contains("multiplications: 30"));
    assert!(text.contains("dense bound: 30"));
}

#[test]
fn inv_command_reports_units_and_splits() {
    let out = run(&["inv", "--tset", &fixture("gaussian_pair.tset"), "--a", "z1"]);
    assert_eq!(stdout(&out).trim(), "-z1");

    let out = run(&[
        "inv",
        "--tset",
        &fixture("gaussian_pair.tset"),
        "--a",
        "z1 - z2",
    ]);
    let text = stdout(&out);
    assert!(text.contains("zero-divisor"));
    assert!(text.contains("z2 - z1"));
    assert!(text.contains("z2 + z1"));
}

#[test]
fn radical_test_command() {
    let f = fixture("root_of_three.tset");
    assert_eq!(
        stdout(&run(&["radical-test", "--tset", &f, "--prime", "3"])).trim(),
        "False"
    );
    assert_eq!(
        stdout(&run(&["radical-test", "--tset", &f, "--prime", "5"])).trim(),
        "True"
    );
    let g = fixture("fractional_cubic.tset");
    let text = stdout(&run(&["radical-test", "--tset", &g, "--prime", "7"]));
    assert!(text.starts_with("ZeroDivisor"));
    assert!(text.contains("level 1"));
}

#[test]
fn bench_command_runs_profiles() {
    let out = run(&[
        "bench",
        "--profile",
        "table2",
        "--degrees",
        "2,2",
        "--seed",
        "3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["profile"], "table2");
    assert!(doc["primes_used"].as_u64().unwrap() >= 1);
    assert!(doc["total_secs"].as_f64().unwrap() >= 0.0);
    assert!(doc["divide_secs"].as_f64().unwrap() >= 0.0);

    // identical invocations are deterministic in everything but timing
    let args = [
        "bench",
        "--profile",
        "table1",
        "--degrees",
        "2,2",
        "--seed",
        "5",
        "--json",
    ];
    let a: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    for key in ["profile", "degrees", "seed", "primes_used", "components"] {
        assert_eq!(a[key], b[key], "{key} differs between identical runs");
    }
}
