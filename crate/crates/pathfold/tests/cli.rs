//! End-to-end tests of the `pathfold` binary: golden outputs, exit codes,
//! and the shape of every subcommand's output.

use std::process::Command;

use pathfold::path::Path;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathfold"))
}

/// Run with the given arguments, expect exit 0, return stdout.
fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary should run");
    assert!(
        out.status.success(),
        "args {args:?} failed with {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be UTF-8")
}

#[test]
fn count_golden_values() {
    // Each quadruple was verified against an independent brute-force
    // enumeration of all step sequences.
    let cases = [
        (("2", "8"), "lukasiewicz=7 weighted_prefixes=28 dyck=0\n"),
        (("2", "9"), "lukasiewicz=0 weighted_prefixes=84 dyck=12\n"),
        (("1", "5"), "lukasiewicz=2 weighted_prefixes=10 dyck=0\n"),
        (("3", "6"), "lukasiewicz=2 weighted_prefixes=6 dyck=0\n"),
    ];
    for ((m, n), expected) in cases {
        assert_eq!(run_ok(&["count", "-m", m, "-n", n]), expected);
    }
}

#[test]
fn fold_and_unfold_golden_words() {
    let folded = run_ok(&[
        "fold",
        "-m",
        "3",
        "--path",
        "UUUDUUUUUUUUDUUUUUUUDU",
        "--decoration",
        "1,3,2",
    ]);
    assert_eq!(folded, "UUUDUUUUUUUDDUUDUUUDUD 9\n");

    let unfolded = run_ok(&[
        "unfold",
        "-m",
        "3",
        "--path",
        "UUUDUUUUUUUDDUUDUUUDUD",
        "--point",
        "9",
    ]);
    assert_eq!(unfolded, "UUUDUUUUUUUUDUUUUUUUDU 1,3,2\n");
}

#[test]
fn shortest_path_and_determinism() {
    // The only 1-Łukasiewicz path of length 1 is a single down-step.
    for seed in ["0", "1", "17"] {
        assert_eq!(run_ok(&["sample", "-m", "1", "-n", "1", "--seed", seed]), "D\n");
    }
    // The same seed reproduces the same paths exactly.
    let args = ["sample", "-m", "2", "-n", "40", "--count", "5", "--seed", "99"];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn sampled_paths_are_valid_members_of_their_family() {
    let out = run_ok(&["sample", "-m", "2", "-n", "25", "--count", "8", "--seed", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    for line in lines {
        let p = Path::parse(2, line).expect("printed word parses back");
        assert!(p.is_mluka(), "{line} is not a 2-Lukasiewicz path");
    }

    let out = run_ok(&[
        "sample", "-m", "2", "-n", "24", "--family", "dyck", "--count", "4", "--seed", "4",
    ]);
    for line in out.lines() {
        let p = Path::parse(2, line).expect("printed word parses back");
        assert!(p.is_mdyck_path(), "{line} is not a 2-Dyck path");
    }
}

#[test]
fn stats_mode_emits_one_json_object_per_path() {
    let out = run_ok(&[
        "sample", "-m", "3", "-n", "50", "--count", "3", "--stats", "--seed", "12",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON");
        let word = v["path"].as_str().expect("path field");
        assert!(Path::parse(3, word).unwrap().is_mluka());
        assert!(v["bits"].as_u64().expect("bits field") >= 50);
        assert!(v["accesses"].as_u64().expect("accesses field") >= 50);
        assert!(v["final_prefix_height"].as_i64().is_some());
        for event in v["unfolds"].as_array().expect("unfolds array") {
            assert!(event["iteration"].as_u64().is_some());
            assert!(event["point"].as_u64().is_some());
        }
    }
}

#[test]
fn bench_emits_a_well_formed_tsv_table() {
    let out = run_ok(&[
        "bench", "-m", "2", "--ns", "100,1000", "--samples", "20", "--seed", "6",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n\tbits_per_step\taccesses_per_step\tvar_accesses_per_step\tmean_final_height"
    );
    assert_eq!(lines.len(), 3);
    for (row, n) in lines[1..].iter().zip(["100", "1000"]) {
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[0], n);
        for col in &cols[1..] {
            let value: f64 = col.parse().expect("numeric column");
            assert!(value.is_finite() && value >= 0.0);
        }
        // Sanity on the physics: at least one bit and one access per step.
        assert!(cols[1].parse::<f64>().unwrap() > 1.0);
        assert!(cols[2].parse::<f64>().unwrap() > 1.0);
    }
}

#[test]
fn limitlaw_writes_the_solved_table() {
    let path = std::env::temp_dir().join(format!("pathfold-law-{}.tsv", std::process::id()));
    let stdout = run_ok(&[
        "limitlaw",
        "--xmax",
        "4",
        "--dx",
        "1e-3",
        "--out",
        path.to_str().unwrap(),
    ]);
    // Summary on stdout: mean and variance of the solved law.
    let mean: f64 = stdout
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix("mean="))
        .expect("mean= on stdout")
        .parse()
        .unwrap();
    assert!((mean - 0.25).abs() < 1e-5, "mean {mean}");

    let table = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "x\tcdf");
    assert_eq!(lines.len(), 4002, "header plus 4001 mesh points");
    let mut checked = 0;
    for row in &lines[1..] {
        let (x, f) = row.split_once('\t').expect("two columns");
        let x: f64 = x.parse().unwrap();
        let f: f64 = f.parse().unwrap();
        if (x - 1.0).abs() < 1e-12 {
            assert!((f - 0.973_644_831_56).abs() < 1e-6, "F(1) = {f}");
            checked += 1;
        }
        if (x - 4.0).abs() < 1e-12 {
            assert!(f > 0.999_999, "F(4) = {f}");
            checked += 1;
        }
    }
    assert_eq!(checked, 2, "both probe rows present");
}

#[test]
fn limitlaw_simulation_agrees_with_the_table() {
    let path = std::env::temp_dir().join(format!("pathfold-sim-{}.tsv", std::process::id()));
    let stdout = run_ok(&[
        "limitlaw",
        "--xmax",
        "4",
        "--dx",
        "1e-3",
        "--simulate",
        "2000",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    let ks: f64 = stdout
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix("ks="))
        .expect("ks= on stdout")
        .parse()
        .unwrap();
    assert!(ks < 0.05, "Kolmogorov-Smirnov distance {ks} too large");

    let table = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "x\tcdf\tecdf");
    // The empirical column must track the solved cdf within the KS bound.
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split('\t').collect();
        let cdf: f64 = cols[1].parse().unwrap();
        let ecdf: f64 = cols[2].parse().unwrap();
        assert!((cdf - ecdf).abs() <= ks + 1e-12);
    }
}

#[test]
fn verify_passes_and_reports_each_check() {
    let out = bin()
        .args(["verify", "-m", "1,2", "--max-n", "9"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("verify: PASS"));
    assert!(!stdout.contains("FAIL"));
    assert_eq!(stdout.lines().filter(|l| l.starts_with("ok: ")).count(), 8);
}

#[test]
fn usage_errors_exit_2_runtime_errors_exit_1() {
    // Impossible value for -m: clap usage error.
    let out = bin().args(["sample", "-m", "0", "-n", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Valid arguments, impossible request: runtime error with a clear message.
    let out = bin().args(["sample", "-m", "2", "-n", "9"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("divisible"), "stderr: {stderr}");

    // Bad solver mesh: runtime error as well.
    let out = bin().args(["limitlaw", "--dx", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("dx"), "stderr: {stderr}");

    // Help exits 0.
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
