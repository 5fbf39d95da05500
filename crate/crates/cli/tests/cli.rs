//! End-to-end checks of the command-line surface: output formats, the
//! exit-code contract, determinism, and the config file.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equidist"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

#[test]
fn roots_prints_triples() {
    let out = run(&["roots", "z^2+1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        assert_eq!(line.split_whitespace().count(), 3, "{line}");
    }
    assert!(lines[0].starts_with("0.0000000000000000e0 -1.0000000000000000e0"));
    assert!(lines[1].starts_with("0.0000000000000000e0 1.0000000000000000e0"));
}

#[test]
fn measure_reports_golden_ratio() {
    let out = run(&["measure", "z^2-z-1", "--domain", "disk"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"mahler\": 1.618033988749895"), "{text}");
    assert!(text.contains("\"schema_version\": 1"));
}

#[test]
fn verify_single_polynomial_passes() {
    let out = run(&["verify", "--theorem", "et31", "z^2-z-1", "--domain", "disk"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("theorem,member,n,lhs,lhs_unc,rhs,pass"));
    assert!(text.contains(",true"));
}

#[test]
fn verify_sweep_exit_zero_and_deterministic() {
    let args = [
        "verify",
        "--theorem",
        "cor32",
        "--family",
        "cycloprod",
        "--n-min",
        "55",
        "--n-max",
        "110",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "identical config must give identical bytes");
    assert!(stdout(&a).lines().count() > 3);
}

#[test]
fn forced_failure_exits_two() {
    // scaling every RHS to zero corrupts the inequality; the exit code
    // contract reports the failure
    let out = run(&[
        "verify",
        "--theorem",
        "cor32",
        "--family",
        "cycloprod",
        "--n-min",
        "55",
        "--n-max",
        "80",
        "--rhs-scale",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains(",false"));
}

#[test]
fn usage_errors_exit_one() {
    // malformed polynomial
    let out = run(&["roots", "z^^2"]);
    assert_eq!(out.status.code(), Some(1));
    // malformed domain
    let out = run(&["measure", "z^2-2", "--domain", "annulus"]);
    assert_eq!(out.status.code(), Some(1));
    // family and literal polynomial together
    let out = run(&[
        "verify", "--theorem", "cor32", "z^2-2", "--family", "cycloprod", "--n-min", "5",
        "--n-max", "9",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // family sweep without a range
    let out = run(&["verify", "--theorem", "cor32", "--family", "cycloprod"]);
    assert_eq!(out.status.code(), Some(1));
    // segment of the wrong length
    let out = run(&["measure", "z^2-2", "--domain", "segment:a=0,b=3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn nonconvergence_exits_three() {
    // a target radius of zero can never be reached for an irrational root
    let out = run(&["roots", "z^2-2", "--target-radius", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("z^2-2"), "stderr names the failing polynomial: {err}");
}

#[test]
fn growth_table_runs() {
    let out = run(&[
        "growth", "--family", "powm1", "--domain", "disk", "--n-min", "4", "--n-max", "24",
        "--step", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("parameter,n,log_sup,ratio"));
    assert!(text.lines().count() >= 4);
}

#[test]
fn sweep_emits_measure_rows() {
    let out = run(&[
        "sweep", "--family", "chebyshev", "--domain", "segment:a=-2,b=2", "--n-min", "8",
        "--n-max", "12",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("member,mahler,generalized,tilde,height,sup_norm,gap"));
    // all roots inside the segment: the generalized measure is 1
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let generalized: f64 = cells[2].parse().unwrap();
        assert!((generalized - 1.0).abs() < 1e-9, "{line}");
        let sup: f64 = cells[5].parse().unwrap();
        assert!((sup - 2.0).abs() < 1e-6, "sup of a monic chebyshev is 2: {line}");
    }
}

#[test]
fn stats_single_polynomial() {
    let out = run(&["stats", "z^4-1", "--bins", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1;1;1;1"), "each quadrant bin holds one root: {text}");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("equidist-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, "theorem=cor32\nfamily=cycloprod\nn-min=55\nn-max=80\n").unwrap();
    let out = bin()
        .args(["verify", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("cycloprod:13"));

    // explicit flag beats the config value
    let out = bin()
        .args(["verify", "--config", cfg.to_str().unwrap(), "--n-max", "64"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("cycloprod:13"));
    assert!(!text.contains("cycloprod:15"), "n-max=64 cuts the sweep: {text}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn plot_data_files() {
    let dir = std::env::temp_dir().join(format!("equidist-plot-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let prefix = dir.join("cor32");
    let out = bin()
        .args([
            "verify",
            "--theorem",
            "cor32",
            "--family",
            "cycloprod",
            "--n-min",
            "55",
            "--n-max",
            "80",
            "--plot-data",
            prefix.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lhs = std::fs::read_to_string(format!("{}.lhs.dat", prefix.display())).unwrap();
    let rhs = std::fs::read_to_string(format!("{}.rhs.dat", prefix.display())).unwrap();
    assert_eq!(lhs.lines().count(), rhs.lines().count());
    for line in lhs.lines() {
        assert_eq!(line.split_whitespace().count(), 2);
    }

    let scatter = dir.join("roots.dat");
    let out = bin()
        .args(["roots", "z^8-1", "--plot-data", scatter.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let pts = std::fs::read_to_string(&scatter).unwrap();
    assert_eq!(pts.lines().count(), 8);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn output_file_option() {
    let dir = std::env::temp_dir().join(format!("equidist-out-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    let out = bin()
        .args(["measure", "z^2-2", "--domain", "disk", "--output", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("\"mahler\""));
    let _ = std::fs::remove_dir_all(&dir);
}
