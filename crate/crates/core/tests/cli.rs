//! CLI contract tests: exit codes, unit conversion, CSV shape, config-file
//! precedence, and seeded reproducibility.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secrecap"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// First number on the line starting with `key =`.
fn scalar(out: &Output, key: &str) -> f64 {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no '{key} =' line in: {}", stdout(out)))
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn capacity_prints_value_and_diagnostics() {
    let out = run(&["capacity", "--snr-db", "10", "--rho", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("C_s = "));
    assert!(text.contains("terms_used = 1"));
    assert!(text.contains("last_term_ratio = "));
}

#[test]
fn bits_flag_divides_by_ln2_and_nothing_else() {
    let nats = scalar(&run(&["capacity", "--snr-db", "10", "--rho", "0.4"]), "C_s");
    let bits = scalar(
        &run(&["capacity", "--snr-db", "10", "--rho", "0.4", "--units", "bits"]),
        "C_s",
    );
    assert!((bits - nats / std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn invalid_parameters_exit_2_naming_the_invariant() {
    let out = run(&["capacity", "--lambda1", "0", "--lambda2", "1", "--rho", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("lambda1"), "stderr: {err}");

    let out = run(&["capacity", "--snr-db", "10", "--rho", "1.5"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["outage", "--snr-db", "10", "--rho", "0"]); // no --rate
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["capacity", "--rho", "0"]); // no SNR at all
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn series_cap_exhaustion_exits_3_with_partial_on_stderr() {
    let out = run(&["capacity", "--snr-db", "10", "--rho", "0.9", "--kmax", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("partial value"), "stderr: {err}");
}

#[test]
fn unwritable_output_path_exits_4() {
    let out = run(&[
        "sweep",
        "--snr-stop", "1",
        "--out", "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn outage_symmetry_and_saturation() {
    let half = scalar(
        &run(&["outage", "--snr-db", "0", "--rho", "0", "--rate", "0"]),
        "P_out",
    );
    assert!((half - 0.5).abs() < 1e-12);

    let third = scalar(
        &run(&[
            "outage", "--lambda1", "2", "--lambda2", "1", "--rho", "0", "--rate", "0",
        ]),
        "P_out",
    );
    assert!((third - 1.0 / 3.0).abs() < 1e-7);

    let sat = scalar(
        &run(&["outage", "--snr-db", "10", "--rho", "0.5", "--rate", "30"]),
        "P_out",
    );
    assert!(sat >= 1.0 - 1e-6);
}

#[test]
fn sweep_csv_shape_and_ordering() {
    let out = run(&[
        "sweep",
        "--snr-start", "0",
        "--snr-stop", "2",
        "--snr-step", "1",
        "--rho", "0,0.5",
        "--units", "bits",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(lines[0], "snr_db,rho,cs_nats,cs_units_requested,terms_used");
    assert_eq!(lines.len(), 1 + 3 * 2);
    // snr-major, then rho
    let keys: Vec<(f64, f64)> = lines[1..]
        .iter()
        .map(|l| {
            let mut it = l.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(
        keys,
        vec![
            (0.0, 0.0), (0.0, 0.5),
            (1.0, 0.0), (1.0, 0.5),
            (2.0, 0.0), (2.0, 0.5)
        ]
    );
    // bits conversion lives only in cs_units_requested
    for l in &lines[1..] {
        let f: Vec<f64> = l.split(',').take(4).map(|v| v.parse().unwrap()).collect();
        assert!((f[3] - f[2] / std::f64::consts::LN_2).abs() < 1e-15);
    }
}

#[test]
fn empty_rho_list_exits_2() {
    let out = run(&["sweep", "--snr-stop", "1", "--rho", ""]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_feeds_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join("secrecap-cli-config");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(
        &path,
        "# grid defaults\nsnr_db = 10\nrho = 0.4\nunits = bits\n",
    )
    .unwrap();
    let cfg = path.to_str().unwrap();

    let from_config = scalar(&run(&["capacity", "--config", cfg]), "C_s");
    let explicit = scalar(
        &run(&["capacity", "--snr-db", "10", "--rho", "0.4", "--units", "bits"]),
        "C_s",
    );
    assert_eq!(from_config, explicit);

    // a flag overrides the config value for the same key
    let overridden = scalar(&run(&["capacity", "--config", cfg, "--units", "nats"]), "C_s");
    assert!((from_config - overridden / std::f64::consts::LN_2).abs() < 1e-15);

    let malformed = dir.join("bad.conf");
    std::fs::write(&malformed, "snr_db 10\n").unwrap();
    let out = run(&["capacity", "--config", malformed.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["capacity", "--config", dir.join("missing.conf").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn simulate_reports_seed_and_reproduces() {
    let args = [
        "simulate", "--snr-db", "10", "--rho", "0.5",
        "--mc-samples", "50000", "--seed", "99", "--workers", "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(scalar(&a, "seed"), 99.0);

    // without --seed the auto-generated value is announced
    let c = run(&[
        "simulate", "--snr-db", "10", "--rho", "0.5", "--mc-samples", "10000",
    ]);
    assert!(stdout(&c).contains("auto-generated"));
}

#[test]
fn pdf_grid_has_expected_shape() {
    let out = run(&[
        "pdf", "--lambda1", "1", "--lambda2", "2", "--rho", "0.3",
        "--grid-points", "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(lines[0], "alpha,beta,pdf");
    assert_eq!(lines.len(), 1 + 16);
    for l in &lines[1..] {
        let f: Vec<f64> = l.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(f[2] >= 0.0);
    }
}
