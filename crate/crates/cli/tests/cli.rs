//! End-to-end behavior of the `dpts` binary: exit codes, config handling,
//! flag overrides, and the documented sweep properties.

use std::path::Path;
use std::process::{Command, Output};

fn dpts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.conf");
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn analyze_succeeds_with_defaults() {
    let out = dpts(&["analyze"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dpts.bits_per_pulse"));
    assert!(text.contains("cow.secure"));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "source.mu = 0.2\nchannel.length_km = 100\nreceiver.visibility = 0.9\n",
    );
    let from_file = dpts(&["--config", &config, "analyze"]);
    assert!(from_file.status.success());
    let overridden = dpts(&["--config", &config, "--source.mu=0.3", "analyze"]);
    assert!(overridden.status.success());
    assert!(stdout(&from_file).contains("mu = 0.2"));
    assert!(stdout(&overridden).contains("mu = 0.3"));
    assert_ne!(stdout(&from_file), stdout(&overridden));
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "foo.bar = 1\n");
    let out = dpts(&["--config", &config, "analyze"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("foo.bar"));
}

#[test]
fn bad_override_value_exits_2() {
    let out = dpts(&["--source.mu=banana", "analyze"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_parameters_exit_3() {
    let out = dpts(&["--receiver.visibility=1.2", "analyze"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("visibility must be in [0, 1]"));
}

#[test]
fn missing_config_file_exits_4() {
    let out = dpts(&["--config", "/nonexistent/nowhere.conf", "analyze"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn unwritable_output_exits_4() {
    let out = dpts(&["--out", "/nonexistent-dir/x.csv", "analyze"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn oracle_check_passes_and_flip_sign_fails_with_5() {
    let ok = dpts(&["oracle-check"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("PASS"));

    let flipped = dpts(&["oracle-check", "--flip-sign"]);
    assert_eq!(flipped.status.code(), Some(5));
    assert!(stdout(&flipped).contains("FAIL"));
}

#[test]
fn sweep_with_no_secure_point_warns_with_6() {
    let out = dpts(&[
        "sweep",
        "--var",
        "distance_km",
        "--from",
        "400",
        "--to",
        "500",
        "--steps",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(6));
    assert!(stderr(&out).contains("no secure grid point"));
    // the CSV is still produced
    assert!(stdout(&out).lines().count() > 1);
}

#[test]
fn distance_sweep_with_optimized_mu_is_positive_and_monotone() {
    let out = dpts(&[
        "sweep",
        "--var",
        "distance_km",
        "--from",
        "0",
        "--to",
        "200",
        "--steps",
        "21",
        "--protocols",
        "dpts",
        "--optimize-mu",
        "--receiver.visibility=0.9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let dist_col = header.iter().position(|&h| h == "distance_km").unwrap();
    let rate_col = header
        .iter()
        .position(|&h| h == "dpts_bits_per_pulse")
        .unwrap();

    let mut at_50 = None;
    let mut prev = f64::INFINITY;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let d: f64 = cells[dist_col].parse().unwrap();
        let rate: f64 = cells[rate_col].parse().unwrap();
        assert!(rate <= prev + 1e-15, "rate not monotone at {d} km");
        prev = rate;
        if (d - 50.0).abs() < 1e-6 {
            at_50 = Some(rate);
        }
    }
    assert!(at_50.unwrap() > 0.0, "DPTS rate not positive at 50 km");
}

#[test]
fn visibility_sweep_shows_dpts_flatter_than_dps() {
    let out = dpts(&[
        "sweep",
        "--var",
        "visibility",
        "--from",
        "0.8",
        "--to",
        "1.0",
        "--steps",
        "5",
        "--protocols",
        "dpts,dps",
        "--optimize-mu",
        "--channel.length_km=100",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let dpts_col = header
        .iter()
        .position(|&h| h == "dpts_bits_per_pulse")
        .unwrap();
    let dps_col = header
        .iter()
        .position(|&h| h == "dps_bits_per_pulse")
        .unwrap();
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    let (dpts_low, dpts_high) = (rows[0][dpts_col], rows[4][dpts_col]);
    let (dps_low, dps_high) = (rows[0][dps_col], rows[4][dps_col]);
    assert!(dpts_high > 0.0 && dps_high > 0.0);
    let dpts_drop = (dpts_high - dpts_low) / dpts_high;
    let dps_drop = (dps_high - dps_low) / dps_high;
    assert!(
        dpts_drop < dps_drop,
        "DPTS relative drop {dpts_drop} not flatter than DPS {dps_drop}"
    );
}

#[test]
fn noiseless_simulation_reports_zero_qber_columns() {
    let out = dpts(&[
        "simulate",
        "--seed",
        "5",
        "--n-subblocks",
        "30000",
        "--receiver.visibility=1",
        "--receiver.dark_count_prob=0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    for class in ["e1_emp", "e2_emp", "e3_emp", "e4_emp"] {
        let col = header.iter().position(|&h| h == class).unwrap();
        let value: f64 = row[col].parse().unwrap();
        assert_eq!(value, 0.0, "{class} nonzero");
    }
}

#[test]
fn simulate_sigma_columns_within_three_at_full_size() {
    // 1e6 sub-blocks at the 50 km / V = 0.9 operating point, seed 1: every
    // sigma-distance column of the comparison CSV stays at or below 3.
    let out = dpts(&[
        "simulate",
        "--seed",
        "1",
        "--n-subblocks",
        "1000000",
        "--source.mu=0.2",
        "--channel.length_km=50",
        "--receiver.visibility=0.9",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let mut checked = 0;
    for (col, name) in header.iter().enumerate() {
        if name.ends_with("_sigma") {
            let value: f64 = row[col].parse().unwrap();
            assert!(value <= 3.0, "{name} = {value} exceeds 3 sigma");
            checked += 1;
        }
    }
    assert_eq!(checked, 6);
}

#[test]
fn compare_reports_saturated_ratio_near_two_at_10_km() {
    let out = dpts(&[
        "compare",
        "--source.mu=0.23",
        "--channel.length_km=10",
        "--receiver.dark_count_prob=3.5e-9",
        "--receiver.visibility=1",
        "--receiver.dead_time_s=1e-6",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ratio dpts/dps saturated = 1.9"), "text: {text}");
}

#[test]
fn optimize_mu_subcommand_reports_all_protocols() {
    let out = dpts(&[
        "optimize-mu",
        "--channel.length_km=100",
        "--receiver.dead_time_s=1e-6",
        "--receiver.dark_count_prob=3.5e-9",
        "--receiver.visibility=1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ["dpts", "dps", "cow"] {
        assert!(text.contains(&format!("{name},")), "missing {name}: {text}");
    }
}
