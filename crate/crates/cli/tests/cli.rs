//! End-to-end tests of the binary: exit-code contract, output formats,
//! and byte-stable determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_dualcavity")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn default_config(dir: &Path) -> PathBuf {
    write_config(
        dir,
        "config.json",
        r#"{
            "L": 3.141592653589793,
            "V": 3.141592653589793,
            "n_levels": 12,
            "modes": [
                {"alpha": 1, "C1_re": 0.5, "C2_re": 0.5},
                {"alpha": 2, "C1_re": 0.2, "C1_im": 0.3, "C2_re": 0.2, "C2_im": -0.3}
            ],
            "grid": {"nz": 16, "nt": 8, "periods": 1.0}
        }"#,
    )
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

#[test]
fn verify_passes_on_default_config() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    let output = run(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("all 35 checks passed"));
    assert!(out.join("verify_report.json").exists());
    assert!(out.join("manifest.json").exists());
}

#[test]
fn forced_tolerance_failure_exits_one_but_writes_report() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    let output = run(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--tol",
        "spectrum=1e-30",
        "--tol",
        "maxwell_residual=1e-30",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let report = std::fs::read_to_string(out.join("verify_report.json")).unwrap();
    assert!(report.contains("\"all_pass\": false"));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("FAIL"));
}

#[test]
fn malformed_config_exits_two() {
    let dir = TempDir::new().unwrap();
    let config = write_config(dir.path(), "bad.json", "{ not json");
    let out = dir.path().join("out");
    let output = run(&[
        "classical-evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn invalid_field_exits_two_with_field_name() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "bad.json",
        r#"{"L": -1.0, "V": 1.0, "modes": [{"alpha": 1}]}"#,
    );
    let out = dir.path().join("out");
    let output = run(&[
        "classical-evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("`L`"), "stderr: {stderr}");
}

#[test]
fn missing_config_exits_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let output = run(&[
        "verify",
        "--config",
        dir.path().join("nope.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn truncation_below_envelope_exits_three() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "tiny.json",
        r#"{"L": 3.141592653589793, "V": 1.0, "n_levels": 1,
            "modes": [{"alpha": 1, "C1_re": 0.5, "C2_re": 0.5}]}"#,
    );
    let out = dir.path().join("out");
    let output = run(&[
        "quantize",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn oversized_truncation_exits_three() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "huge.json",
        r#"{"L": 3.141592653589793, "V": 1.0, "n_levels": 100,
            "modes": [{"alpha": 1, "C1_re": 0.5, "C2_re": 0.5}]}"#,
    );
    let out = dir.path().join("out");
    let output = run(&[
        "quantize",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn unknown_tolerance_exits_two() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    let output = run(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--tol",
        "bogus=1e-3",
    ]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn vacuum_config_emits_zero_fields_and_energy() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "vacuum.json",
        r#"{"L": 3.141592653589793, "V": 3.141592653589793,
            "modes": [{"alpha": 1}],
            "grid": {"nz": 4, "nt": 4, "periods": 1.0}}"#,
    );
    let out = dir.path().join("out");
    let output = run(&[
        "classical-evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let fields = std::fs::read_to_string(out.join("fields.csv")).unwrap();
    for line in fields.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        for cell in &cells[3..] {
            assert_eq!(cell.parse::<f64>().unwrap(), 0.0, "line: {line}");
        }
    }
    let energy = std::fs::read_to_string(out.join("energy.csv")).unwrap();
    for line in energy.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        for cell in &cells[1..] {
            assert_eq!(cell.parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn cosine_mode_energy_trace_is_half() {
    let dir = TempDir::new().unwrap();
    let config = write_config(
        dir.path(),
        "cos.json",
        r#"{"L": 3.141592653589793, "V": 3.141592653589793,
            "modes": [{"alpha": 1, "C1_re": 0.5, "C2_re": 0.5}],
            "grid": {"nz": 4, "nt": 12, "periods": 1.0}}"#,
    );
    let out = dir.path().join("out");
    run(&[
        "classical-evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let energy = std::fs::read_to_string(out.join("energy.csv")).unwrap();
    for line in energy.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let h1: f64 = cells[1].parse().unwrap();
        let h2: f64 = cells[3].parse().unwrap();
        assert!((h1 - 0.5).abs() < 1e-12, "H1 = {h1}");
        assert!((h2 - 0.5).abs() < 1e-12, "H2 = {h2}");
    }
}

#[test]
fn multi_mode_energy_trace_is_conserved() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    run(&[
        "classical-evolve",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let energy = std::fs::read_to_string(out.join("energy.csv")).unwrap();
    for column in [1usize, 3] {
        let values: Vec<f64> = energy
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(column).unwrap().parse().unwrap())
            .collect();
        let base = values[0];
        let spread = values
            .iter()
            .fold(0.0_f64, |acc, v| acc.max((v - base).abs()));
        assert!(spread / base.abs() <= 1e-10, "column {column}: {spread}");
    }
}

#[test]
fn verify_report_carries_current_measurements() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    run(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("verify_report.json")).unwrap())
            .unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"plane_wave_current_null"));
    assert!(names.contains(&"plane_wave_charge_density"));
    assert!(names.contains(&"plane_wave_density_closed_form"));
}

#[test]
fn spectrum_file_begins_with_oscillator_ladder() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    run(&[
        "quantize",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let spectrum = std::fs::read_to_string(out.join("spectrum.csv")).unwrap();
    let values: Vec<f64> = spectrum
        .lines()
        .skip(1)
        .map(|l| l.parse().unwrap())
        .collect();
    assert!((values[0] - 0.5).abs() < 1e-10);
    assert!((values[1] - 1.5).abs() < 1e-10);
    assert!((values[2] - 2.5).abs() < 1e-10);
}

#[test]
fn defect_report_shows_top_level_defect() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    run(&[
        "quantize",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let defect: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("defect.json")).unwrap()).unwrap();
    assert_eq!(defect["top_defect"].as_f64().unwrap(), -11.0);
    assert_eq!(defect["expected_top_defect"].as_f64().unwrap(), -11.0);
}

#[test]
fn operator_dump_hermitian_flags_match_entries() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    run(&[
        "quantize",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    for name in ["a", "e1", "h1", "e_combined", "hamiltonian"] {
        let dump: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(out.join("operators").join(format!("{name}.json"))).unwrap(),
        )
        .unwrap();
        let dim = dump["dim"].as_u64().unwrap() as usize;
        let entries = dump["entries"].as_array().unwrap();
        assert_eq!(entries.len(), dim * dim);
        // recompute max |M - M^H| and compare with the stored flag
        let get = |r: usize, c: usize| -> (f64, f64) {
            let e = entries[r * dim + c].as_array().unwrap();
            (e[0].as_f64().unwrap(), e[1].as_f64().unwrap())
        };
        let mut dev = 0.0_f64;
        let mut scale = 0.0_f64;
        for r in 0..dim {
            for c in 0..dim {
                let (re, im) = get(r, c);
                let (tre, tim) = get(c, r);
                dev = dev.max(((re - tre).powi(2) + (im + tim).powi(2)).sqrt());
                scale = scale.max((re * re + im * im).sqrt());
            }
        }
        let hermitian = scale == 0.0 || dev <= 1e-12 * scale;
        assert_eq!(
            dump["hermitian"].as_bool().unwrap(),
            hermitian,
            "flag mismatch for {name}"
        );
    }
}

#[test]
fn verify_reports_are_byte_identical_for_fixed_seed() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let mut reports = Vec::new();
    for run_dir in ["a", "b"] {
        let out = dir.path().join(run_dir);
        let output = run(&[
            "verify",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--seed",
            "123",
        ]);
        assert_eq!(output.status.code(), Some(0));
        reports.push(std::fs::read(out.join("verify_report.json")).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn field_csv_cells_round_trip_exactly() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        run(&[
            "classical-evolve",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    let a = std::fs::read(out_a.join("fields.csv")).unwrap();
    let b = std::fs::read(out_b.join("fields.csv")).unwrap();
    assert_eq!(a, b);
    // spot-check the 17-significant-digit format
    let text = String::from_utf8(a).unwrap();
    let line = text.lines().nth(1).unwrap();
    let cell = line.split(',').nth(3).unwrap();
    assert!(cell.contains('e'), "scientific format expected: {cell}");
}

#[test]
fn currents_csv_has_all_eight_components() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    run(&[
        "currents",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let csv = std::fs::read_to_string(out.join("currents.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(header.split(',').count(), 2 + 16);
    for current in ["j1", "j2"] {
        for mu in 1..=4 {
            assert!(header.contains(&format!("{current}_{mu}_re")));
            assert!(header.contains(&format!("{current}_{mu}_im")));
        }
    }
}

#[test]
fn charge_report_schema() {
    let dir = TempDir::new().unwrap();
    let config = default_config(dir.path());
    let out = dir.path().join("out");
    let output = run(&[
        "charge-report",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("charge_report.json")).unwrap())
            .unwrap();
    assert_eq!(report["modes"].as_array().unwrap().len(), 2);
    assert!(report["g"].as_f64().unwrap() > 0.0);
    assert!(!report["density_profile"].as_array().unwrap().is_empty());
    assert!((report["dirac"]["dirac_value"].as_f64().unwrap() - 137.0).abs() < 1e-12);
    // charge_quantum = g * omega per mode
    let g = report["g"].as_f64().unwrap();
    for mode in report["modes"].as_array().unwrap() {
        let q = mode["charge_quantum"].as_f64().unwrap();
        let omega = mode["omega"].as_f64().unwrap();
        assert_eq!(q, g * omega);
    }
}
