use clap::Parser;
use fwm_cli::{run, Cli};
use std::path::{Path, PathBuf};
use std::process::Command;

const REFERENCE: &str = include_str!("../configs/reference.toml");

/// Reference fiber and pumps, direct generation only, on a small grid.
fn direct_config(points: usize) -> String {
    let head = REFERENCE.split("[[gratings]]").next().unwrap();
    format!(
        "{head}[[channels]]\nsignal = \"+1+\"\nidler = \"-1-\"\n\n[grid]\nmin = \"-5e12 rad/s\"\nmax = \"5e12 rad/s\"\npoints = {points}\n"
    )
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("run.toml");
    std::fs::write(&path, text).unwrap();
    path
}

fn run_in(dir: &Path, config: &str, args: &[&str]) -> fwm_cli::RunReport {
    let path = write_config(dir, config);
    let mut argv = vec![
        "fwm".to_string(),
        "--config".into(),
        path.display().to_string(),
        "--out".into(),
        dir.join("out").display().to_string(),
    ];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(&Cli::try_parse_from(argv).unwrap()).unwrap()
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fwm")).args(args).output().unwrap()
}

#[test]
fn exit_status_distinguishes_config_and_compute_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), &REFERENCE.replace("\"20 um\"", "\"-5 um\""));
    let out = binary(&["--config", bad.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fiber.core_radius (line 4, column 15)"));

    let coarse = write_config(dir.path(), &REFERENCE.replace("points = 20001", "points = 401"));
    let out_dir = dir.path().join("out");
    let out = binary(&["--config", coarse.to_str().unwrap(), "--out", out_dir.to_str().unwrap(), "pair-ratio"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("jsa: grid too coarse"));

    let out = binary(&["jsi"]);
    assert_eq!(out.status.code(), Some(2));
    let out = binary(&["--config", "/nonexistent/run.toml", "jsi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_prints_the_canonical_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), REFERENCE);
    let out = binary(&["--config", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), REFERENCE);
}

#[test]
fn direct_jsi_is_a_single_normalized_lobe() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_in(dir.path(), &direct_config(401), &["jsi"]);
    let channel = &report.summary["channels"][0];
    assert_eq!(channel["peaks_above_tenth"], 1);
    assert_eq!(channel["max_normalized_intensity"], 1.0);
    let csv = std::fs::read_to_string(dir.path().join("out/jsi_0.csv")).unwrap();
    let header = csv.lines().next().unwrap();
    assert!(header.starts_with("detuning_rad_per_s,omega_s_rad_per_s,omega_i_rad_per_s,re,im,intensity"));
    assert!(header.ends_with("term (O+1+; O-1-) re,term (O+1+; O-1-) im"));
    assert_eq!(csv.lines().count(), 402);
    // 17 significant digits in scientific notation.
    let first = csv.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(first, "-5.0000000000000000e12");
}

#[test]
fn every_table_has_a_metadata_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &direct_config(41), &["--seed", "7", "jsi"]);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/jsi_0.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["command"], "jsi");
    assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(meta["seed"], 7);
    assert_eq!(meta["config"]["fiber"]["core_radius"], "20 um");
    assert_eq!(meta["grid"]["points"], 41);
    assert_eq!(meta["tolerances"]["relative"], 1e-10);
    assert_eq!(meta["resolved"]["length_m"], 0.02);
    assert!(meta["normalization"].as_str().unwrap().starts_with("own maximum = "));
}

#[test]
fn outputs_are_reproducible_and_independent_of_worker_count() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_in(a.path(), &direct_config(201), &["jsi"]);
    run_in(b.path(), &direct_config(201), &["--workers", "1", "jsi"]);
    for name in ["jsi_0.csv", "jsi_0.meta.json"] {
        let x = std::fs::read(a.path().join("out").join(name)).unwrap();
        let y = std::fs::read(b.path().join("out").join(name)).unwrap();
        assert!(x == y, "{name} differs");
    }
}

#[test]
fn json_format_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    run_in(dir.path(), &direct_config(11), &["--format", "json", "jsi"]);
    let records: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/jsi_0.json")).unwrap()).unwrap();
    assert_eq!(records.len(), 11);
    assert_eq!(records[0]["detuning_rad_per_s"], -5e12);
}

#[test]
fn overlap_tables_writes_eight_families() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_in(dir.path(), REFERENCE, &["overlap-tables"]);
    assert_eq!(report.files.len(), 8);
    for f in &report.files {
        let meta = f.with_extension("meta.json");
        assert!(meta.exists(), "{}", meta.display());
        assert_eq!(std::fs::read_to_string(f).unwrap().lines().count(), 17);
    }
    let co = &report.summary["families"][0];
    assert_eq!(co["family"], "(+m_s,+; -m_i,-)");
    let first = co["diagonal_re"][0].as_f64().unwrap();
    assert!((first / 0.225874 - 1.0).abs() < 0.05, "{first}");
}

#[test]
fn envelopes_report_unitary_conversion() {
    let dir = tempfile::tempdir().unwrap();
    let config = REFERENCE.replace("points = 20001", "points = 11");
    let report = run_in(dir.path(), &config, &["envelopes", "--photon", "idler", "--exit", "low", "--detuning", "0.2 THz"]);
    assert_eq!(report.summary["family"], "IdlerOutM");
    assert!(report.summary["max_unitarity_deviation"].as_f64().unwrap() < 1e-12);
    let csv = std::fs::read_to_string(dir.path().join("out/envelopes.csv")).unwrap();
    assert_eq!(csv.lines().count(), 202);
}

#[test]
fn envelope_detuning_outside_the_grid_is_an_argument_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(dir.path(), &REFERENCE.replace("points = 20001", "points = 11"));
    let out = binary(&[
        "--config",
        path.to_str().unwrap(),
        "--out",
        dir.path().join("out").to_str().unwrap(),
        "envelopes",
        "--detuning",
        "40 THz",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coupling_map_lists_both_spin_channels() {
    let dir = tempfile::tempdir().unwrap();
    let config = REFERENCE.replace("points = 20001", "points = 11");
    let report = run_in(dir.path(), &config, &["coupling-map", "--max-charge", "3"]);
    let csv = std::fs::read_to_string(dir.path().join("out/coupling_map.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    let same_spin = rows.iter().filter(|r| r.starts_with("2,O+1+,O+3+,0,")).count();
    assert_eq!(same_spin, 1);
    assert!(rows.iter().any(|r| r.contains(",1,")), "spin-flip rows present");
    assert_eq!(report.summary["delta_eps0"], 0.029);
}

#[test]
fn modes_exports_dispersion_and_a_mode_map() {
    let dir = tempfile::tempdir().unwrap();
    let config = REFERENCE.replace("points = 20001", "points = 5");
    let report = run_in(dir.path(), &config, &["modes", "--map", "+2+", "--radial-points", "5", "--angular-points", "4"]);
    let v = report.summary["v_parameter_forward_pump"].as_f64().unwrap();
    assert!((v - 14.24).abs() < 0.01, "{v}");
    let dispersion = std::fs::read_to_string(dir.path().join("out/dispersion.csv")).unwrap();
    // Four modes at five detunings.
    assert_eq!(dispersion.lines().count(), 21);
    let map = std::fs::read_to_string(dir.path().join("out/mode_map.csv")).unwrap();
    assert_eq!(map.lines().count(), 21);
}
