//! End-to-end tests of the `oam-eit` binary: exit-status contract,
//! deterministic outputs, and the export/ingest round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_oam-eit")
}

fn run(args: &[&str]) -> Output {
    Command::new(binary())
        .args(args)
        .output()
        .expect("failed to spawn oam-eit")
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("oam_eit_cli_{tag}_{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const SMALL_MAP_CFG: &str = "\
frequency = 5.8e9
nt = 8
nl = 10
nr = 8
radius_tx = 2lambda/pi
radius_rx = 2lambda/pi
source_length = 0.5lambda
distance = 20lambda
modes = -1, 0, 1, 2
grid_resolution = 24
grid_width = 20lambda
grid_distance = 20lambda
";

const CAPACITY_CFG: &str = "\
frequency = 5.8e9
nt = 8
nl = 10
nr = 8
radius_tx = 2lambda/pi
radius_rx = 2lambda/pi
source_length = 0.5lambda
distance = 20lambda
modes = -3, -2, -1, 0, 1, 2, 3, 4
snr_db = 20
noise_w = 1.0
methods = eit, cit-linear, cit-point
";

#[test]
fn field_map_writes_twelve_images_and_four_csvs_deterministically() {
    let dir = tmp_dir("fieldmap");
    let cfg = write_config(&dir, "map.cfg", SMALL_MAP_CFG);
    let out = dir.join("out");
    let args = [
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "field-map",
    ];
    let result = run(&args);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));

    let entries: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    let pngs = entries.iter().filter(|n| n.ends_with(".png")).count();
    let csvs = entries.iter().filter(|n| n.ends_with(".csv")).count();
    assert_eq!(pngs, 12, "expected 4 modes x 3 views: {entries:?}");
    assert_eq!(csvs, 4, "expected one CSV per mode: {entries:?}");

    // Byte-identical CSVs on a second run.
    let before = std::fs::read(out.join("map_mode0_field.csv")).unwrap();
    let rerun = run(&args);
    assert!(rerun.status.success());
    let after = std::fs::read(out.join("map_mode0_field.csv")).unwrap();
    assert_eq!(before, after, "re-run changed the field CSV");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn field_map_with_empty_modes_is_a_usage_error() {
    let dir = tmp_dir("emptymodes");
    let cfg = write_config(&dir, "map.cfg", SMALL_MAP_CFG);
    let result = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
        "field-map",
        "--modes",
        "",
    ]);
    assert_eq!(result.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn missing_config_key_is_a_usage_error() {
    let dir = tmp_dir("badcfg");
    let cfg = write_config(&dir, "bad.cfg", "nt = 8\n");
    let result = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
        "capacity",
    ]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("frequency"), "stderr: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn capacity_prints_spectrum_and_writes_tables() {
    let dir = tmp_dir("capacity");
    let cfg = write_config(&dir, "cap.cfg", CAPACITY_CFG);
    let out = dir.join("out");
    let result = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "capacity",
    ]);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let stdout = String::from_utf8_lossy(&result.stdout);
    assert!(stdout.contains("eigenvalues:"), "stdout: {stdout}");

    // Eigenvalue sum vs trace identity, as printed.
    let residual: f64 = stdout
        .lines()
        .find(|l| l.contains("eigensum-trace relative residual"))
        .and_then(|l| l.split(':').nth(1))
        .and_then(|v| v.trim().split(',').next())
        .and_then(|v| v.trim().parse().ok())
        .expect("residual line");
    assert!(residual <= 1e-9, "eigensum-trace residual {residual:.2e}");

    // Single SNR point, three methods: header + 3 rows.
    let table = std::fs::read_to_string(out.join("cap_capacity.csv")).unwrap();
    assert_eq!(table.lines().count(), 4, "table: {table}");
    assert!(out.join("cap_roam_8x8.csv").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn capacity_monte_carlo_check_is_reported() {
    let dir = tmp_dir("mccheck");
    let cfg = write_config(&dir, "cap.cfg", CAPACITY_CFG);
    let result = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
        "--seed",
        "7",
        "capacity",
        "--mc-check",
        "2000",
    ]);
    assert!(result.status.success());
    let stdout = String::from_utf8_lossy(&result.stdout);
    let deviation: f64 = stdout
        .lines()
        .find(|l| l.contains("monte-carlo check"))
        .and_then(|l| l.rsplit_once("deviation"))
        .and_then(|(_, v)| v.trim().parse().ok())
        .expect("mc line");
    assert!(deviation < 0.02, "MC deviation {deviation}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_single_value_yields_one_row_per_method_and_variant() {
    let dir = tmp_dir("sweep");
    let cfg = write_config(
        &dir,
        "sweep.cfg",
        "\
frequency = 5.8e9
nt = 8
nl = 10
nr = 8
radius_rule = n_lambda_over_4pi
source_length = 0.5lambda
distance = 200lambda
mode_configs = 8x8, 16x16
methods = eit, cit-point
snr_db = 20
sweep_parameter = distance
sweep_values = 100lambda
",
    );
    let out = dir.join("out");
    let result = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "sweep",
    ]);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let table = std::fs::read_to_string(out.join("sweep_sweep_distance.csv")).unwrap();
    // header + 1 value x 2 variants x 2 methods.
    assert_eq!(table.lines().count(), 5, "table: {table}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_without_spec_is_a_usage_error() {
    let dir = tmp_dir("sweepmissing");
    let cfg = write_config(&dir, "cap.cfg", CAPACITY_CFG);
    let result = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.join("out").to_str().unwrap(),
        "sweep",
    ]);
    assert_eq!(result.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ingest_bundled_sparams_fixture() {
    let dir = tmp_dir("sparams");
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/sparams_16port.csv");
    let result = run(&[
        "--out",
        dir.join("out").to_str().unwrap(),
        "ingest",
        "--kind",
        "sparams",
        "--file",
        fixture.to_str().unwrap(),
        "--power",
        "100",
        "--noise",
        "1",
    ]);
    assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));
    let stdout = String::from_utf8_lossy(&result.stdout);
    let capacity: f64 = stdout
        .lines()
        .find(|l| l.starts_with("capacity:"))
        .and_then(|l| l.split_whitespace().nth(1))
        .and_then(|v| v.parse().ok())
        .expect("capacity line");
    assert!(capacity.is_finite() && capacity > 0.0);
    assert!(dir.join("out/sparams_16port_ingest.csv").exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ingest_missing_file_is_a_data_error_naming_the_path() {
    let dir = tmp_dir("missingfile");
    let result = run(&[
        "--out",
        dir.join("out").to_str().unwrap(),
        "ingest",
        "--kind",
        "sparams",
        "--file",
        "/nonexistent/input.csv",
        "--power",
        "1",
        "--noise",
        "1",
    ]);
    assert_eq!(result.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("/nonexistent/input.csv"), "stderr: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ring_export_ingest_round_trip_matches_capacity_command() {
    let dir = tmp_dir("roundtrip");
    let cfg = write_config(&dir, "cap.cfg", CAPACITY_CFG);
    let out = dir.join("out");

    // EIT capacity at SNR 20 dB (P = 100, N0 = 1).
    let cap_run = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "capacity",
    ]);
    assert!(cap_run.status.success());
    let table = std::fs::read_to_string(out.join("cap_capacity.csv")).unwrap();
    let eit_row = table
        .lines()
        .find(|l| l.contains(",EIT,"))
        .expect("EIT row");
    let eit_capacity: f64 = eit_row.rsplit(',').next().unwrap().parse().unwrap();

    // Exported ring fields for all 8 modes, then the ingestion path.
    let map_run = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "field-map",
        "--modes",
        "-3,-2,-1,0,1,2,3,4",
        "--ring",
    ]);
    // The capacity config has no grid keys; field-map must reject it...
    assert_eq!(map_run.status.code(), Some(2));

    // ...so use a config with grid keys plus the same link geometry.
    let cfg2 = write_config(
        &dir,
        "map.cfg",
        &format!("{CAPACITY_CFG}grid_resolution = 8\ngrid_width = 20lambda\n"),
    );
    let map_run = run(&[
        "--config",
        cfg2.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "field-map",
        "--ring",
    ]);
    assert!(map_run.status.success(), "stderr: {}", String::from_utf8_lossy(&map_run.stderr));
    let export = out.join("map_ring_fields.csv");
    assert!(export.exists());

    let ingest_run = run(&[
        "--out",
        out.to_str().unwrap(),
        "ingest",
        "--kind",
        "fields",
        "--file",
        export.to_str().unwrap(),
        "--power",
        "100",
        "--noise",
        "1",
    ]);
    assert!(ingest_run.status.success(), "stderr: {}", String::from_utf8_lossy(&ingest_run.stderr));
    let stdout = String::from_utf8_lossy(&ingest_run.stdout);
    let ingested: f64 = stdout
        .lines()
        .find(|l| l.starts_with("capacity:"))
        .and_then(|l| l.split_whitespace().nth(1))
        .and_then(|v| v.parse().ok())
        .expect("capacity line");
    let rel = (ingested - eit_capacity).abs() / eit_capacity;
    assert!(rel <= 1e-6, "round-trip capacity residual {rel:.2e}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn normalize_gain_flag_changes_the_scale_convention() {
    let dir = tmp_dir("normalize");
    let cfg = write_config(&dir, "cap.cfg", CAPACITY_CFG);
    let out_raw = dir.join("raw");
    let out_norm = dir.join("norm");
    for (out, flag) in [(&out_raw, false), (&out_norm, true)] {
        let mut args = vec![
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ];
        if flag {
            args.push("--normalize-gain");
        }
        args.push("capacity");
        let result = run(&args);
        assert!(result.status.success());
    }
    let raw = std::fs::read_to_string(out_raw.join("cap_capacity.csv")).unwrap();
    let norm = std::fs::read_to_string(out_norm.join("cap_capacity.csv")).unwrap();
    let get = |table: &str| -> f64 {
        table
            .lines()
            .find(|l| l.contains(",EIT,"))
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((get(&raw) - get(&norm)).abs() > 1.0, "normalization had no effect");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn continuous_form_flag_is_accepted_and_consistent() {
    let dir = tmp_dir("form");
    let cfg = write_config(&dir, "cap.cfg", CAPACITY_CFG);
    let out_d = dir.join("d");
    let out_c = dir.join("c");
    for (out, form) in [(&out_d, "discrete"), (&out_c, "continuous")] {
        let result = run(&[
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--form",
            form,
            "--quadrature",
            "32",
            "capacity",
        ]);
        assert!(result.status.success());
    }
    let get = |dir: &Path| -> f64 {
        std::fs::read_to_string(dir.join("cap_capacity.csv"))
            .unwrap()
            .lines()
            .find(|l| l.contains(",EIT,"))
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    let (cd, cc) = (get(&out_d), get(&out_c));
    assert!(
        (cd - cc).abs() / cd < 1e-2,
        "forms disagree: discrete {cd}, continuous {cc}"
    );
    std::fs::remove_dir_all(&dir).ok();
}
