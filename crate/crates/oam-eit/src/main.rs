//! Command-line entry point: field-map rendering, correlation/capacity
//! computation, parameter sweeps, and ingestion of external solver exports.
//!
//! Exit status contract: 0 success, 1 data/ingestion error, 2 usage or
//! configuration error.

use clap::{Parser, Subcommand};
use oam_eit::capacity::{
    capacity_from_field_export, capacity_from_mode_correlation, capacity_from_sparams,
    cit_channel_matrix, cit_mode_correlation, normalize_by_mean_gain, CitSourceModel, Method,
    NoiseModel, PowerBudget,
};
use oam_eit::correlation::{
    autocorrelation_power_maps, build_oam_correlation_matrix, monte_carlo_demodulated_covariance,
};
use oam_eit::fields::{render_field_map, ring_field_samples, Axis, FieldForm, OamExcitation};
use oam_eit::geometry::{
    build_receive_ring, ObserverGrid, ReceiveRingConfig, TransmitArray, TransmitArrayConfig, Vec3,
};
use oam_eit::ingest::{
    self, fmt_f64, load_config, GridSpec, RunConfig, SweepParameter,
};
use oam_eit::linalg::CMatrix;
use oam_eit::render::{write_magnitude_png, write_phase_png, write_power_png};
use oam_eit::PhysicalConstants;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "oam-eit", version, about = "OAM link field, correlation and capacity simulator")]
struct Cli {
    /// Run-configuration file (key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (defaults to the config's out_dir, then "out").
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for Monte-Carlo validation paths.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Scale R_OAM and R_c to unit mean diagonal before the log-det.
    #[arg(long, global = true)]
    normalize_gain: bool,
    /// Gauss-Legendre order for the continuous form (overrides the config).
    #[arg(long, global = true)]
    quadrature: Option<usize>,
    /// Field evaluation form: discrete | continuous (overrides the config).
    #[arg(long, global = true)]
    form: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render per-mode field maps (power/phase/magnitude PNG + CSV).
    FieldMap {
        /// Comma-separated mode list, e.g. "-1,0,1,2" (default: config modes).
        #[arg(long)]
        modes: Option<String>,
        /// Also export receive-ring samples per mode as a field-export CSV.
        #[arg(long)]
        ring: bool,
        /// Also render the nine |R_E(r,r)| component-pair power panels.
        #[arg(long)]
        autocorrelation: bool,
    },
    /// Capacity vs SNR for the enabled methods; prints the R_OAM spectrum.
    Capacity {
        /// Validate R_OAM against a seeded Monte-Carlo covariance of this
        /// many draws and print the Frobenius deviation.
        #[arg(long)]
        mc_check: Option<usize>,
    },
    /// Parameter sweep over the config's sweep spec.
    Sweep,
    /// Compute capacity from an external export (S-parameters or fields).
    Ingest {
        /// Input kind: sparams | fields.
        #[arg(long)]
        kind: String,
        /// Input file.
        #[arg(long)]
        file: PathBuf,
        /// Total transmit power P, watts.
        #[arg(long)]
        power: f64,
        /// Noise power N0, watts.
        #[arg(long)]
        noise: f64,
        /// Transmit port count (sparams; default: half the ports).
        #[arg(long)]
        nt: Option<usize>,
        /// Receive port count (sparams; default: ports - nt).
        #[arg(long)]
        nr: Option<usize>,
    },
}

/// Failure carrying the process exit status (1 = data, 2 = usage/config).
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::FieldMap {
            modes,
            ring,
            autocorrelation,
        } => cmd_field_map(&cli, modes.clone(), *ring, *autocorrelation),
        Command::Capacity { mc_check } => cmd_capacity(&cli, *mc_check),
        Command::Sweep => cmd_sweep(&cli),
        Command::Ingest {
            kind,
            file,
            power,
            noise,
            nt,
            nr,
        } => cmd_ingest(&cli, kind, file, *power, *noise, *nt, *nr),
    }
}

fn load_cli_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Failure::usage("--config <file> is required for this command"))?;
    let mut config =
        load_config(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if let Some(order) = cli.quadrature {
        config.quadrature = order;
        if let FieldForm::Continuous { .. } = config.form {
            config.form = FieldForm::Continuous { order };
        }
    }
    match cli.form.as_deref() {
        None => {}
        Some("discrete") => config.form = FieldForm::Discrete,
        Some("continuous") => {
            config.form = FieldForm::Continuous {
                order: config.quadrature,
            }
        }
        Some(other) => {
            return Err(Failure::usage(format!(
                "--form must be discrete or continuous, got \"{other}\""
            )))
        }
    }
    Ok(config)
}

fn out_dir(cli: &Cli, config: Option<&RunConfig>) -> Result<PathBuf, Failure> {
    let dir = cli
        .out
        .clone()
        .or_else(|| config.and_then(|c| c.out_dir.clone().map(PathBuf::from)))
        .unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&dir)
        .map_err(|e| Failure::data(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn build_array(config: &RunConfig, n_t: usize, radius: f64) -> Result<TransmitArray, Failure> {
    TransmitArray::new(TransmitArrayConfig {
        n_sources: n_t,
        feeds_per_source: config.feeds_per_source,
        radius,
        source_length: config.source_length,
    })
    .map_err(|e| Failure::usage(e.to_string()))
}

fn build_ring(config: &RunConfig, n_r: usize, radius: f64, distance: f64) -> Result<Vec<Vec3>, Failure> {
    build_receive_ring(&ReceiveRingConfig {
        n_points: n_r,
        radius,
        axial_distance: distance,
        angular_offset: config.ring_offset,
    })
    .map_err(|e| Failure::usage(e.to_string()))
}

// ---------------------------------------------------------------------------
// field-map
// ---------------------------------------------------------------------------

fn cmd_field_map(
    cli: &Cli,
    modes_flag: Option<String>,
    ring: bool,
    autocorrelation: bool,
) -> Result<(), Failure> {
    let config = load_cli_config(cli)?;
    let dir = out_dir(cli, Some(&config))?;

    let modes: Vec<i64> = match modes_flag {
        Some(raw) => {
            let mut modes = Vec::new();
            for item in raw.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                modes.push(
                    item.parse()
                        .map_err(|_| Failure::usage(format!("invalid mode \"{item}\"")))?,
                );
            }
            modes
        }
        None => config.modes.clone(),
    };
    if modes.is_empty() {
        return Err(Failure::usage("mode list is empty"));
    }

    let radius_tx = config
        .radius_tx_for(config.n_sources)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let array = build_array(&config, config.n_sources, radius_tx)?;
    let constants = config.constants;

    let grid_spec: GridSpec = config.grid.ok_or_else(|| {
        Failure::usage("field-map needs grid_resolution/grid_width in the config")
    })?;
    let grid = ObserverGrid {
        axial_distance: grid_spec.distance,
        width: grid_spec.width,
        resolution: grid_spec.resolution,
    };

    for &mode in &modes {
        let excitation = OamExcitation::pure_mode(mode, config.n_sources);
        let map = render_field_map(&grid, &excitation, &array, &constants, config.form)
            .map_err(|e| Failure::usage(format!("mode {mode}: {e}")))?;
        let base = dir.join(format!("{}_mode{}", config.run_id, mode));
        write_power_png(
            &with_suffix(&base, "_power.png"),
            &map.component_power(Axis::Y),
            grid.resolution,
        )
        .map_err(|e| Failure::data(e.to_string()))?;
        write_phase_png(
            &with_suffix(&base, "_phase.png"),
            &map.phase(Axis::Y),
            grid.resolution,
        )
        .map_err(|e| Failure::data(e.to_string()))?;
        write_magnitude_png(
            &with_suffix(&base, "_magnitude.png"),
            &map.total_magnitude(),
            grid.resolution,
        )
        .map_err(|e| Failure::data(e.to_string()))?;
        let csv = ingest::write_field_map_csv_string(&map.samples);
        std::fs::write(with_suffix(&base, "_field.csv"), csv)
            .map_err(|e| Failure::data(e.to_string()))?;
        println!(
            "field-map mode {mode}: {}x{} points at z = {} m -> {}_{{power,phase,magnitude}}.png + _field.csv",
            grid.resolution,
            grid.resolution,
            fmt_f64(grid.axial_distance),
            base.display()
        );
    }

    if ring {
        let radius_rx = config
            .radius_rx_for(config.n_receive)
            .map_err(|e| Failure::usage(e.to_string()))?;
        let ring_points = build_ring(&config, config.n_receive, radius_rx, config.distance)?;
        let groups: Result<Vec<_>, Failure> = modes
            .iter()
            .map(|&mode| {
                ring_field_samples(
                    &ring_points,
                    &OamExcitation::pure_mode(mode, config.n_sources),
                    &array,
                    &constants,
                    config.form,
                )
                .map(|samples| (mode, samples))
                .map_err(|e| Failure::usage(format!("mode {mode}: {e}")))
            })
            .collect();
        let path = dir.join(format!("{}_ring_fields.csv", config.run_id));
        ingest::write_field_export(&path, &groups?)
            .map_err(|e| Failure::data(e.to_string()))?;
        println!("ring export: {}", path.display());
    }

    if autocorrelation {
        let maps = autocorrelation_power_maps(&grid, &array, &constants, config.form)
            .map_err(|e| Failure::usage(e.to_string()))?;
        let axes = ["x", "y", "z"];
        for a in 0..3 {
            for b in 0..3 {
                let path = dir.join(format!(
                    "{}_autocorr_{}{}_power.png",
                    config.run_id, axes[a], axes[b]
                ));
                write_power_png(&path, &maps[a * 3 + b], grid.resolution)
                    .map_err(|e| Failure::data(e.to_string()))?;
            }
        }
        println!("autocorrelation panels: 9 images under {}", dir.display());
    }

    Ok(())
}

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

// ---------------------------------------------------------------------------
// capacity
// ---------------------------------------------------------------------------

struct VariantGeometry {
    array: TransmitArray,
    ring: Vec<Vec3>,
}

fn variant_geometry(
    config: &RunConfig,
    n_t: usize,
    n_r: usize,
    distance: f64,
    radius_tx_override: Option<f64>,
    radius_rx_override: Option<f64>,
) -> Result<VariantGeometry, Failure> {
    let radius_tx = match radius_tx_override {
        Some(r) => r,
        None => config
            .radius_tx_for(n_t)
            .map_err(|e| Failure::usage(e.to_string()))?,
    };
    let radius_rx = match radius_rx_override {
        Some(r) => r,
        None => config
            .radius_rx_for(n_r)
            .map_err(|e| Failure::usage(e.to_string()))?,
    };
    Ok(VariantGeometry {
        array: build_array(config, n_t, radius_tx)?,
        ring: build_ring(config, n_r, radius_rx, distance)?,
    })
}

fn method_correlation(
    geometry: &VariantGeometry,
    method: Method,
    constants: &PhysicalConstants,
    form: FieldForm,
    normalize: bool,
) -> Result<CMatrix, Failure> {
    let matrix = match method {
        Method::Eit => {
            build_oam_correlation_matrix(&geometry.ring, &geometry.array, constants, form)
                .map_err(|e| Failure::usage(e.to_string()))?
                .matrix
        }
        Method::CitLinear | Method::CitPoint => {
            let model = if method == Method::CitLinear {
                CitSourceModel::Linear
            } else {
                CitSourceModel::Point
            };
            let channel = cit_channel_matrix(&geometry.ring, &geometry.array, model, constants)
                .map_err(|e| Failure::usage(e.to_string()))?;
            cit_mode_correlation(&channel)
        }
        Method::Ingested => return Err(Failure::usage("INGESTED is not a simulation method")),
    };
    Ok(if normalize {
        normalize_by_mean_gain(&matrix)
    } else {
        matrix
    })
}

fn cmd_capacity(cli: &Cli, mc_check: Option<usize>) -> Result<(), Failure> {
    let config = load_cli_config(cli)?;
    let dir = out_dir(cli, Some(&config))?;
    if config.snr_db.is_empty() {
        return Err(Failure::usage("capacity needs a nonempty SNR grid"));
    }
    let noise = NoiseModel::new(config.noise_w)
        .map_err(|e| Failure::usage(e.to_string()))?;

    let mut csv = String::from("parameter,value,nt,nr,method,capacity_bps_hz\n");
    for &(n_t, n_r) in &config.mode_configs {
        let geometry = variant_geometry(&config, n_t, n_r, config.distance, None, None)?;

        // R_OAM spectrum summary (EIT view of this variant).
        let r_oam = build_oam_correlation_matrix(
            &geometry.ring,
            &geometry.array,
            &config.constants,
            config.form,
        )
        .map_err(|e| Failure::usage(e.to_string()))?;
        let eigenvalues = r_oam.eigenvalues();
        let trace = r_oam.trace();
        let eig_sum: f64 = eigenvalues.iter().sum();
        println!("variant {n_t}x{n_r}: R_OAM trace {}", fmt_f64(trace));
        println!(
            "  eigenvalues: [{}]",
            eigenvalues
                .iter()
                .map(|v| format!("{v:.6e}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!(
            "  eigensum-trace relative residual: {:.3e}, condition (max/min clamped): {:.3e}",
            (eig_sum - trace).abs() / trace.abs().max(f64::MIN_POSITIVE),
            eigenvalues[0] / eigenvalues.last().copied().unwrap_or(1.0).max(1e-300)
        );

        if let Some(draws) = mc_check {
            let mc = monte_carlo_demodulated_covariance(
                &geometry.ring,
                &geometry.array,
                &config.constants,
                config.form,
                draws,
                cli.seed,
            )
            .map_err(|e| Failure::usage(e.to_string()))?;
            let rel = mc.sub(&r_oam.matrix).frobenius_norm() / r_oam.matrix.frobenius_norm();
            println!("  monte-carlo check ({draws} draws, seed {}): Frobenius deviation {rel:.4e}", cli.seed);
        }

        // R_OAM CSV (Re, Im interleaved).
        let mut roam_csv = String::new();
        for r in 0..r_oam.n_modes() {
            let cells: Vec<String> = (0..r_oam.n_modes())
                .flat_map(|c| {
                    let z = r_oam.matrix[(r, c)];
                    [fmt_f64(z.re), fmt_f64(z.im)]
                })
                .collect();
            let _ = writeln!(roam_csv, "{}", cells.join(","));
        }
        std::fs::write(dir.join(format!("{}_roam_{n_t}x{n_r}.csv", config.run_id)), roam_csv)
            .map_err(|e| Failure::data(e.to_string()))?;

        for &method in &config.methods {
            let correlation = method_correlation(
                &geometry,
                method,
                &config.constants,
                config.form,
                cli.normalize_gain,
            )?;
            for &snr_db in &config.snr_db {
                let power = PowerBudget::new(config.noise_w * 10f64.powf(snr_db / 10.0))
                    .map_err(|e| Failure::usage(e.to_string()))?;
                let cap = capacity_from_mode_correlation(&correlation, power, noise, n_t);
                let _ = writeln!(
                    csv,
                    "snr_db,{},{},{},{},{}",
                    fmt_f64(snr_db),
                    n_t,
                    n_r,
                    method.label(),
                    fmt_f64(cap)
                );
                println!("  {} @ {snr_db} dB: {cap:.4} bps/Hz", method.label());
            }
        }
    }

    let path = dir.join(format!("{}_capacity.csv", config.run_id));
    std::fs::write(&path, csv).map_err(|e| Failure::data(e.to_string()))?;
    println!("capacity table: {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn cmd_sweep(cli: &Cli) -> Result<(), Failure> {
    let config = load_cli_config(cli)?;
    let dir = out_dir(cli, Some(&config))?;
    let sweep = config
        .sweep
        .clone()
        .ok_or_else(|| Failure::usage("sweep needs sweep_parameter in the config"))?;
    let noise = NoiseModel::new(config.noise_w)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let snr_db = *config.snr_db.first().unwrap_or(&20.0);
    let fixed_power = PowerBudget::new(config.noise_w * 10f64.powf(snr_db / 10.0))
        .map_err(|e| Failure::usage(e.to_string()))?;

    struct Row {
        value: f64,
        n_t: usize,
        n_r: usize,
        method: Method,
        capacity: f64,
    }

    let mut rows: Vec<Row> = Vec::new();
    match sweep.parameter {
        SweepParameter::SnrDb => {
            // One geometry per variant, capacities across the SNR axis.
            for &(n_t, n_r) in &config.mode_configs {
                let geometry = variant_geometry(&config, n_t, n_r, config.distance, None, None)?;
                for &method in &config.methods {
                    let correlation = method_correlation(
                        &geometry,
                        method,
                        &config.constants,
                        config.form,
                        cli.normalize_gain,
                    )?;
                    for &value in &sweep.values {
                        let power =
                            PowerBudget::new(config.noise_w * 10f64.powf(value / 10.0))
                                .map_err(|e| Failure::usage(e.to_string()))?;
                        rows.push(Row {
                            value,
                            n_t,
                            n_r,
                            method,
                            capacity: capacity_from_mode_correlation(
                                &correlation,
                                power,
                                noise,
                                n_t,
                            ),
                        });
                    }
                }
            }
        }
        SweepParameter::Modes => {
            for &value in &sweep.values {
                let n = value.round() as usize;
                if n == 0 {
                    return Err(Failure::usage("modes sweep values must be positive"));
                }
                let geometry = variant_geometry(&config, n, n, config.distance, None, None)?;
                for &method in &config.methods {
                    let correlation = method_correlation(
                        &geometry,
                        method,
                        &config.constants,
                        config.form,
                        cli.normalize_gain,
                    )?;
                    rows.push(Row {
                        value,
                        n_t: n,
                        n_r: n,
                        method,
                        capacity: capacity_from_mode_correlation(
                            &correlation,
                            fixed_power,
                            noise,
                            n,
                        ),
                    });
                }
            }
        }
        SweepParameter::Distance | SweepParameter::RadiusTx | SweepParameter::RadiusRx => {
            // Geometry changes per value: evaluate points in parallel.
            let mut tasks: Vec<(f64, usize, usize, Method)> = Vec::new();
            for &value in &sweep.values {
                for &(n_t, n_r) in &config.mode_configs {
                    for &method in &config.methods {
                        tasks.push((value, n_t, n_r, method));
                    }
                }
            }
            let computed: Result<Vec<Row>, Failure> = tasks
                .par_iter()
                .map(|&(value, n_t, n_r, method)| {
                    let (distance, radius_tx, radius_rx) = match sweep.parameter {
                        SweepParameter::Distance => (value, None, None),
                        SweepParameter::RadiusTx => (config.distance, Some(value), None),
                        SweepParameter::RadiusRx => (config.distance, None, Some(value)),
                        _ => unreachable!(),
                    };
                    let geometry =
                        variant_geometry(&config, n_t, n_r, distance, radius_tx, radius_rx)?;
                    let correlation = method_correlation(
                        &geometry,
                        method,
                        &config.constants,
                        config.form,
                        cli.normalize_gain,
                    )?;
                    Ok(Row {
                        value,
                        n_t,
                        n_r,
                        method,
                        capacity: capacity_from_mode_correlation(
                            &correlation,
                            fixed_power,
                            noise,
                            n_t,
                        ),
                    })
                })
                .collect();
            rows = computed?;
        }
    }

    rows.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then(a.n_t.cmp(&b.n_t))
            .then(a.n_r.cmp(&b.n_r))
            .then(a.method.label().cmp(b.method.label()))
    });

    let mut csv = String::from("parameter,value,nt,nr,method,capacity_bps_hz\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            sweep.parameter.name(),
            fmt_f64(row.value),
            row.n_t,
            row.n_r,
            row.method.label(),
            fmt_f64(row.capacity)
        );
    }
    let path = dir.join(format!("{}_sweep_{}.csv", config.run_id, sweep.parameter.name()));
    std::fs::write(&path, csv).map_err(|e| Failure::data(e.to_string()))?;
    println!(
        "sweep {} over {} values x {} variants x {} methods -> {}",
        sweep.parameter.name(),
        sweep.values.len(),
        config.mode_configs.len(),
        config.methods.len(),
        path.display()
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

fn cmd_ingest(
    cli: &Cli,
    kind: &str,
    file: &Path,
    power: f64,
    noise: f64,
    nt: Option<usize>,
    nr: Option<usize>,
) -> Result<(), Failure> {
    let power = PowerBudget::new(power).map_err(|e| Failure::usage(e.to_string()))?;
    let noise = NoiseModel::new(noise).map_err(|e| Failure::usage(e.to_string()))?;
    let dir = out_dir(cli, None)?;
    let stem = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "ingest".into());

    let (capacity, detail) = match kind {
        "sparams" => {
            let s = ingest::parse_sparams(file)
                .map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
            let n_t = nt.unwrap_or(s.port_count / 2);
            let n_r = nr.unwrap_or(s.port_count.saturating_sub(n_t));
            let (capacity, warnings) = capacity_from_sparams(&s.matrix, n_t, n_r, power, noise)
                .map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "ingest sparams {}: ports={} freq={} Hz nt={n_t} nr={n_r}",
                file.display(),
                s.port_count,
                fmt_f64(s.frequency)
            );
            (capacity, format!("sparams nt={n_t} nr={n_r}"))
        }
        "fields" => {
            let export = ingest::parse_field_export(file)
                .map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
            let sets = export.sample_sets();
            let capacity = capacity_from_field_export(&sets, power, noise)
                .map_err(|e| Failure::data(format!("{}: {e}", file.display())))?;
            println!(
                "ingest fields {}: {} modes x {} points",
                file.display(),
                export.groups.len(),
                sets.first().map(Vec::len).unwrap_or(0)
            );
            (capacity, format!("fields modes={}", export.groups.len()))
        }
        other => {
            return Err(Failure::usage(format!(
                "--kind must be sparams or fields, got \"{other}\""
            )))
        }
    };

    println!("capacity: {capacity:.6} bps/Hz ({detail})");
    let csv = format!(
        "parameter,value,nt,nr,method,capacity_bps_hz\ningest,0,0,0,INGESTED,{}\n",
        fmt_f64(capacity)
    );
    let path = dir.join(format!("{stem}_ingest.csv"));
    std::fs::write(&path, csv).map_err(|e| Failure::data(e.to_string()))?;
    println!("wrote {}", path.display());
    Ok(())
}
