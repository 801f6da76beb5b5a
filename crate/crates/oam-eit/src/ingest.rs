//! External-file ingestion and output writers: S-parameter matrices, sampled
//! complex field exports, run-configuration files, and the CSV emitters.
//!
//! Formats (all plain text, floats serialized at 17 significant digits so
//! write-then-read round trips are exact):
//!
//! * S-parameters: one header line `ports=<n>, freq_hz=<f>, format=ri`
//!   followed by n rows of 2n comma-separated floats (Re, Im interleaved).
//! * Field export: header `mode,x,y,z,re_ex,im_ex,re_ey,im_ey,re_ez,im_ez`,
//!   one record per (transmit mode, sample point).
//! * Run config: flat `key = value` lines with `#` comments; lengths accept
//!   `m`, `mm`, `lambda` and `lambda/pi` suffixes, resolved against the
//!   configured frequency at load time.

use crate::capacity::Method;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::fields::{FieldForm, FieldSample};
use crate::linalg::CMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Format a float with 17 significant digits (round-trip exact).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// S-parameters
// ---------------------------------------------------------------------------

/// A single-frequency multiport S-parameter matrix.
#[derive(Debug, Clone)]
pub struct SParameterSet {
    pub port_count: usize,
    pub frequency: f64,
    pub matrix: CMatrix,
}

pub fn parse_sparams(path: &Path) -> Result<SParameterSet> {
    let text = std::fs::read_to_string(path)?;
    parse_sparams_str(&text, &path.display().to_string())
}

pub fn parse_sparams_str(text: &str, source: &str) -> Result<SParameterSet> {
    let mut lines = text.lines().enumerate();
    let (header_idx, header) = lines
        .next()
        .ok_or_else(|| parse_err(format!("{source}:1"), "empty file"))?;
    let mut ports: Option<usize> = None;
    let mut freq: Option<f64> = None;
    let mut format_ri = false;
    for field in header.split(',') {
        let field = field.trim();
        if field.is_empty() {
            continue;
        }
        let (key, value) = field.split_once('=').ok_or_else(|| {
            parse_err(
                format!("{source}:{}", header_idx + 1),
                format!("header field \"{field}\" is not key=value"),
            )
        })?;
        match key.trim() {
            "ports" => {
                ports = Some(value.trim().parse().map_err(|_| {
                    parse_err(
                        format!("{source}:{}", header_idx + 1),
                        format!("invalid port count \"{}\"", value.trim()),
                    )
                })?)
            }
            "freq_hz" => {
                freq = Some(value.trim().parse().map_err(|_| {
                    parse_err(
                        format!("{source}:{}", header_idx + 1),
                        format!("invalid frequency \"{}\"", value.trim()),
                    )
                })?)
            }
            "format" => format_ri = value.trim() == "ri",
            other => {
                return Err(parse_err(
                    format!("{source}:{}", header_idx + 1),
                    format!("unknown header key \"{other}\""),
                ))
            }
        }
    }
    let port_count = ports.ok_or_else(|| {
        parse_err(format!("{source}:{}", header_idx + 1), "header missing ports=<n>")
    })?;
    let frequency = freq.ok_or_else(|| {
        parse_err(format!("{source}:{}", header_idx + 1), "header missing freq_hz=<f>")
    })?;
    if !format_ri {
        return Err(parse_err(
            format!("{source}:{}", header_idx + 1),
            "header missing or unsupported format (expected format=ri)",
        ));
    }
    if port_count == 0 {
        return Err(parse_err(
            format!("{source}:{}", header_idx + 1),
            "port count must be positive",
        ));
    }

    let mut matrix = CMatrix::zeros(port_count, port_count);
    let mut row = 0usize;
    for (line_idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if row >= port_count {
            return Err(Error::Dimension(format!(
                "{source}:{}: more than {port_count} data rows",
                line_idx + 1
            )));
        }
        let values: Vec<&str> = line.split(',').map(str::trim).collect();
        if values.len() != 2 * port_count {
            return Err(Error::Dimension(format!(
                "{source}:{}: row {} has {} values, expected {}",
                line_idx + 1,
                row + 1,
                values.len(),
                2 * port_count
            )));
        }
        for col in 0..port_count {
            let re: f64 = values[2 * col].parse().map_err(|_| {
                parse_err(
                    format!("{source}:{}:{}", line_idx + 1, 2 * col + 1),
                    format!("invalid float \"{}\"", values[2 * col]),
                )
            })?;
            let im: f64 = values[2 * col + 1].parse().map_err(|_| {
                parse_err(
                    format!("{source}:{}:{}", line_idx + 1, 2 * col + 2),
                    format!("invalid float \"{}\"", values[2 * col + 1]),
                )
            })?;
            matrix[(row, col)] = Complex64::new(re, im);
        }
        row += 1;
    }
    if row != port_count {
        return Err(Error::Dimension(format!(
            "{source}: expected {port_count} data rows, found {row}"
        )));
    }
    Ok(SParameterSet {
        port_count,
        frequency,
        matrix,
    })
}

pub fn write_sparams_string(s: &SParameterSet) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ports={}, freq_hz={}, format=ri",
        s.port_count,
        fmt_f64(s.frequency)
    );
    for row in 0..s.port_count {
        let cells: Vec<String> = (0..s.port_count)
            .flat_map(|col| {
                let z = s.matrix[(row, col)];
                [fmt_f64(z.re), fmt_f64(z.im)]
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn write_sparams(path: &Path, s: &SParameterSet) -> Result<()> {
    std::fs::write(path, write_sparams_string(s))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Field exports
// ---------------------------------------------------------------------------

/// Ring (or grid) field samples grouped by transmit-mode label.
#[derive(Debug, Clone)]
pub struct FieldExport {
    /// Groups sorted by mode label; within a group, samples sorted by
    /// position (lexicographic x, y, z) so record order in the file is
    /// irrelevant.
    pub groups: Vec<(i64, Vec<FieldSample>)>,
}

impl FieldExport {
    pub fn sample_sets(&self) -> Vec<Vec<FieldSample>> {
        self.groups.iter().map(|(_, s)| s.clone()).collect()
    }
}

const FIELD_EXPORT_HEADER: &str = "mode,x,y,z,re_ex,im_ex,re_ey,im_ey,re_ez,im_ez";

pub fn parse_field_export(path: &Path) -> Result<FieldExport> {
    let text = std::fs::read_to_string(path)?;
    parse_field_export_str(&text, &path.display().to_string())
}

pub fn parse_field_export_str(text: &str, source: &str) -> Result<FieldExport> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(format!("{source}:1"), "empty file"))?;
    if header.trim() != FIELD_EXPORT_HEADER {
        return Err(parse_err(
            format!("{source}:1"),
            format!("expected header \"{FIELD_EXPORT_HEADER}\""),
        ));
    }
    let mut groups: BTreeMap<i64, Vec<FieldSample>> = BTreeMap::new();
    let mut any = false;
    for (line_idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != 10 {
            return Err(parse_err(
                format!("{source}:{}", line_idx + 1),
                format!("expected 10 fields, got {}", cells.len()),
            ));
        }
        let mode: i64 = cells[0].parse().map_err(|_| {
            parse_err(
                format!("{source}:{}:1", line_idx + 1),
                format!("invalid mode label \"{}\"", cells[0]),
            )
        })?;
        let mut nums = [0.0f64; 9];
        for (k, cell) in cells[1..].iter().enumerate() {
            nums[k] = cell.parse().map_err(|_| {
                parse_err(
                    format!("{source}:{}:{}", line_idx + 1, k + 2),
                    format!("invalid float \"{cell}\""),
                )
            })?;
        }
        groups.entry(mode).or_default().push(FieldSample {
            position: [nums[0], nums[1], nums[2]],
            e: [
                Complex64::new(nums[3], nums[4]),
                Complex64::new(nums[5], nums[6]),
                Complex64::new(nums[7], nums[8]),
            ],
        });
        any = true;
    }
    if !any {
        return Err(parse_err(source.to_string(), "no data records"));
    }

    let mut sorted: Vec<(i64, Vec<FieldSample>)> = groups.into_iter().collect();
    for (_, samples) in &mut sorted {
        samples.sort_by(|a, b| {
            a.position[0]
                .total_cmp(&b.position[0])
                .then(a.position[1].total_cmp(&b.position[1]))
                .then(a.position[2].total_cmp(&b.position[2]))
        });
    }
    let reference = &sorted[0];
    for (mode, samples) in &sorted[1..] {
        if samples.len() != reference.1.len() {
            return Err(Error::InconsistentGrid(format!(
                "mode {} has {} samples, mode {} has {}",
                mode,
                samples.len(),
                reference.0,
                reference.1.len()
            )));
        }
        for (a, b) in samples.iter().zip(&reference.1) {
            let dist = crate::geometry::vec3_norm(crate::geometry::vec3_sub(
                a.position, b.position,
            ));
            if dist > 1e-9 {
                return Err(Error::InconsistentGrid(format!(
                    "mode {} sample positions differ from mode {} by {dist:.3e} m",
                    mode, reference.0
                )));
            }
        }
    }
    Ok(FieldExport { groups: sorted })
}

pub fn write_field_export_string(groups: &[(i64, Vec<FieldSample>)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{FIELD_EXPORT_HEADER}");
    for (mode, samples) in groups {
        for s in samples {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                mode,
                fmt_f64(s.position[0]),
                fmt_f64(s.position[1]),
                fmt_f64(s.position[2]),
                fmt_f64(s.e[0].re),
                fmt_f64(s.e[0].im),
                fmt_f64(s.e[1].re),
                fmt_f64(s.e[1].im),
                fmt_f64(s.e[2].re),
                fmt_f64(s.e[2].im)
            );
        }
    }
    out
}

pub fn write_field_export(path: &Path, groups: &[(i64, Vec<FieldSample>)]) -> Result<()> {
    std::fs::write(path, write_field_export_string(groups))?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Field-map CSV (x_m, y_m, z_m, Re/Im of E_x, E_y, E_z)
// ---------------------------------------------------------------------------

pub fn write_field_map_csv_string(samples: &[FieldSample]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "x_m,y_m,z_m,re_ex,im_ex,re_ey,im_ey,re_ez,im_ez");
    for s in samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            fmt_f64(s.position[0]),
            fmt_f64(s.position[1]),
            fmt_f64(s.position[2]),
            fmt_f64(s.e[0].re),
            fmt_f64(s.e[0].im),
            fmt_f64(s.e[1].re),
            fmt_f64(s.e[1].im),
            fmt_f64(s.e[2].re),
            fmt_f64(s.e[2].im)
        );
    }
    out
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

/// How UCA radii are chosen when not given explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusRule {
    /// Radii must be configured explicitly.
    Fixed,
    /// Radius = N lambda / (4 pi) with N the side's mode count.
    NLambdaOver4Pi,
}

/// Sweep axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    SnrDb,
    Distance,
    RadiusTx,
    RadiusRx,
    Modes,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::SnrDb => "snr_db",
            SweepParameter::Distance => "distance",
            SweepParameter::RadiusTx => "radius_tx",
            SweepParameter::RadiusRx => "radius_rx",
            SweepParameter::Modes => "modes",
        }
    }

    pub fn unit(&self) -> &'static str {
        match self {
            SweepParameter::SnrDb => "dB",
            SweepParameter::Modes => "count",
            _ => "m",
        }
    }
}

/// Parameter sweep: axis plus resolved values.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Observer-grid request for field maps.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    pub resolution: usize,
    pub width: f64,
    pub distance: f64,
}

/// Fully resolved run configuration (all lengths in meters).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    pub n_sources: usize,
    pub feeds_per_source: usize,
    pub n_receive: usize,
    pub radius_tx: Option<f64>,
    pub radius_rx: Option<f64>,
    pub radius_rule: RadiusRule,
    pub source_length: f64,
    pub distance: f64,
    pub ring_offset: f64,
    pub modes: Vec<i64>,
    pub methods: Vec<Method>,
    pub snr_db: Vec<f64>,
    pub noise_w: f64,
    pub grid: Option<GridSpec>,
    pub sweep: Option<SweepSpec>,
    pub mode_configs: Vec<(usize, usize)>,
    pub out_dir: Option<String>,
    pub run_id: String,
    pub quadrature: usize,
    pub form: FieldForm,
}

impl RunConfig {
    /// Transmit radius for a variant with `n_t` sources.
    pub fn radius_tx_for(&self, n_t: usize) -> Result<f64> {
        match (self.radius_tx, self.radius_rule) {
            (Some(r), _) => Ok(r),
            (None, RadiusRule::NLambdaOver4Pi) => {
                Ok(n_t as f64 * self.constants.wavelength / (4.0 * std::f64::consts::PI))
            }
            (None, RadiusRule::Fixed) => Err(Error::MissingKey("radius_tx".into())),
        }
    }

    /// Receive radius for a variant with `n_r` modes.
    pub fn radius_rx_for(&self, n_r: usize) -> Result<f64> {
        match (self.radius_rx, self.radius_rule) {
            (Some(r), _) => Ok(r),
            (None, RadiusRule::NLambdaOver4Pi) => {
                Ok(n_r as f64 * self.constants.wavelength / (4.0 * std::f64::consts::PI))
            }
            (None, RadiusRule::Fixed) => Err(Error::MissingKey("radius_rx".into())),
        }
    }
}

/// Parse "<number><unit>" where unit is one of m, mm, lambda, lambda/pi, or
/// empty (meters). Whitespace anywhere is ignored.
fn parse_length(key: &str, raw: &str, wavelength: f64) -> Result<f64> {
    let compact: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let (number_part, multiplier) = if let Some(stripped) = compact.strip_suffix("lambda/pi") {
        (stripped, wavelength / std::f64::consts::PI)
    } else if let Some(stripped) = compact.strip_suffix("lambda") {
        (stripped, wavelength)
    } else if let Some(stripped) = compact.strip_suffix("mm") {
        (stripped, 1e-3)
    } else if let Some(stripped) = compact.strip_suffix('m') {
        (stripped, 1.0)
    } else {
        (compact.as_str(), 1.0)
    };
    let value: f64 = if number_part.is_empty() {
        1.0
    } else {
        number_part.parse().map_err(|_| Error::BadUnit {
            key: key.to_string(),
            message: format!("cannot parse \"{raw}\" as a length"),
        })?
    };
    Ok(value * multiplier)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)?;
    let run_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".to_string());
    load_config_str(&text, &run_id)
}

pub fn load_config_str(text: &str, default_run_id: &str) -> Result<RunConfig> {
    let mut kv: BTreeMap<String, String> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            parse_err(
                format!("config:{}", idx + 1),
                format!("expected key = value, got \"{line}\""),
            )
        })?;
        kv.insert(key.trim().to_string(), value.trim().to_string());
    }

    let require = |key: &str| -> Result<&String> {
        kv.get(key).ok_or_else(|| Error::MissingKey(key.to_string()))
    };
    let parse_f64 = |key: &str, raw: &str| -> Result<f64> {
        raw.parse().map_err(|_| Error::BadUnit {
            key: key.to_string(),
            message: format!("cannot parse \"{raw}\" as a number"),
        })
    };
    let parse_usize = |key: &str, raw: &str| -> Result<usize> {
        raw.parse().map_err(|_| Error::BadUnit {
            key: key.to_string(),
            message: format!("cannot parse \"{raw}\" as a count"),
        })
    };

    let frequency = parse_f64("frequency", require("frequency")?)?;
    let constants = PhysicalConstants::new(frequency).map_err(|_| Error::RangeError {
        key: "frequency".into(),
        message: format!("must be positive, got {frequency}"),
    })?;
    let lambda = constants.wavelength;

    let n_sources = parse_usize("nt", require("nt")?)?;
    let feeds_per_source = parse_usize("nl", require("nl")?)?;
    let n_receive = parse_usize("nr", require("nr")?)?;
    for (key, value) in [("nt", n_sources), ("nl", feeds_per_source), ("nr", n_receive)] {
        if value == 0 {
            return Err(Error::RangeError {
                key: key.into(),
                message: "must be at least 1".into(),
            });
        }
    }

    let radius_rule = match kv.get("radius_rule").map(String::as_str) {
        None | Some("fixed") => RadiusRule::Fixed,
        Some("n_lambda_over_4pi") => RadiusRule::NLambdaOver4Pi,
        Some(other) => {
            return Err(Error::BadUnit {
                key: "radius_rule".into(),
                message: format!("unknown rule \"{other}\""),
            })
        }
    };
    let radius_tx = kv
        .get("radius_tx")
        .map(|raw| parse_length("radius_tx", raw, lambda))
        .transpose()?;
    let radius_rx = kv
        .get("radius_rx")
        .map(|raw| parse_length("radius_rx", raw, lambda))
        .transpose()?;
    if radius_tx.is_none() && radius_rule == RadiusRule::Fixed {
        return Err(Error::MissingKey("radius_tx".into()));
    }
    if radius_rx.is_none() && radius_rule == RadiusRule::Fixed {
        return Err(Error::MissingKey("radius_rx".into()));
    }
    for (key, value) in [("radius_tx", radius_tx), ("radius_rx", radius_rx)] {
        if let Some(v) = value {
            if !(v > 0.0) {
                return Err(Error::RangeError {
                    key: key.into(),
                    message: format!("must be positive, got {v}"),
                });
            }
        }
    }

    let source_length = parse_length("source_length", require("source_length")?, lambda)?;
    let distance = parse_length("distance", require("distance")?, lambda)?;
    for (key, value) in [("source_length", source_length), ("distance", distance)] {
        if !(value > 0.0) {
            return Err(Error::RangeError {
                key: key.into(),
                message: format!("must be positive, got {value}"),
            });
        }
    }
    let ring_offset = kv
        .get("ring_offset")
        .map(|raw| parse_f64("ring_offset", raw))
        .transpose()?
        .unwrap_or(0.0);

    let modes: Vec<i64> = match kv.get("modes") {
        Some(raw) => {
            let mut modes = Vec::new();
            for item in raw.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                modes.push(item.parse().map_err(|_| Error::BadUnit {
                    key: "modes".into(),
                    message: format!("cannot parse mode \"{item}\""),
                })?);
            }
            modes
        }
        None => (0..n_sources as i64).collect(),
    };

    let methods: Vec<Method> = match kv.get("methods") {
        Some(raw) => {
            let mut methods = Vec::new();
            for item in raw.split(',') {
                match item.trim().to_ascii_lowercase().as_str() {
                    "" => {}
                    "eit" => methods.push(Method::Eit),
                    "cit-linear" => methods.push(Method::CitLinear),
                    "cit-point" => methods.push(Method::CitPoint),
                    other => {
                        return Err(Error::BadUnit {
                            key: "methods".into(),
                            message: format!("unknown method \"{other}\""),
                        })
                    }
                }
            }
            methods
        }
        None => vec![Method::Eit],
    };

    let snr_db: Vec<f64> = if let Some(raw) = kv.get("snr_db") {
        let mut grid = Vec::new();
        for item in raw.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            grid.push(parse_f64("snr_db", item)?);
        }
        grid
    } else if kv.contains_key("snr_start") {
        let start = parse_f64("snr_start", require("snr_start")?)?;
        let stop = parse_f64("snr_stop", require("snr_stop")?)?;
        let steps = parse_usize("snr_steps", require("snr_steps")?)?;
        if steps == 0 {
            return Err(Error::RangeError {
                key: "snr_steps".into(),
                message: "must be at least 1".into(),
            });
        }
        linspace(start, stop, steps)
    } else {
        vec![20.0]
    };

    let noise_w = kv
        .get("noise_w")
        .map(|raw| parse_f64("noise_w", raw))
        .transpose()?
        .unwrap_or(1.0);
    if !(noise_w > 0.0) {
        return Err(Error::RangeError {
            key: "noise_w".into(),
            message: format!("must be positive, got {noise_w}"),
        });
    }

    let grid = match kv.get("grid_resolution") {
        Some(raw) => {
            let resolution = parse_usize("grid_resolution", raw)?;
            let width = parse_length("grid_width", require("grid_width")?, lambda)?;
            let g_distance = match kv.get("grid_distance") {
                Some(raw) => parse_length("grid_distance", raw, lambda)?,
                None => distance,
            };
            Some(GridSpec {
                resolution,
                width,
                distance: g_distance,
            })
        }
        None => None,
    };

    let sweep = match kv.get("sweep_parameter") {
        Some(raw) => {
            let parameter = match raw.as_str() {
                "snr_db" => SweepParameter::SnrDb,
                "distance" => SweepParameter::Distance,
                "radius_tx" => SweepParameter::RadiusTx,
                "radius_rx" => SweepParameter::RadiusRx,
                "modes" => SweepParameter::Modes,
                other => {
                    return Err(Error::BadUnit {
                        key: "sweep_parameter".into(),
                        message: format!("unknown sweep parameter \"{other}\""),
                    })
                }
            };
            let as_length = !matches!(parameter, SweepParameter::SnrDb | SweepParameter::Modes);
            let values: Vec<f64> = if let Some(raw_values) = kv.get("sweep_values") {
                let mut values = Vec::new();
                for item in raw_values.split(',') {
                    let item = item.trim();
                    if item.is_empty() {
                        continue;
                    }
                    values.push(if as_length {
                        parse_length("sweep_values", item, lambda)?
                    } else {
                        parse_f64("sweep_values", item)?
                    });
                }
                values
            } else {
                let start_raw = require("sweep_start")?;
                let stop_raw = require("sweep_stop")?;
                let steps = parse_usize("sweep_steps", require("sweep_steps")?)?;
                if steps == 0 {
                    return Err(Error::RangeError {
                        key: "sweep_steps".into(),
                        message: "must be at least 1".into(),
                    });
                }
                let (start, stop) = if as_length {
                    (
                        parse_length("sweep_start", start_raw, lambda)?,
                        parse_length("sweep_stop", stop_raw, lambda)?,
                    )
                } else {
                    (
                        parse_f64("sweep_start", start_raw)?,
                        parse_f64("sweep_stop", stop_raw)?,
                    )
                };
                linspace(start, stop, steps)
            };
            if values.is_empty() {
                return Err(Error::RangeError {
                    key: "sweep_values".into(),
                    message: "sweep needs at least one value".into(),
                });
            }
            Some(SweepSpec { parameter, values })
        }
        None => None,
    };

    let mode_configs: Vec<(usize, usize)> = match kv.get("mode_configs") {
        Some(raw) => {
            let mut configs = Vec::new();
            for item in raw.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (a, b) = item.split_once('x').ok_or_else(|| Error::BadUnit {
                    key: "mode_configs".into(),
                    message: format!("expected NTxNR, got \"{item}\""),
                })?;
                configs.push((parse_usize("mode_configs", a)?, parse_usize("mode_configs", b)?));
            }
            if configs.is_empty() {
                return Err(Error::RangeError {
                    key: "mode_configs".into(),
                    message: "needs at least one NTxNR entry".into(),
                });
            }
            configs
        }
        None => vec![(n_sources, n_receive)],
    };

    let quadrature = kv
        .get("quadrature")
        .map(|raw| parse_usize("quadrature", raw))
        .transpose()?
        .unwrap_or(32);
    let form = match kv.get("form").map(String::as_str) {
        None | Some("discrete") => FieldForm::Discrete,
        Some("continuous") => FieldForm::Continuous { order: quadrature },
        Some(other) => {
            return Err(Error::BadUnit {
                key: "form".into(),
                message: format!("expected discrete or continuous, got \"{other}\""),
            })
        }
    };

    Ok(RunConfig {
        constants,
        n_sources,
        feeds_per_source,
        n_receive,
        radius_tx,
        radius_rx,
        radius_rule,
        source_length,
        distance,
        ring_offset,
        modes,
        methods,
        snr_db,
        noise_w,
        grid,
        sweep,
        mode_configs,
        out_dir: kv.get("out_dir").cloned(),
        run_id: kv
            .get("run_id")
            .cloned()
            .unwrap_or_else(|| default_run_id.to_string()),
        quadrature,
        form,
    })
}

pub fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    (0..steps)
        .map(|i| start + (stop - start) * i as f64 / (steps - 1) as f64)
        .collect()
}
