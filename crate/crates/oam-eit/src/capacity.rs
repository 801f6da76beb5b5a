//! Channel capacities: the correlation-matrix route (log-det over R_OAM),
//! classical free-space channel-matrix baselines, and capacities recovered
//! from ingested solver exports.
//!
//! All curves use the same convention: SNR = P/N0, with the per-mode power
//! P/N_t inside the log-det,
//!
//! ```text
//! C = log2 det(I + (P / N_t / N0) R) = sum_i log2(1 + (P / N_t / N0) lambda_i),
//! ```
//!
//! evaluated from Hermitian eigenvalues rather than a determinant so the
//! high-SNR end stays well conditioned.

use crate::constants::PhysicalConstants;
use crate::correlation::OamCorrelationMatrix;
use crate::error::{Error, Result};
use crate::fields::{demodulate_ring, FieldSample};
use crate::geometry::{TransmitArray, Vec3};
use crate::green::SeparationVector;
use crate::linalg::{dft_matrix, hermitian_eigenvalues, CMatrix};
use num_complex::Complex64;
use std::f64::consts::PI;

/// AWGN power per received mode (y-component), watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub n0: f64,
}

impl NoiseModel {
    pub fn new(n0: f64) -> Result<Self> {
        if !(n0 > 0.0) {
            return Err(Error::InvalidConfig {
                what: "noise power N0",
                message: format!("must be positive, got {n0}"),
            });
        }
        Ok(Self { n0 })
    }
}

/// Total transmit power, evenly split across the N_t modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    pub total: f64,
}

impl PowerBudget {
    pub fn new(total: f64) -> Result<Self> {
        if !(total > 0.0) {
            return Err(Error::InvalidConfig {
                what: "transmit power P",
                message: format!("must be positive, got {total}"),
            });
        }
        Ok(Self { total })
    }

    pub fn per_mode(&self, n_modes: usize) -> f64 {
        self.total / n_modes as f64
    }
}

/// Antenna-domain channel matrix H (N_r x N_t) for the classical baseline.
#[derive(Debug, Clone)]
pub struct ChannelMatrix {
    pub matrix: CMatrix,
}

/// Source model for the classical channel baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CitSourceModel {
    /// One gain per source center.
    Point,
    /// Gain averaged over the N_l feeds of each source.
    Linear,
}

/// Sweep method tags carried into capacity CSV rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Eit,
    CitLinear,
    CitPoint,
    Ingested,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Eit => "EIT",
            Method::CitLinear => "CIT-linear",
            Method::CitPoint => "CIT-point",
            Method::Ingested => "INGESTED",
        }
    }
}

/// One point of a capacity curve.
#[derive(Debug, Clone)]
pub struct CapacityPoint {
    pub parameter_value: f64,
    pub method: Method,
    pub bits_per_hz: f64,
}

/// A sweep result: named parameter plus (value, method, capacity) rows.
#[derive(Debug, Clone)]
pub struct CapacityCurve {
    pub parameter: String,
    pub unit: String,
    pub points: Vec<CapacityPoint>,
}

/// Sum of log2(1 + rho * lambda) over a Hermitian PSD spectrum; eigenvalues
/// within the PSD round-off band are clamped at zero.
fn log_det_capacity(matrix: &CMatrix, rho: f64) -> f64 {
    hermitian_eigenvalues(matrix)
        .into_iter()
        .map(|l| (1.0 + rho * l.max(0.0)).log2())
        .sum()
}

/// EIT capacity from R_OAM: C = log2 det(I + (P/N_t/N0) R).
pub fn eit_capacity(
    r_oam: &OamCorrelationMatrix,
    power: PowerBudget,
    noise: NoiseModel,
    n_transmit_modes: usize,
) -> Result<f64> {
    let matrix = &r_oam.matrix;
    let scale = matrix.max_abs();
    let tolerance = 1e-10 * scale.max(f64::MIN_POSITIVE);
    let residual = matrix.hermitian_residual();
    if residual > tolerance {
        return Err(Error::NonHermitianInput {
            residual,
            tolerance,
        });
    }
    let rho = power.per_mode(n_transmit_modes) / noise.n0;
    Ok(log_det_capacity(matrix, rho))
}

/// Classical free-space channel: H_{n_r, n_t} = (lambda/(4 pi p)) e^{j k0 p}
/// between receive point n_r and source n_t (point: source center; linear:
/// averaged over the feeds).
pub fn cit_channel_matrix(
    ring: &[Vec3],
    array: &TransmitArray,
    model: CitSourceModel,
    constants: &PhysicalConstants,
) -> Result<ChannelMatrix> {
    let friis = |r: Vec3, s: Vec3| -> Result<Complex64> {
        let sep = SeparationVector::between(r, s, constants)?;
        Ok(Complex64::from_polar(
            constants.wavelength / (4.0 * PI * sep.norm),
            constants.wave_number * sep.norm,
        ))
    };
    let mut h = CMatrix::zeros(ring.len(), array.n_sources());
    for (i, &r) in ring.iter().enumerate() {
        for n_t in 1..=array.n_sources() {
            let gain = match model {
                CitSourceModel::Point => friis(r, array.segments[n_t - 1].center)?,
                CitSourceModel::Linear => {
                    let feeds = array.source_feeds(n_t);
                    let mut acc = Complex64::new(0.0, 0.0);
                    for feed in feeds {
                        acc += friis(r, feed.position)?;
                    }
                    acc / feeds.len() as f64
                }
            };
            h[(i, n_t - 1)] = gain;
        }
    }
    Ok(ChannelMatrix { matrix: h })
}

/// Mode-domain correlation of a classical channel:
/// R_c = (F_r^H H W_t)(F_r^H H W_t)^H with unitary DFT transforms on both
/// sides (the transmit IDFT sized N_t and the receive transform sized N_r).
pub fn cit_mode_correlation(channel: &ChannelMatrix) -> CMatrix {
    let h = &channel.matrix;
    let f_r = dft_matrix(h.rows, 1.0);
    let w_t = dft_matrix(h.cols, 1.0);
    f_r.adjoint().mul(h).mul(&w_t).gram()
}

/// C = log2 det(I + (P/N_t/N0) R_c) for a Hermitian PSD mode correlation.
pub fn capacity_from_mode_correlation(
    r_c: &CMatrix,
    power: PowerBudget,
    noise: NoiseModel,
    n_transmit_modes: usize,
) -> f64 {
    log_det_capacity(r_c, power.per_mode(n_transmit_modes) / noise.n0)
}

/// Classical capacity through the mode-domain transforms. Both transforms
/// are unitary, so the capacity equals the one computed from H directly;
/// they are kept for mode-domain reporting.
pub fn cit_capacity(
    channel: &ChannelMatrix,
    power: PowerBudget,
    noise: NoiseModel,
    n_transmit_modes: usize,
) -> Result<f64> {
    if channel.matrix.cols != n_transmit_modes {
        return Err(Error::Dimension(format!(
            "channel has {} transmit columns, expected {}",
            channel.matrix.cols, n_transmit_modes
        )));
    }
    let r_c = cit_mode_correlation(channel);
    Ok(capacity_from_mode_correlation(&r_c, power, noise, n_transmit_modes))
}

/// Mode-domain correlation R_c normalized so the mean diagonal is one
/// (used by the --normalize-gain presentation mode).
pub fn normalize_by_mean_gain(matrix: &CMatrix) -> CMatrix {
    let mean = matrix.trace().re / matrix.rows as f64;
    matrix.scale(1.0 / mean)
}

/// Capacity from an S-parameter matrix: H(i, j) = sqrt(S_{N_t+i, j})
/// (principal branch) over the bottom-left quarter, then the classical
/// log-det. Entries with |S| > 1 are reported as passivity warnings.
pub fn capacity_from_sparams(
    s_matrix: &CMatrix,
    n_transmit: usize,
    n_receive: usize,
    power: PowerBudget,
    noise: NoiseModel,
) -> Result<(f64, Vec<String>)> {
    let ports = n_transmit + n_receive;
    if s_matrix.rows != ports || s_matrix.cols != ports {
        return Err(Error::Dimension(format!(
            "S matrix is {}x{}, expected {ports}x{ports} for N_t={n_transmit}, N_r={n_receive}",
            s_matrix.rows, s_matrix.cols
        )));
    }
    let mut warnings = Vec::new();
    let mut h = CMatrix::zeros(n_receive, n_transmit);
    for i in 0..n_receive {
        for j in 0..n_transmit {
            let s = s_matrix[(n_transmit + i, j)];
            if s.norm() > 1.0 + 1e-12 {
                warnings.push(format!(
                    "passive-network violation: |S[{},{}]| = {:.6} > 1",
                    n_transmit + i + 1,
                    j + 1,
                    s.norm()
                ));
            }
            h[(i, j)] = s.sqrt();
        }
    }
    let capacity = cit_capacity(&ChannelMatrix { matrix: h }, power, noise, n_transmit)?;
    Ok((capacity, warnings))
}

/// Capacity from exported ring fields, one sample set per transmit mode:
/// DFT each ring set (y-component) into a mode-domain channel column,
/// assemble H, form R = H H^H, apply the log-det.
pub fn capacity_from_field_export(
    per_mode_samples: &[Vec<FieldSample>],
    power: PowerBudget,
    noise: NoiseModel,
) -> Result<f64> {
    let n_modes = per_mode_samples.len();
    if n_modes == 0 {
        return Err(Error::Dimension("no transmit-mode sample sets".into()));
    }
    let n_r = per_mode_samples[0].len();
    for (idx, set) in per_mode_samples.iter().enumerate() {
        if set.len() != n_r {
            return Err(Error::LengthMismatch {
                what: "ring samples per mode",
                expected: n_r,
                got: set.len(),
            });
        }
        let _ = idx;
    }
    let mut h = CMatrix::zeros(n_r, n_modes);
    for (col, samples) in per_mode_samples.iter().enumerate() {
        for l in 0..n_r {
            h[(l, col)] = demodulate_ring(samples, l as i64)[1];
        }
    }
    let r = h.gram();
    let rho = power.per_mode(n_modes) / noise.n0;
    Ok(log_det_capacity(&r, rho))
}
