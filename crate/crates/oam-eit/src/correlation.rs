//! Current cross-correlations, induced-field autocorrelations, received-signal
//! cross-correlations, and the OAM channel correlation matrix R_OAM.
//!
//! Under unit-power independent inputs the source currents decorrelate
//! (E{J_a J_b*} = delta_ab), so every correlation collapses to a sum over
//! single sources. With u_{n_t}(r) the feed-normalized per-source Green
//! column (sqrt(N_l) x feed mean), the field autocorrelation is
//! R_E(r, r') = sum_{n_t} u_{n_t}(r) u_{n_t}(r')^H and
//!
//! ```text
//! R_y(l, l') = (1/N_r) sum_{n_r, n_r'} e^{j 2 pi [l(n_r-1) - l'(n_r'-1)]/N_r}
//!              [R_E(r_{n_r}, r_{n_r'})]_{yy}
//! ```
//!
//! R_OAM is assembled as (F V)(F V)^H from the N_r x N_t kernel matrix
//! V(n_r, n_t) = [u_{n_t}(r_{n_r})]_y and the unitary receive transform F —
//! one kernel pass plus transforms instead of the literal quadruple sum,
//! and Hermitian PSD by construction.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::fields::{
    demodulate_ring, field_at_point, source_mean_column, synthesize_currents, FieldForm,
    FieldSample, OamExcitation, SourceCurrent,
};
use crate::geometry::{build_observer_grid, ObserverGrid, TransmitArray, Vec3};
use crate::linalg::{dft_matrix, hermitian_eigenvalues, CMatrix};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::PI;

/// E{J_a J_b*} for unit-power independent inputs:
/// (1/N_t) sum_m e^{j 2 pi (m-1)(n_t - n_t')/N_t} = delta.
pub fn current_cross_correlation(n_t: usize, n_t_other: usize, n_sources: usize) -> Result<Complex64> {
    for (what, idx) in [("n_t", n_t), ("n_t'", n_t_other)] {
        if idx == 0 || idx > n_sources {
            return Err(Error::IndexOutOfRange {
                what,
                index: idx,
                max: n_sources,
            });
        }
    }
    let delta = n_t as f64 - n_t_other as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..n_sources {
        acc += Complex64::from_polar(1.0, 2.0 * PI * m as f64 * delta / n_sources as f64);
    }
    Ok(acc / n_sources as f64)
}

/// Feed-normalized per-source y-column kernel V(n_r, n_t) over a point set.
fn kernel_matrix(
    points: &[Vec3],
    array: &TransmitArray,
    constants: &PhysicalConstants,
    form: FieldForm,
) -> Result<CMatrix> {
    let n_t = array.n_sources();
    let feed_scale = (array.feeds_per_source() as f64).sqrt();
    let rows: Result<Vec<Vec<Complex64>>> = points
        .par_iter()
        .map(|&r| {
            (1..=n_t)
                .map(|src| {
                    source_mean_column(r, array, src, constants, form)
                        .map(|col| col[1] * feed_scale)
                })
                .collect()
        })
        .collect();
    let rows = rows?;
    Ok(CMatrix::from_fn(points.len(), n_t, |i, j| rows[i][j]))
}

/// 3x3 induced-field autocorrelation R_E(r, r') = sum_{n_t} u(r) u(r')^H.
pub fn field_autocorrelation(
    r: Vec3,
    r_other: Vec3,
    array: &TransmitArray,
    constants: &PhysicalConstants,
    form: FieldForm,
) -> Result<[[Complex64; 3]; 3]> {
    let feed_scale = (array.feeds_per_source() as f64).sqrt();
    let mut acc = [[Complex64::new(0.0, 0.0); 3]; 3];
    for n_t in 1..=array.n_sources() {
        let u = source_mean_column(r, array, n_t, constants, form)?.map(|v| v * feed_scale);
        let v = source_mean_column(r_other, array, n_t, constants, form)?.map(|v| v * feed_scale);
        for a in 0..3 {
            for b in 0..3 {
                acc[a][b] += u[a] * v[b].conj();
            }
        }
    }
    Ok(acc)
}

/// y-component received-signal cross-correlation R_y(l, l') on a ring.
pub fn received_cross_correlation_yy(
    l: usize,
    l_other: usize,
    ring: &[Vec3],
    array: &TransmitArray,
    constants: &PhysicalConstants,
    form: FieldForm,
) -> Result<Complex64> {
    let n_r = ring.len();
    for (what, idx) in [("l", l), ("l'", l_other)] {
        if idx >= n_r {
            return Err(Error::IndexOutOfRange {
                what,
                index: idx,
                max: n_r - 1,
            });
        }
    }
    let v = kernel_matrix(ring, array, constants, form)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for n_r_idx in 0..n_r {
        for n_r_other in 0..n_r {
            let phase = Complex64::from_polar(
                1.0,
                2.0 * PI * (l as f64 * n_r_idx as f64 - l_other as f64 * n_r_other as f64)
                    / n_r as f64,
            );
            // [R_E]_yy(r_a, r_b) = sum_nt V(a, nt) V(b, nt)*.
            let mut kyy = Complex64::new(0.0, 0.0);
            for n_t in 0..array.n_sources() {
                kyy += v[(n_r_idx, n_t)] * v[(n_r_other, n_t)].conj();
            }
            acc += phase * kyy;
        }
    }
    Ok(acc / n_r as f64)
}

/// Hermitian PSD N_r x N_r OAM channel correlation matrix, modes in DFT bin
/// order 0..N_r-1.
#[derive(Debug, Clone)]
pub struct OamCorrelationMatrix {
    pub matrix: CMatrix,
}

impl OamCorrelationMatrix {
    pub fn n_modes(&self) -> usize {
        self.matrix.rows
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// max |R - R^H| relative to max |R|.
    pub fn hermitian_residual_relative(&self) -> f64 {
        let scale = self.matrix.max_abs();
        if scale == 0.0 {
            0.0
        } else {
            self.matrix.hermitian_residual() / scale
        }
    }

    /// R scaled so the mean diagonal (trace/N_r) is 1.
    pub fn normalized_by_mean_gain(&self) -> Self {
        let mean = self.trace() / self.n_modes() as f64;
        Self {
            matrix: self.matrix.scale(1.0 / mean),
        }
    }
}

/// Assemble R_OAM = (F V)(F V)^H over all mode pairs of the ring.
pub fn build_oam_correlation_matrix(
    ring: &[Vec3],
    array: &TransmitArray,
    constants: &PhysicalConstants,
    form: FieldForm,
) -> Result<OamCorrelationMatrix> {
    if ring.is_empty() {
        return Err(Error::InvalidConfig {
            what: "receive ring",
            message: "must contain at least one point".into(),
        });
    }
    let v = kernel_matrix(ring, array, constants, form)?;
    let f = dft_matrix(ring.len(), 1.0);
    let a = f.mul(&v);
    Ok(OamCorrelationMatrix { matrix: a.gram() })
}

/// |R_E(r, r)| component magnitudes over an observer grid: nine row-major
/// panels indexed [alpha][beta], for the component-pair power maps.
pub fn autocorrelation_power_maps(
    grid: &ObserverGrid,
    array: &TransmitArray,
    constants: &PhysicalConstants,
    form: FieldForm,
) -> Result<[Vec<f64>; 9]> {
    let points = build_observer_grid(grid)?;
    let tensors: Result<Vec<[[Complex64; 3]; 3]>> = points
        .par_iter()
        .map(|&r| field_autocorrelation(r, r, array, constants, form))
        .collect();
    let tensors = tensors?;
    let mut maps: [Vec<f64>; 9] = std::array::from_fn(|_| Vec::with_capacity(points.len()));
    for t in &tensors {
        for a in 0..3 {
            for b in 0..3 {
                maps[a * 3 + b].push(t[a][b].norm());
            }
        }
    }
    Ok(maps)
}

/// Sample covariance of the demodulated y-component mode signals over
/// `draws` unit-modulus random excitations (independent uniform phases, so
/// E{x x^H} = I exactly). Validation diagnostic for R_OAM; runs through the
/// field-synthesis path, not the kernel assembly.
pub fn monte_carlo_demodulated_covariance(
    ring: &[Vec3],
    array: &TransmitArray,
    constants: &PhysicalConstants,
    form: FieldForm,
    draws: usize,
    seed: u64,
) -> Result<CMatrix> {
    let n_r = ring.len();
    let n_t = array.n_sources();
    // Ring response of each source under unit current (linear basis).
    let mut basis = CMatrix::zeros(n_r, n_t);
    for src in 1..=n_t {
        let mut currents: Vec<SourceCurrent> = (1..=n_t)
            .map(|i| SourceCurrent {
                source_index: i,
                amplitude: Complex64::new(0.0, 0.0),
            })
            .collect();
        currents[src - 1].amplitude = Complex64::new(1.0, 0.0);
        for (i, &point) in ring.iter().enumerate() {
            basis[(i, src - 1)] = field_at_point(point, array, &currents, constants, form)?[1];
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = CMatrix::zeros(n_r, n_r);
    for _ in 0..draws {
        let x: Vec<Complex64> = (0..n_t)
            .map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI)))
            .collect();
        let currents = synthesize_currents(&OamExcitation::new(x), n_t)?;
        let amplitudes: Vec<Complex64> = currents.iter().map(|c| c.amplitude).collect();
        let ring_y = basis.mul_vec(&amplitudes);
        let samples: Vec<FieldSample> = ring
            .iter()
            .zip(&ring_y)
            .map(|(&position, &ey)| FieldSample {
                position,
                e: [Complex64::new(0.0, 0.0), ey, Complex64::new(0.0, 0.0)],
            })
            .collect();
        let y: Vec<Complex64> = (0..n_r)
            .map(|l| demodulate_ring(&samples, l as i64)[1])
            .collect();
        for a in 0..n_r {
            for b in 0..n_r {
                acc[(a, b)] += y[a] * y[b].conj();
            }
        }
    }
    Ok(acc.scale(1.0 / draws as f64))
}
