//! Free-space dyadic Green's function with all 1/p, 1/p^2, 1/p^3 terms.
//!
//! For separation p = r - s, p = ||p||, u = lambda/(2 pi p) = 1/(k0 p):
//!
//! ```text
//! G(r, s) = j k0 Z0 e^{j k0 p} / (4 pi p) *
//!           [ (I - pp^T) + (j u - u^2)(I - 3 pp^T) ]
//! ```
//!
//! with pp^T the outer product of the unit separation vector. The sign
//! convention e^{+j k0 p} is kept as printed in the source material; a
//! global conjugation to the e^{-jkr} convention leaves every |.|^2 form
//! and Hermitian spectrum in this crate unchanged. The bracketed form is
//! the exact expansion of (I + grad grad^H / k0^2) e^{j k0 p}/(4 pi p)
//! scaled by j k0 Z0, which the finite-difference oracle in
//! [`crate::oracles`] checks directly.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::geometry::{vec3_norm, vec3_sub, Vec3};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Separation r - s with its norm and unit vector; rejects near-singular pairs.
#[derive(Debug, Clone, Copy)]
pub struct SeparationVector {
    pub p: Vec3,
    pub norm: f64,
    pub unit: Vec3,
}

impl SeparationVector {
    pub fn between(r: Vec3, s: Vec3, constants: &PhysicalConstants) -> Result<Self> {
        let p = vec3_sub(r, s);
        let norm = vec3_norm(p);
        let limit = constants.singular_limit();
        if norm < limit {
            return Err(Error::SingularSeparation {
                separation: norm,
                limit,
            });
        }
        Ok(Self {
            p,
            norm,
            unit: [p[0] / norm, p[1] / norm, p[2] / norm],
        })
    }
}

/// Complex 3x3 Green tensor, ohm/m^2; symmetric and finite for p > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicGreenValue {
    pub tensor: [[Complex64; 3]; 3],
}

impl DyadicGreenValue {
    /// Component G^{alpha beta}, alpha/beta in 0..3 for x, y, z.
    pub fn component(&self, alpha: usize, beta: usize) -> Complex64 {
        self.tensor[alpha][beta]
    }
}

/// Scalar pieces shared by the full tensor and the y-column fast path.
struct KernelParts {
    prefactor: Complex64,
    /// 1 + (ju - u^2): coefficient of the identity part.
    c_delta: Complex64,
    /// 1 + 3(ju - u^2): coefficient of the projector part.
    c_proj: Complex64,
    unit: Vec3,
}

fn kernel_parts(r: Vec3, s: Vec3, constants: &PhysicalConstants) -> Result<KernelParts> {
    let sep = SeparationVector::between(r, s, constants)?;
    let k0 = constants.wave_number;
    let p = sep.norm;
    let u = 1.0 / (k0 * p);
    let t2 = Complex64::new(-u * u, u); // j u - u^2
    let phase = Complex64::from_polar(1.0, k0 * p);
    let prefactor = Complex64::new(0.0, k0 * constants.impedance / (4.0 * PI * p)) * phase;
    Ok(KernelParts {
        prefactor,
        c_delta: Complex64::new(1.0, 0.0) + t2,
        c_proj: Complex64::new(1.0, 0.0) + t2 * 3.0,
        unit: sep.unit,
    })
}

#[inline]
fn entry(parts: &KernelParts, alpha: usize, beta: usize) -> Complex64 {
    let delta = if alpha == beta {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    };
    parts.prefactor * (delta * parts.c_delta - parts.unit[alpha] * parts.unit[beta] * parts.c_proj)
}

/// Full 3x3 dyadic Green tensor between field point `r` and source point `s`.
pub fn dyadic_green(r: Vec3, s: Vec3, constants: &PhysicalConstants) -> Result<DyadicGreenValue> {
    let parts = kernel_parts(r, s, constants)?;
    let mut tensor = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (alpha, row) in tensor.iter_mut().enumerate() {
        for (beta, value) in row.iter_mut().enumerate() {
            *value = entry(&parts, alpha, beta);
        }
    }
    Ok(DyadicGreenValue { tensor })
}

/// (G^{xy}, G^{yy}, G^{zy}): the column coupling a y-directed current to the
/// three field components. Bitwise equal to column 1 of [`dyadic_green`].
pub fn green_column_y(r: Vec3, s: Vec3, constants: &PhysicalConstants) -> Result<[Complex64; 3]> {
    let parts = kernel_parts(r, s, constants)?;
    Ok([entry(&parts, 0, 1), entry(&parts, 1, 1), entry(&parts, 2, 1)])
}
