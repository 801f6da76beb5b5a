//! Independent reference evaluations used by the test suites.
//!
//! Everything here deliberately avoids the production formulas: the Green
//! oracle differentiates the scalar kernel numerically, and the correlation
//! oracles average explicit random excitations. Production code must never
//! call into this module.

use crate::constants::PhysicalConstants;
use crate::geometry::{vec3_dot, vec3_norm, vec3_sub, Vec3};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// j k0 Z0 (I + grad grad^H / k0^2) e^{j k0 p}/(4 pi p) by central finite
/// differences of the scalar kernel with step `h`.
///
/// The phase is evaluated relative to the unshifted point via
/// p - p0 = (2 d0.delta + |delta|^2)/(p + p0), which keeps the rounding of
/// k0 p out of the second differences; the common carrier e^{j k0 p0} is
/// re-applied at the end.
pub fn green_finite_difference(
    r: Vec3,
    s: Vec3,
    constants: &PhysicalConstants,
    h: f64,
) -> [[Complex64; 3]; 3] {
    let k0 = constants.wave_number;
    let d0 = vec3_sub(r, s);
    let p0 = vec3_norm(d0);

    let shifted = |delta: Vec3| -> Complex64 {
        let d = [d0[0] + delta[0], d0[1] + delta[1], d0[2] + delta[2]];
        let p = vec3_norm(d);
        let dp = (2.0 * vec3_dot(d0, delta) + vec3_dot(delta, delta)) / (p + p0);
        Complex64::from_polar(1.0 / (4.0 * PI * p), k0 * dp)
    };

    let axis = |i: usize, scale: f64| -> Vec3 {
        let mut v = [0.0; 3];
        v[i] = scale;
        v
    };

    let g0 = shifted([0.0; 3]);
    let mut hess = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        hess[i][i] = (shifted(axis(i, h)) - g0 * 2.0 + shifted(axis(i, -h))) / (h * h);
        for j in (i + 1)..3 {
            let pp = {
                let mut v = axis(i, h);
                v[j] += h;
                v
            };
            let pm = {
                let mut v = axis(i, h);
                v[j] -= h;
                v
            };
            let mp = {
                let mut v = axis(i, -h);
                v[j] += h;
                v
            };
            let mm = {
                let mut v = axis(i, -h);
                v[j] -= h;
                v
            };
            let mixed =
                (shifted(pp) - shifted(pm) - shifted(mp) + shifted(mm)) / (4.0 * h * h);
            hess[i][j] = mixed;
            hess[j][i] = mixed;
        }
    }

    let carrier = Complex64::from_polar(1.0, k0 * p0);
    let jk0z0 = Complex64::new(0.0, k0 * constants.impedance);
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let identity = if i == j { g0 } else { Complex64::new(0.0, 0.0) };
            out[i][j] = jk0z0 * (identity + hess[i][j] / (k0 * k0)) * carrier;
        }
    }
    out
}

/// Deterministic unit-modulus excitation vectors with E{x x^H} = I:
/// each entry is e^{j theta} with independent uniform phases.
pub struct ExcitationDraws {
    rng: ChaCha8Rng,
    n: usize,
}

impl ExcitationDraws {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }
}

impl Iterator for ExcitationDraws {
    type Item = Vec<Complex64>;
    fn next(&mut self) -> Option<Vec<Complex64>> {
        Some(
            (0..self.n)
                .map(|_| Complex64::from_polar(1.0, self.rng.gen_range(0.0..2.0 * PI)))
                .collect(),
        )
    }
}

/// Uniform sample inside a disc of radius `r_max`, as (x, y).
pub fn disc_sample(rng: &mut ChaCha8Rng, r_max: f64) -> (f64, f64) {
    let r = r_max * rng.gen_range(0.0f64..1.0).sqrt();
    let phi = rng.gen_range(0.0..2.0 * PI);
    (r * phi.cos(), r * phi.sin())
}
