//! Physical constants for a single-frequency free-space link.

use crate::error::{Error, Result};

/// Propagation speed used to convert frequency to wavelength, m/s.
///
/// The rounded value 3e8 is used so that wavelength-derived dimensions match
/// the reference results exactly (51.7241 mm at 5.8 GHz, 200 lambda = 10.3448 m).
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Free-space intrinsic impedance, ohms.
pub const Z0: f64 = 376.730_313_668;

/// Frequency-derived constants of the link: wavelength, wave number and the
/// free-space impedance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Operating frequency, Hz.
    pub frequency: f64,
    /// Wavelength lambda = c / frequency, m.
    pub wavelength: f64,
    /// Wave number k0 = 2 pi / lambda, rad/m.
    pub wave_number: f64,
    /// Free-space intrinsic impedance, ohms.
    pub impedance: f64,
}

impl PhysicalConstants {
    pub fn new(frequency: f64) -> Result<Self> {
        if !(frequency > 0.0) || !frequency.is_finite() {
            return Err(Error::InvalidConfig {
                what: "frequency",
                message: format!("must be positive and finite, got {frequency}"),
            });
        }
        let wavelength = SPEED_OF_LIGHT / frequency;
        Ok(Self {
            frequency,
            wavelength,
            wave_number: 2.0 * std::f64::consts::PI / wavelength,
            impedance: Z0,
        })
    }

    /// Separation guard below which the Green's kernel is rejected
    /// rather than evaluated (lambda * 1e-6).
    pub fn singular_limit(&self) -> f64 {
        self.wavelength * 1e-6
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wave_number_wavelength_product() {
        for f in [1.0e9, 5.8e9, 60.0e9, 433.0e6] {
            let c = PhysicalConstants::new(f).unwrap();
            let rel = (c.wave_number * c.wavelength - 2.0 * PI).abs() / (2.0 * PI);
            assert!(rel < 1e-12, "k0*lambda != 2pi at {f} Hz (rel {rel})");
        }
    }

    #[test]
    fn paper_wavelength_at_5p8_ghz() {
        let c = PhysicalConstants::new(5.8e9).unwrap();
        assert!((c.wavelength - 51.7241e-3).abs() < 1e-7);
        assert!((200.0 * c.wavelength - 10.3448).abs() < 1e-4);
    }

    #[test]
    fn rejects_nonpositive_frequency() {
        assert!(PhysicalConstants::new(0.0).is_err());
        assert!(PhysicalConstants::new(-1.0).is_err());
        assert!(PhysicalConstants::new(f64::NAN).is_err());
    }
}
