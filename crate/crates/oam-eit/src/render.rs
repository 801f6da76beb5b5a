//! Raster output for field maps and correlation panels.
//!
//! Power views are written as 8-bit grayscale in dB relative to the map
//! maximum with a fixed -40 dB floor; phase views use a cyclic RGB palette
//! over [-180, 180) degrees; magnitude views are linear grayscale relative
//! to the map maximum. Fixed conventions keep the files byte-stable across
//! runs.

use crate::error::{Error, Result};
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

pub const POWER_FLOOR_DB: f64 = -40.0;

fn encode_error(e: png::EncodingError) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn write_png(path: &Path, width: u32, height: u32, color: png::ColorType, data: &[u8]) -> Result<()> {
    let file = File::create(path)?;
    let writer = BufWriter::new(file);
    let mut encoder = png::Encoder::new(writer, width, height);
    encoder.set_color(color);
    encoder.set_depth(png::BitDepth::Eight);
    let mut png_writer = encoder.write_header().map_err(encode_error)?;
    png_writer.write_image_data(data).map_err(encode_error)?;
    Ok(())
}

/// Flip a row-major map (row 0 = smallest y) into image order (top row =
/// largest y).
fn flip_rows<T: Copy>(values: &[T], resolution: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(values.len());
    for row in (0..resolution).rev() {
        out.extend_from_slice(&values[row * resolution..(row + 1) * resolution]);
    }
    out
}

/// Power map (|E|^2 samples) to grayscale dB-relative-to-max PNG.
pub fn write_power_png(path: &Path, power: &[f64], resolution: usize) -> Result<()> {
    let max = power.iter().cloned().fold(0.0f64, f64::max);
    let pixels: Vec<u8> = flip_rows(power, resolution)
        .into_iter()
        .map(|p| {
            if max <= 0.0 || p <= 0.0 {
                0
            } else {
                let db = 10.0 * (p / max).log10();
                let t = ((db - POWER_FLOOR_DB) / -POWER_FLOOR_DB).clamp(0.0, 1.0);
                (t * 255.0).round() as u8
            }
        })
        .collect();
    write_png(path, resolution as u32, resolution as u32, png::ColorType::Grayscale, &pixels)
}

/// Linear magnitude map to grayscale PNG.
pub fn write_magnitude_png(path: &Path, magnitude: &[f64], resolution: usize) -> Result<()> {
    let max = magnitude.iter().cloned().fold(0.0f64, f64::max);
    let pixels: Vec<u8> = flip_rows(magnitude, resolution)
        .into_iter()
        .map(|m| {
            if max <= 0.0 {
                0
            } else {
                ((m / max).clamp(0.0, 1.0) * 255.0).round() as u8
            }
        })
        .collect();
    write_png(path, resolution as u32, resolution as u32, png::ColorType::Grayscale, &pixels)
}

/// Phase map (radians) to a cyclic hue palette over [-180, 180) degrees.
pub fn write_phase_png(path: &Path, phase: &[f64], resolution: usize) -> Result<()> {
    let mut pixels = Vec::with_capacity(phase.len() * 3);
    for p in flip_rows(phase, resolution) {
        let mut turns = (p + std::f64::consts::PI) / (2.0 * std::f64::consts::PI);
        turns -= turns.floor();
        let (r, g, b) = hue_to_rgb(turns);
        pixels.extend_from_slice(&[r, g, b]);
    }
    write_png(path, resolution as u32, resolution as u32, png::ColorType::Rgb, &pixels)
}

/// Full-saturation hue wheel, `t` in [0, 1).
fn hue_to_rgb(t: f64) -> (u8, u8, u8) {
    let h = t * 6.0;
    let x = 1.0 - (h % 2.0 - 1.0).abs();
    let (r, g, b) = match h as usize {
        0 => (1.0, x, 0.0),
        1 => (x, 1.0, 0.0),
        2 => (0.0, 1.0, x),
        3 => (0.0, x, 1.0),
        4 => (x, 0.0, 1.0),
        _ => (1.0, 0.0, x),
    };
    (
        (r * 255.0).round() as u8,
        (g * 255.0).round() as u8,
        (b * 255.0).round() as u8,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hue_wheel_endpoints() {
        assert_eq!(hue_to_rgb(0.0), (255, 0, 0));
        assert_eq!(hue_to_rgb(1.0 / 3.0), (0, 255, 0));
        assert_eq!(hue_to_rgb(2.0 / 3.0), (0, 0, 255));
    }

    #[test]
    fn writes_valid_pngs() {
        let dir = std::env::temp_dir().join("oam_eit_render_test");
        std::fs::create_dir_all(&dir).unwrap();
        let n = 8;
        let power: Vec<f64> = (0..n * n).map(|i| i as f64).collect();
        let phase: Vec<f64> = (0..n * n)
            .map(|i| (i as f64 / (n * n) as f64 - 0.5) * std::f64::consts::TAU)
            .collect();
        let p1 = dir.join("power.png");
        let p2 = dir.join("phase.png");
        let p3 = dir.join("mag.png");
        write_power_png(&p1, &power, n).unwrap();
        write_phase_png(&p2, &phase, n).unwrap();
        write_magnitude_png(&p3, &power, n).unwrap();
        for p in [&p1, &p2, &p3] {
            let bytes = std::fs::read(p).unwrap();
            assert_eq!(&bytes[1..4], b"PNG");
        }
        // Determinism: a second write produces identical bytes.
        let before = std::fs::read(&p1).unwrap();
        write_power_png(&p1, &power, n).unwrap();
        assert_eq!(before, std::fs::read(&p1).unwrap());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn all_zero_power_map_is_black() {
        let dir = std::env::temp_dir().join("oam_eit_render_zero");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("zero.png");
        write_power_png(&p, &vec![0.0; 16], 4).unwrap();
        assert!(p.exists());
        std::fs::remove_dir_all(&dir).ok();
    }
}
