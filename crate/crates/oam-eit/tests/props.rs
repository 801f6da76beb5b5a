//! Property tests: parser crash-safety on arbitrary input, float round
//! trips, transform unitarity, and Green-kernel structure over random
//! geometry.

use num_complex::Complex64;
use oam_eit::fields::{demodulate_ring, FieldSample, IdftMatrix};
use oam_eit::green::dyadic_green;
use oam_eit::ingest::{
    fmt_f64, load_config_str, parse_field_export_str, parse_sparams_str,
};
use oam_eit::linalg::{dft_matrix, CMatrix};
use oam_eit::PhysicalConstants;
use proptest::prelude::*;

proptest! {
    /// Every input (up to 64 KiB; shrunk here for speed) yields a value or a
    /// structured error, never a panic.
    #[test]
    fn sparams_parser_never_panics(text in ".{0,2048}") {
        let _ = parse_sparams_str(&text, "fuzz");
    }

    #[test]
    fn field_export_parser_never_panics(text in ".{0,2048}") {
        let _ = parse_field_export_str(&text, "fuzz");
    }

    #[test]
    fn config_parser_never_panics(text in ".{0,2048}") {
        let _ = load_config_str(&text, "fuzz");
    }

    /// Near-miss structured inputs exercise the value parsing paths.
    #[test]
    fn sparams_parser_survives_near_misses(
        ports in 1usize..6,
        rows in proptest::collection::vec(".{0,80}", 0..8),
    ) {
        let mut text = format!("ports={ports}, freq_hz=1e9, format=ri\n");
        for row in rows {
            text.push_str(&row);
            text.push('\n');
        }
        let _ = parse_sparams_str(&text, "fuzz");
    }

    /// 17-significant-digit serialization round-trips every finite f64.
    #[test]
    fn float_serialization_round_trips(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
        let back: f64 = fmt_f64(v).parse().unwrap();
        prop_assert_eq!(back.to_bits(), v.to_bits());
    }

    /// W^H W = I for every transform size used anywhere in the pipeline.
    #[test]
    fn idft_matrices_are_unitary(n in 1usize..48) {
        let w = IdftMatrix::new(n);
        let residual = w.matrix.adjoint().mul(&w.matrix).sub(&CMatrix::identity(n)).max_abs();
        prop_assert!(residual < 1e-12);
    }

    /// The Green tensor stays symmetric and argument-swap invariant over
    /// random geometry spanning near and far field.
    #[test]
    fn green_tensor_symmetry(
        px in -3.0f64..3.0, py in -3.0f64..3.0, pz in 0.02f64..5.0,
        sx in -0.05f64..0.05, sy in -0.05f64..0.05,
    ) {
        let c = PhysicalConstants::new(5.8e9).unwrap();
        let r = [px, py, pz];
        let s = [sx, sy, 0.0];
        let g = dyadic_green(r, s, &c).unwrap();
        let h = dyadic_green(s, r, &c).unwrap();
        let scale = g.component(0, 0).norm().max(g.component(1, 1).norm());
        for a in 0..3 {
            for b in 0..3 {
                prop_assert!((g.component(a, b) - g.component(b, a)).norm() <= 1e-12 * scale);
                prop_assert!((g.component(a, b) - h.component(a, b)).norm() <= 1e-12 * scale);
            }
        }
    }

    /// Parseval check of the ring transform: summed |y_l|^2 over all bins
    /// equals the summed sample power (unitary receive transform).
    #[test]
    fn demodulation_preserves_energy(
        n in 1usize..12,
        seed in 0u64..1000,
    ) {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state as f64 / u64::MAX as f64) * 2.0 - 1.0
        };
        let samples: Vec<FieldSample> = (0..n)
            .map(|i| FieldSample {
                position: [i as f64, 0.0, 1.0],
                e: [
                    Complex64::new(next(), next()),
                    Complex64::new(next(), next()),
                    Complex64::new(next(), next()),
                ],
            })
            .collect();
        let input_power: f64 = samples
            .iter()
            .map(|s| s.e.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum();
        let output_power: f64 = (0..n)
            .map(|l| {
                demodulate_ring(&samples, l as i64)
                    .iter()
                    .map(|c| c.norm_sqr())
                    .sum::<f64>()
            })
            .sum();
        prop_assert!((input_power - output_power).abs() <= 1e-10 * input_power.max(1e-30));
    }

    /// dft_matrix with either kernel sign stays unitary.
    #[test]
    fn dft_sign_variants_are_unitary(n in 1usize..32, positive in proptest::bool::ANY) {
        let sign = if positive { 1.0 } else { -1.0 };
        let w = dft_matrix(n, sign);
        let residual = w.adjoint().mul(&w).sub(&CMatrix::identity(n)).max_abs();
        prop_assert!(residual < 1e-12);
    }
}
