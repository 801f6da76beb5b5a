//! Small dense complex linear algebra: matrices, Hermitian eigenvalues via
//! two-sided Jacobi rotations, LU log-determinant, and unitary DFT matrices.
//!
//! The problem sizes in this crate are tiny (N <= 64), so a self-contained
//! implementation beats pulling in a full linear-algebra stack. The Jacobi
//! eigensolver and the LU determinant give two independent routes to
//! log2 det(I + c R), which the capacity tests cross-check.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// A * A^H (Gram matrix), Hermitian PSD by construction.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..=i {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..self.cols {
                    s += self[(i, k)] * self[(j, k)].conj();
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut m = self.clone();
        for v in &mut m.data {
            *v *= factor;
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// max |A - A^H| over entries.
    pub fn hermitian_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Unitary DFT-family matrix: entry (n1, n2) = exp(sign * j 2 pi n1 n2 / n) / sqrt(n).
///
/// `sign = +1` is the convention printed for both the transmit IDFT and the
/// receive transform; both are unitary for either sign.
pub fn dft_matrix(n: usize, sign: f64) -> CMatrix {
    let norm = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |r, c| {
        let phase = sign * 2.0 * PI * (r as f64) * (c as f64) / (n as f64);
        Complex64::from_polar(norm, phase)
    })
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// returned in descending order.
///
/// The input is symmetrized (A + A^H)/2 first; callers are expected to have
/// checked Hermiticity to their own tolerance.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    assert!(a.is_square(), "eigenvalues need a square matrix");
    let n = a.rows;
    if n == 0 {
        return Vec::new();
    }
    let mut m = CMatrix::from_fn(n, n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * 0.5);

    let fro = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let tol = 1e-15 * fro;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let abs_apq = apq.norm();
                if abs_apq <= tol / (n as f64) {
                    continue;
                }
                let phase = apq / abs_apq;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // Annihilation root of t^2 - 2 tau t - 1 = 0 (smaller magnitude).
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns p, q of M <- M * U.
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * c + mkq * s * phase.conj();
                    m[(k, q)] = -mkp * s * phase + mkq * c;
                }
                // Rows p, q of M <- U^H * M.
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * c + mqk * s * phase;
                    m[(q, k)] = -mpk * s * phase.conj() + mqk * c;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eig
}

/// log2 |det(A)| via LU with partial pivoting; -inf for singular input.
pub fn lu_log2_abs_det(a: &CMatrix) -> f64 {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut log2_det = 0.0f64;
    for k in 0..n {
        let (mut pivot_row, mut pivot_mag) = (k, m[(k, k)].norm());
        for r in (k + 1)..n {
            let mag = m[(r, k)].norm();
            if mag > pivot_mag {
                pivot_row = r;
                pivot_mag = mag;
            }
        }
        if pivot_mag == 0.0 {
            return f64::NEG_INFINITY;
        }
        if pivot_row != k {
            for c in 0..n {
                let tmp = m[(k, c)];
                m[(k, c)] = m[(pivot_row, c)];
                m[(pivot_row, c)] = tmp;
            }
        }
        log2_det += m[(k, k)].norm().log2();
        let inv = Complex64::new(1.0, 0.0) / m[(k, k)];
        for r in (k + 1)..n {
            let factor = m[(r, k)] * inv;
            if factor.norm_sqr() == 0.0 {
                continue;
            }
            for c in k..n {
                let sub = factor * m[(k, c)];
                m[(r, c)] -= sub;
            }
        }
    }
    log2_det
}
