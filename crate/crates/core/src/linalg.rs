//! Small dense complex matrices and a cyclic Jacobi eigen-solver.
//!
//! Everything here is sized for desk-scale problems (at most 16×16), so the
//! routines favour clarity and determinism over asymptotic speed.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal Frobenius norm at which the Jacobi sweep stops.
pub const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from real rows. Panics if the rows are ragged.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix rows must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        m
    }

    /// Outer product |v⟩⟨v|.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation `|A[i][j] - conj(A[j][i])|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Re Tr[A B] computed without forming the product.
    pub fn trace_product(&self, other: &CMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc.re
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (a, b) = (self.n, other.n);
        let mut m = CMatrix::zeros(a * b);
        for i in 0..a {
            for j in 0..a {
                let s = self[(i, j)];
                for k in 0..b {
                    for l in 0..b {
                        m[(i * b + k, j * b + l)] = s * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Hermitian part (A + A†)/2.
    pub fn symmetrized(&self) -> CMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        m
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[(r, col)].norm().total_cmp(&a[(s, col)].norm()))
                .expect("non-empty pivot range");
            if a[(pivot, col)].norm() <= 1e-300_f64.max(scale * 1e-18) {
                return Err(Error::Singular);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= p;
                inv[(col, j)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(r, j)] -= f * ac;
                    inv[(r, j)] -= f * ic;
                }
            }
        }
        Ok(inv)
    }

    /// Cholesky factor L (lower) of a Hermitian positive-definite matrix,
    /// or `None` if the matrix is not numerically positive definite.
    pub fn cholesky(&self) -> Option<CMatrix> {
        let n = self.n;
        let mut l = CMatrix::zeros(n);
        for j in 0..n {
            let mut d = self[(j, j)].re;
            for k in 0..j {
                d -= l[(j, k)].norm_sqr();
            }
            if d.is_nan() || d <= 0.0 {
                return None;
            }
            let djj = d.sqrt();
            l[(j, j)] = Complex64::new(djj, 0.0);
            for i in (j + 1)..n {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)].conj();
                }
                l[(i, j)] = s / djj;
            }
        }
        Some(l)
    }

    /// log det of a Hermitian positive-definite matrix.
    pub fn log_det_pd(&self) -> Option<f64> {
        let l = self.cholesky()?;
        Some((0..self.n).map(|i| 2.0 * l[(i, i)].re.ln()).sum())
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Eigenvalues of a real symmetric matrix (row-major `n×n`) by cyclic Jacobi
/// rotations, returned in ascending order.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let scale = m.iter().map(|v| v * v).sum::<f64>().sqrt().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off < JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| m[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues of a Hermitian matrix via the real 2n×2n embedding
/// `[[Re, -Im], [Im, Re]]`, whose spectrum is that of `h` with every
/// eigenvalue doubled.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.dim();
    let is_real = (0..n).all(|i| (0..n).all(|j| h[(i, j)].im == 0.0));
    if is_real {
        let a: Vec<f64> = (0..n * n).map(|k| h[(k / n, k % n)].re).collect();
        return symmetric_eigenvalues(&a, n);
    }
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i * m + j] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
            a[(i + n) * m + (j + n)] = z.re;
        }
    }
    let doubled = symmetric_eigenvalues(&a, m);
    doubled
        .chunks(2)
        .map(|pair| 0.5 * (pair[0] + pair[1]))
        .collect()
}

/// Solves the dense real system `a x = b` (row-major `n×n`) by Gaussian
/// elimination with partial pivoting.
pub fn solve_real(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    let scale = m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs())).max(f64::MIN_POSITIVE);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| m[r * n + col].abs().total_cmp(&m[s * n + col].abs()))
            .expect("non-empty pivot range");
        if m[pivot * n + col].abs() <= scale * 1e-14 {
            return Err(Error::Singular);
        }
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
            }
            rhs.swap(pivot, col);
        }
        for r in (col + 1)..n {
            let f = m[r * n + col] / m[col * n + col];
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m[r * n + j] -= f * m[col * n + j];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = ((i + 1)..n).map(|j| m[i * n + j] * x[j]).sum();
        x[i] = (rhs[i] - s) / m[i * n + i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn jacobi_matches_closed_form_2x2() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let eig = symmetric_eigenvalues(&[2.0, 1.0, 1.0, 2.0], 2);
        assert!((eig[0] - 1.0).abs() < 1e-14);
        assert!((eig[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_handles_diagonal_and_degenerate() {
        let eig = symmetric_eigenvalues(&[5.0, 0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0, -1.0], 3);
        assert_eq!(eig, vec![-1.0, 5.0, 5.0]);
    }

    #[test]
    fn hermitian_pauli_y_spectrum() {
        let mut y = CMatrix::zeros(2);
        y[(0, 1)] = c(0.0, -1.0);
        y[(1, 0)] = c(0.0, 1.0);
        let eig = y.hermitian_eigenvalues();
        assert!((eig[0] + 1.0).abs() < 1e-14);
        assert!((eig[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn inverse_round_trip() {
        let a = CMatrix::from_real_rows(&[
            vec![4.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ]);
        let inv = a.inverse().unwrap();
        let id = &a * &inv;
        assert!((&id - &CMatrix::identity(3)).max_abs() < 1e-14);
    }

    #[test]
    fn singular_inverse_is_error() {
        let a = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(matches!(a.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = CMatrix::from_real_diag(&[1.0, -1e-3]);
        assert!(a.cholesky().is_none());
        let b = CMatrix::from_real_diag(&[2.0, 8.0]);
        assert!((b.log_det_pd().unwrap() - 16f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn solve_real_small_system() {
        let x = solve_real(&[2.0, 1.0, 1.0, 3.0], &[3.0, 5.0], 2).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14);
        assert!((x[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn kron_dimensions_and_trace() {
        let a = CMatrix::from_real_diag(&[1.0, 2.0]);
        let b = CMatrix::from_real_diag(&[3.0, 4.0]);
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.trace().re, 21.0);
    }
}
