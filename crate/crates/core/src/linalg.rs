//! Small dense complex matrices and Hermitian eigensolvers.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for (o, &b) in orow.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot_plain(self.row(i), v)).collect()
    }

    pub fn scale(&mut self, k: f64) {
        self.data.iter_mut().for_each(|x| *x *= k);
    }

    /// `self += k·other`
    pub fn add_scaled(&mut self, other: &Self, k: Complex64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += k * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut r = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        r
    }

    /// `max |(U†U − I)_{ij}|`
    pub fn unitarity_residual(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows))
    }

    /// `⟨v|M|v⟩`
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        dot(v, &self.mul_vec(v))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `Σ a_i b_i` (no conjugation).
#[inline]
pub fn dot_plain(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨a|b⟩ = Σ conj(a_i) b_i`.
#[inline]
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>())
}

/// Scales `v` to unit norm in place; fails on the zero vector.
pub fn normalize(v: &mut [Complex64]) -> Result<()> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::ZeroVector);
    }
    v.iter_mut().for_each(|x| *x /= n);
    Ok(())
}

/// Eigen-decomposition with eigenvalues sorted descending; column `k` of
/// `vectors` belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Cyclic complex Jacobi method. Rejects inputs whose Hermiticity residual
/// exceeds `1e-10·max(1, ‖A‖_max)`.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::Precondition("square matrix"));
    }
    let scale = a.as_slice().iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let herm = a.hermiticity_residual();
    if herm > 1e-10 * scale {
        return Err(Error::Tolerance {
            what: "hermiticity",
            residual: herm,
            tolerance: 1e-10 * scale,
        });
    }
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    let mut v = CMatrix::identity(n);
    let total: f64 = m.as_slice().iter().map(|x| x.norm_sqr()).sum();
    let eps = 1e-30 * total.max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off <= eps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag * mag <= eps / ((n * n) as f64) {
                    continue;
                }
                let e = apq / mag;
                let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                // V = diag(1, conj(e)) · [[c, s], [−s, c]] on the (p, q) plane
                let vqp = -s * e.conj();
                let vqq = c * e.conj();
                rotate_columns(&mut m, p, q, c, s, vqp, vqq);
                rotate_rows(&mut m, p, q, c, s, vqp, vqq);
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                rotate_columns(&mut v, p, q, c, s, vqp, vqq);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.partial_cmp(&m[(i, i)].re).unwrap_or(core::cmp::Ordering::Equal).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// `M ← M·V` on columns `p, q`, with `V_pp = c`, `V_pq = s`, `V_qp = vqp`, `V_qq = vqq`.
#[inline]
fn rotate_columns(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, vqp: Complex64, vqq: Complex64) {
    for k in 0..m.rows {
        let x = m[(k, p)];
        let y = m[(k, q)];
        m[(k, p)] = x * c + y * vqp;
        m[(k, q)] = x * s + y * vqq;
    }
}

/// `M ← V†·M` on rows `p, q`.
#[inline]
fn rotate_rows(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, vqp: Complex64, vqq: Complex64) {
    let cols = m.cols;
    for k in 0..cols {
        let x = m.data[p * cols + k];
        let y = m.data[q * cols + k];
        m.data[p * cols + k] = x * c + y * vqp.conj();
        m.data[q * cols + k] = x * s + y * vqq.conj();
    }
}

/// Largest eigenvalue and a unit eigenvector. Lanczos with full
/// reorthogonalization from `start` (or a fixed vector), restarted from the Ritz
/// vector; falls back to the full Jacobi solve if the residual
/// `‖Av − λv‖` stays above `1e-11·max(1, ‖A‖_max)`.
pub fn top_eigenpair(a: &CMatrix, start: Option<&[Complex64]>) -> Result<(f64, Vec<Complex64>)> {
    let n = a.rows();
    if n != a.cols() || n == 0 {
        return Err(Error::Precondition("nonempty square matrix"));
    }
    let scale = a.as_slice().iter().map(|x| x.norm()).fold(0.0, f64::max).max(1.0);
    let herm = a.hermiticity_residual();
    if herm > 1e-10 * scale {
        return Err(Error::Tolerance {
            what: "hermiticity",
            residual: herm,
            tolerance: 1e-10 * scale,
        });
    }
    let tol = 1e-11 * scale;
    let mut x: Vec<Complex64> = match start {
        Some(s) if s.len() == n && norm(s) > 0.0 => s.to_vec(),
        _ => (0..n).map(|i| Complex64::new(1.0 + (i % 7) as f64 * 0.1, 0.05 * (i % 3) as f64)).collect(),
    };
    normalize(&mut x)?;
    let m = n.min(48);
    for _restart in 0..30 {
        let (theta, ritz) = lanczos_ritz(a, &x, m);
        x = ritz;
        let ax = a.mul_vec(&x);
        let res = norm(&ax.iter().zip(&x).map(|(p, q)| p - q * theta).collect::<Vec<_>>());
        if res < tol {
            return Ok((theta, x));
        }
    }
    let eig = hermitian_eigen(a)?;
    Ok((eig.values[0], eig.vectors.column(0)))
}

/// One Lanczos pass of at most `m` steps; returns the top Ritz pair.
fn lanczos_ritz(a: &CMatrix, x0: &[Complex64], m: usize) -> (f64, Vec<Complex64>) {
    let n = x0.len();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut alpha = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    let mut q = x0.to_vec();
    for j in 0..m {
        let mut w = a.mul_vec(&q);
        let aj = dot(&q, &w).re;
        alpha.push(aj);
        basis.push(q.clone());
        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            for b in &basis {
                let h = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= h * bi;
                }
            }
        }
        let bj = norm(&w);
        if j + 1 == m || bj < 1e-13 * (aj.abs() + 1.0) {
            break;
        }
        beta.push(bj);
        q = w.into_iter().map(|z| z / bj).collect();
    }
    let k = alpha.len();
    let t = CMatrix::from_fn(k, k, |i, j| {
        if i == j {
            Complex64::new(alpha[i], 0.0)
        } else if i + 1 == j {
            Complex64::new(beta[i], 0.0)
        } else if j + 1 == i {
            Complex64::new(beta[j], 0.0)
        } else {
            ZERO
        }
    });
    let eig = hermitian_eigen(&t).expect("tridiagonal matrix is symmetric");
    let y = eig.vectors.column(0);
    let mut x = vec![ZERO; n];
    for (b, &c) in basis.iter().zip(&y) {
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi += c * bi;
        }
    }
    let _ = normalize(&mut x);
    (eig.values[0], x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let mut h = g.clone();
        h.add_scaled(&g.adjoint(), ONE);
        h
    }

    #[test]
    fn jacobi_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [1, 2, 3, 9, 25] {
            let h = random_hermitian(n, &mut rng);
            let e = hermitian_eigen(&h).unwrap();
            assert!(e.vectors.unitarity_residual() < 1e-12);
            for k in 0..n {
                let v = e.vectors.column(k);
                let hv = h.mul_vec(&v);
                let r = norm(&hv.iter().zip(&v).map(|(a, b)| a - b * e.values[k]).collect::<Vec<_>>());
                assert!(r < 1e-10, "n={n} k={k} r={r}");
            }
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
            let tr: f64 = e.values.iter().sum();
            assert!((tr - h.trace().re).abs() < 1e-10);
        }
    }

    #[test]
    fn diagonal_and_identity() {
        let e = hermitian_eigen(&CMatrix::identity(4)).unwrap();
        assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        let d = CMatrix::from_fn(3, 3, |i, j| if i == j { Complex64::new([0.2, 0.9, 0.5][i], 0.0) } else { ZERO });
        let (v, x) = top_eigenpair(&d, None).unwrap();
        assert!((v - 0.9).abs() < 1e-12);
        assert!((x[1].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(hermitian_eigen(&m).is_err());
        assert!(top_eigenpair(&m, None).is_err());
    }

    #[test]
    fn lanczos_matches_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [4, 30, 81] {
            let h = random_hermitian(n, &mut rng);
            let e = hermitian_eigen(&h).unwrap();
            let (v, x) = top_eigenpair(&h, None).unwrap();
            assert!((v - e.values[0]).abs() < 1e-9, "n={n}");
            assert!((norm(&x) - 1.0).abs() < 1e-12);
        }
    }
}
