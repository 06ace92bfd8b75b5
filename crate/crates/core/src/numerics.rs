//! Dense complex matrices and the Hermitian linear algebra the bounds need.
//!
//! Everything here is small and dense (dimensions up to a few hundred at
//! most). The Hermitian eigensolver is a cyclic complex Jacobi iteration,
//! which is accurate to a few ulps on the matrices this crate produces and
//! keeps a single decomposition path under test: the square root, inverse
//! square root and spectral norm all go through [`eigh`].

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::tolerance;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
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

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|u⟩⟨v|`
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    /// `|u⟩⟨u|`
    pub fn projector(u: &[Complex64]) -> Self {
        Self::outer(u, u)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let other_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// `max |a_ij - conj(a_ji)|`; infinite for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A†) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Copy of the `nrows × ncols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Self {
        Self::from_fn(nrows, ncols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// `⟨u|A|u⟩`
    pub fn expectation(&self, u: &[Complex64]) -> Complex64 {
        inner(u, &self.mul_vec(u))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

/// `⟨u|v⟩`, conjugate-linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm2(u: &[Complex64]) -> f64 {
    math::sqrt(u.iter().map(|z| z.norm_sqr()).sum())
}

/// Sum of a nonempty list of equally shaped matrices.
pub fn sum(ops: &[Matrix]) -> Matrix {
    let mut acc = Matrix::zeros(ops[0].rows, ops[0].cols);
    for op in ops {
        for (a, b) in acc.data.iter_mut().zip(&op.data) {
            *a += b;
        }
    }
    acc
}

/// Spectral decomposition `A = U diag(λ) U†` of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    /// `U diag(f(λ)) U†`
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &w) in weights.iter().enumerate() {
                    if w != 0.0 {
                        acc += u[(i, k)] * u[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.apply(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

const MAX_SWEEPS: usize = 100;

/// Hermitian eigendecomposition with ascending eigenvalues.
pub fn eigh(a: &Matrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows, cols: a.cols });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let asymmetry = a.hermitian_residual();
    if asymmetry > tolerance::HERMITIAN {
        return Err(Error::NotHermitian { asymmetry });
    }
    Ok(jacobi(a.hermitian_part()))
}

fn jacobi(mut a: Matrix) -> EigenDecomposition {
    let n = a.rows;
    let mut v = Matrix::identity(n);
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }

    let frob: f64 = a.data.iter().map(|z| z.norm_sqr()).sum();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off <= 1e-32 * frob || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    EigenDecomposition { eigenvalues, eigenvectors }
}

/// One Jacobi rotation zeroing `a[p][q]`. The phase of `a[p][q]` is removed
/// first, which reduces the 2×2 pivot block to the real symmetric case.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if r < 1e-300 || r <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + math::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / math::sqrt(1.0 + t * t);
    let s = t * c;

    // G acts on columns p, q: G = diag(1, conj(phase)) · [[c, s], [-s, c]].
    let g00 = Complex64::new(c, 0.0);
    let g01 = Complex64::new(s, 0.0);
    let g10 = -phase.conj() * s;
    let g11 = phase.conj() * c;

    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g00 + akq * g10;
        a[(k, q)] = akp * g01 + akq * g11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
        a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g00 + vkq * g10;
        v[(k, q)] = vkp * g01 + vkq * g11;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// `[-1e-10, 0)` are clipped to zero.
pub fn matrix_sqrt(a: &Matrix) -> Result<Matrix> {
    let eig = eigh(a)?;
    let min_eigenvalue = eig.min_eigenvalue();
    if min_eigenvalue < -tolerance::PSD_CLIP {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(eig.apply(|l| math::sqrt(l.max(0.0))))
}

/// `A^{-1/2}` for a positive definite matrix.
pub fn matrix_inv_sqrt(a: &Matrix) -> Result<Matrix> {
    let eig = eigh(a)?;
    let min_eigenvalue = eig.min_eigenvalue();
    if min_eigenvalue <= 1e-12 * eig.max_eigenvalue().max(1.0) {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(eig.apply(|l| 1.0 / math::sqrt(l)))
}

/// Largest singular value, as the square root of the top eigenvalue of `A†A`.
pub fn spectral_norm(a: &Matrix) -> f64 {
    let gram = a.adjoint().matmul(a);
    // A†A is Hermitian to the last bit, so this cannot fail on finite input.
    match eigh(&gram) {
        Ok(eig) => math::sqrt(eig.max_eigenvalue().max(0.0)),
        Err(_) => f64::NAN,
    }
}

/// Extends a matrix with orthonormal columns to a square unitary whose
/// leading columns are the input, bit for bit.
///
/// New columns come from the standard basis: each `e_k` is orthogonalized
/// (twice) against the columns collected so far and kept if the residual norm
/// is at least `1e-8`.
pub fn complete_isometry(w: &Matrix) -> Result<Matrix> {
    let (n, k) = (w.rows, w.cols);
    if n < k {
        return Err(Error::NotIsometry { residual: f64::INFINITY });
    }
    let residual = w.adjoint().matmul(w).max_abs_diff(&Matrix::identity(k));
    if !(residual <= tolerance::ISOMETRY) {
        return Err(Error::NotIsometry { residual });
    }

    let mut columns: Vec<Vec<Complex64>> = (0..k).map(|j| w.column(j)).collect();
    for e in 0..n {
        if columns.len() == n {
            break;
        }
        let mut r = vec![ZERO; n];
        r[e] = ONE;
        for _ in 0..2 {
            for c in &columns {
                let proj = inner(c, &r);
                for (ri, ci) in r.iter_mut().zip(c) {
                    *ri -= proj * ci;
                }
            }
        }
        let norm = norm2(&r);
        if norm >= tolerance::COMPLETION_DROP {
            for ri in r.iter_mut() {
                *ri /= norm;
            }
            columns.push(r);
        }
    }
    if columns.len() != n {
        return Err(Error::NotIsometry { residual });
    }

    let mut u = Matrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    for j in 0..k {
        for i in 0..n {
            u[(i, j)] = w[(i, j)];
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        random_matrix(rng, n, n).hermitian_part()
    }

    fn unitary_residual(u: &Matrix) -> f64 {
        u.adjoint().matmul(u).max_abs_diff(&Matrix::identity(u.cols()))
    }

    fn hadamard() -> Matrix {
        Matrix::from_real(2, 2, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap()
    }

    #[test]
    fn eigh_identity() {
        let eig = eigh(&Matrix::identity(2)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0]);
        assert!(unitary_residual(&eig.eigenvectors) < 1e-12);
    }

    #[test]
    fn eigh_diagonal_sorted() {
        let eig = eigh(&Matrix::diagonal(&[3.0, -1.0])).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 3.0]);
    }

    #[test]
    fn eigh_pauli_x() {
        let x = Matrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let eig = eigh(&x).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        // (1, -1)/√2 and (1, 1)/√2 up to phase
        let minus = [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)];
        let plus = [c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)];
        assert!((inner(&minus, &eig.eigenvectors.column(0)).norm() - 1.0).abs() < 1e-12);
        assert!((inner(&plus, &eig.eigenvectors.column(1)).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_rejects_bad_input() {
        let rect = Matrix::zeros(2, 3);
        assert!(matches!(eigh(&rect), Err(Error::NonSquare { rows: 2, cols: 3 })));
        let skew = Matrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(eigh(&skew), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=12 {
            for _ in 0..10 {
                let a = random_hermitian(&mut rng, n);
                let eig = eigh(&a).unwrap();
                assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-9);
                assert!(unitary_residual(&eig.eigenvectors) <= 1e-10);
                assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
                for k in 0..n {
                    let u = eig.eigenvectors.column(k);
                    let au = a.mul_vec(&u);
                    let err = au
                        .iter()
                        .zip(&u)
                        .map(|(x, y)| (x - y * eig.eigenvalues[k]).norm())
                        .fold(0.0, f64::max);
                    assert!(err <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn eigh_handles_degenerate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_unitary_via_completion(&mut rng, 6);
        let a = q.matmul(&Matrix::diagonal(&[1.0, 1.0, 1.0, 0.0, 0.0, 2.0])).matmul(&q.adjoint());
        let eig = eigh(&a.hermitian_part()).unwrap();
        assert!(eig.reconstruct().max_abs_diff(&a) <= 1e-9);
        let expected = [0.0, 0.0, 1.0, 1.0, 1.0, 2.0];
        for (l, e) in eig.eigenvalues.iter().zip(expected) {
            assert!((l - e).abs() <= 1e-12);
        }
    }

    fn random_unitary_via_completion(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
        // Gram–Schmidt of a random matrix.
        let g = random_matrix(rng, n, n);
        let mut cols: Vec<Vec<Complex64>> = Vec::new();
        for j in 0..n {
            let mut v = g.column(j);
            for _ in 0..2 {
                for c in &cols {
                    let p = inner(c, &v);
                    for (vi, ci) in v.iter_mut().zip(c) {
                        *vi -= p * ci;
                    }
                }
            }
            let nv = norm2(&v);
            v.iter_mut().for_each(|x| *x /= nv);
            cols.push(v);
        }
        let u = Matrix::from_fn(n, n, |i, j| cols[j][i]);
        assert!(unitary_residual(&u) < 1e-12);
        u
    }

    #[test]
    fn sqrt_examples() {
        assert!(matrix_sqrt(&Matrix::identity(3)).unwrap().max_abs_diff(&Matrix::identity(3)) < 1e-15);
        let s = matrix_sqrt(&Matrix::diagonal(&[4.0, 9.0])).unwrap();
        assert!(s.max_abs_diff(&Matrix::diagonal(&[2.0, 3.0])) < 1e-14);

        // (1/2)[[1,1],[1,1]] is the |+⟩ projector, so its root is itself.
        let p = Matrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        assert!(matrix_sqrt(&p).unwrap().max_abs_diff(&p) < 1e-14);
        // sqrt(c·P) = √c·P
        let half_p = p.scale(0.5);
        assert!(matrix_sqrt(&half_p).unwrap().max_abs_diff(&p.scale(FRAC_1_SQRT_2)) < 1e-14);
    }

    #[test]
    fn sqrt_clips_tiny_negative_and_rejects_negative() {
        let tiny = Matrix::diagonal(&[1.0, -5e-11]);
        let s = matrix_sqrt(&tiny).unwrap();
        assert_eq!(s[(1, 1)], ZERO);
        let neg = Matrix::diagonal(&[1.0, -1e-6]);
        assert!(matches!(matrix_sqrt(&neg), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn sqrt_of_random_gram() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=8 {
            let g = random_matrix(&mut rng, n, n);
            let a = g.adjoint().matmul(&g);
            let s = matrix_sqrt(&a).unwrap();
            assert!(s.matmul(&s).max_abs_diff(&a) <= 1e-8);
            assert!(s.hermitian_residual() <= 1e-12);
            assert!(eigh(&s).unwrap().min_eigenvalue() >= -1e-10);
        }
    }

    #[test]
    fn inverse_sqrt() {
        let a = Matrix::diagonal(&[4.0, 0.25]);
        assert!(matrix_inv_sqrt(&a).unwrap().max_abs_diff(&Matrix::diagonal(&[0.5, 2.0])) < 1e-14);
        assert!(matrix_inv_sqrt(&Matrix::diagonal(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(spectral_norm(&Matrix::zeros(3, 3)), 0.0);
        assert!((spectral_norm(&hadamard()) - 1.0).abs() < 1e-14);

        let zero = Matrix::projector(&[ONE, ZERO]);
        let plus = Matrix::projector(&[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
        let n = spectral_norm(&zero.matmul(&plus));
        assert!((n - FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn spectral_norm_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=6 {
            let a = random_matrix(&mut rng, n, n);
            let u = random_unitary_via_completion(&mut rng, n);
            let v = random_unitary_via_completion(&mut rng, n);
            let s = spectral_norm(&a);
            assert!((s - spectral_norm(&a.adjoint())).abs() <= 1e-9);
            assert!((s - spectral_norm(&u.matmul(&a).matmul(&v))).abs() <= 1e-9);
            // Frobenius and max-entry sandwich.
            let frob = math::sqrt(a.as_slice().iter().map(|z| z.norm_sqr()).sum());
            assert!(s <= frob + 1e-12 && s + 1e-12 >= a.max_abs());
        }
    }

    #[test]
    fn spectral_norm_of_rectangular() {
        // [1 1] has norm √2.
        let a = Matrix::from_real(1, 2, &[1.0, 1.0]).unwrap();
        assert!((spectral_norm(&a) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn complete_identity_is_identity() {
        assert_eq!(complete_isometry(&Matrix::identity(4)).unwrap(), Matrix::identity(4));
    }

    #[test]
    fn complete_single_column() {
        let w = Matrix::from_real(2, 1, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let u = complete_isometry(&w).unwrap();
        assert!(unitary_residual(&u) < 1e-12);
        let expected = [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)];
        assert!((inner(&expected, &u.column(1)).norm() - 1.0).abs() < 1e-12);
        assert_eq!(u[(0, 0)], w[(0, 0)]);
        assert_eq!(u[(1, 0)], w[(1, 0)]);
    }

    #[test]
    fn complete_random_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=8 {
            for k in 1..=n {
                let q = random_unitary_via_completion(&mut rng, n);
                let w = q.block(0, 0, n, k);
                let u = complete_isometry(&w).unwrap();
                assert!(unitary_residual(&u) <= 1e-9);
                assert_eq!(u.block(0, 0, n, k), w);
            }
        }
    }

    #[test]
    fn complete_rejects_non_isometry() {
        let w = Matrix::from_real(2, 1, &[1.0, 1.0]).unwrap();
        assert!(matches!(complete_isometry(&w), Err(Error::NotIsometry { .. })));
        let wide = Matrix::zeros(1, 2);
        assert!(complete_isometry(&wide).is_err());
    }

    #[test]
    fn from_vec_rejects_nan() {
        assert_eq!(Matrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]), Err(Error::NonFinite));
        assert!(Matrix::from_vec(1, 2, vec![ONE]).is_err());
    }
}
