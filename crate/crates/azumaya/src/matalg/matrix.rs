use num_complex::Complex64;
use std::ops::{Index, IndexMut};

use crate::{AzumayaError, Result};

pub type C64 = Complex64;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(AzumayaError::DimensionMismatch("empty matrix".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AzumayaError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
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

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "inner dimensions must agree: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.rows, other.cols);
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

    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    /// Kronecker product, block convention
    /// `(a⊗b)[(i·rows_b+p),(j·cols_b+q)] = a[i,j]·b[p,q]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (rb, cb) = (other.rows, other.cols);
        Matrix::from_fn(self.rows * rb, self.cols * cb, |r, c| {
            self[(r / rb, c / cb)] * other[(r % rb, c % cb)]
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute value.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Entrywise equality within an absolute tolerance.
    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.sub(other).max_abs() <= tol
    }

    /// Operator (spectral) norm via the Gram matrix eigenvalues.
    pub fn operator_norm(&self) -> f64 {
        let g = self.adjoint().mul(self);
        let (evals, _) = hermitian_eig(&g);
        evals.iter().fold(0.0f64, |m, &l| m.max(l.max(0.0))).sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.mul(&self.adjoint()).approx_eq(&Matrix::identity(self.rows), tol)
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> C64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let (piv, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pmax == 0.0 {
                return C64::new(0.0, 0.0);
            }
            if piv != k {
                for j in 0..n {
                    let t = a[(k, j)];
                    a[(k, j)] = a[(piv, j)];
                    a[(piv, j)] = t;
                }
                det = -det;
            }
            det *= a[(k, k)];
            for i in k + 1..n {
                let f = a[(i, k)] / a[(k, k)];
                for j in k..n {
                    let s = a[(k, j)];
                    a[(i, j)] -= f * s;
                }
            }
        }
        det
    }

    /// Inverse via Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        let scale = self.max_abs().max(1.0);
        for k in 0..n {
            let (piv, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pmax < 1e-14 * scale {
                return Err(AzumayaError::Degenerate(
                    "matrix is numerically singular".into(),
                ));
            }
            if piv != k {
                for j in 0..n {
                    a.data.swap(k * n + j, piv * n + j);
                    inv.data.swap(k * n + j, piv * n + j);
                }
            }
            let p = a[(k, k)];
            for j in 0..n {
                a[(k, j)] /= p;
                inv[(k, j)] /= p;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let (s, t) = (a[(k, j)], inv[(k, j)]);
                    a[(i, j)] -= f * s;
                    inv[(i, j)] -= f * t;
                }
            }
        }
        Ok(inv)
    }

    /// Unitary factor of the polar decomposition `A = U·P`, by Newton
    /// iteration `X ← (X + X^{-*})/2`. Requires `A` invertible.
    pub fn polar_unitary(&self) -> Result<Matrix> {
        assert!(self.is_square());
        let mut x = self.clone();
        for _ in 0..100 {
            let y = x.adjoint().inverse()?;
            let next = x.add(&y).scale(C64::new(0.5, 0.0));
            let delta = next.sub(&x).max_abs();
            x = next;
            if delta < 1e-14 {
                if !x.is_unitary(1e-10) {
                    return Err(AzumayaError::Degenerate(
                        "polar iteration converged to a non-unitary factor".into(),
                    ));
                }
                return Ok(x);
            }
        }
        Err(AzumayaError::Degenerate(
            "polar iteration did not converge".into(),
        ))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns `(eigenvalues, V)` with `A ≈ V·diag(λ)·V*`;
/// eigenvalues are not sorted.
pub fn hermitian_eig(a: &Matrix) -> (Vec<f64>, Matrix) {
    assert!(a.is_square());
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let scale = m.max_abs().max(1.0);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off < 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = m[(p, q)];
                let babs = beta.norm();
                if babs < 1e-18 * scale {
                    continue;
                }
                let u = beta / babs;
                let alpha = m[(p, p)].re;
                let gamma = m[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * babs);
                // stable form of the small root of t² - 2τt - 1 = 0
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (tau * tau + 1.0).sqrt())
                } else {
                    1.0 / ((tau * tau + 1.0).sqrt() - tau)
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J acts on columns p,q: col_p ← c·col_p + s·ū·col_q,
                //                        col_q ← -s·u·col_p + c·col_q.
                let (cs, su) = (C64::new(c, 0.0), u * s);
                for i in 0..n {
                    let (mp, mq) = (m[(i, p)], m[(i, q)]);
                    m[(i, p)] = cs * mp + su.conj() * mq;
                    m[(i, q)] = -su * mp + cs * mq;
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = cs * vp + su.conj() * vq;
                    v[(i, q)] = -su * vp + cs * vq;
                }
                for j in 0..n {
                    let (mp, mq) = (m[(p, j)], m[(q, j)]);
                    m[(p, j)] = cs * mp + su * mq;
                    m[(q, j)] = -su.conj() * mp + cs * mq;
                }
            }
        }
    }
    let evals = (0..n).map(|i| m[(i, i)].re).collect();
    (evals, v)
}

/// Singular values of a rectangular matrix (descending order), via the
/// eigenvalues of the smaller Gram matrix.
pub fn singular_values(a: &Matrix) -> Vec<f64> {
    let g = if a.rows >= a.cols {
        a.adjoint().mul(a)
    } else {
        a.mul(&a.adjoint())
    };
    let (mut evals, _) = hermitian_eig(&g);
    evals.sort_by(|x, y| y.total_cmp(x));
    evals.iter().map(|&l| l.max(0.0).sqrt()).collect()
}

/// Number of singular values above `cutoff`.
pub fn rank_with_cutoff(a: &Matrix, cutoff: f64) -> usize {
    singular_values(a).iter().filter(|&&s| s > cutoff).count()
}

/// Orthonormal basis for the null space `{x : Ax = 0}` with singular-value
/// cutoff; vectors are returned as columns of the result (or `None` when
/// the null space is trivial).
pub fn null_space(a: &Matrix, cutoff: f64) -> Option<Matrix> {
    let g = a.adjoint().mul(a);
    let (evals, v) = hermitian_eig(&g);
    let idx: Vec<usize> = (0..evals.len())
        .filter(|&i| evals[i].max(0.0).sqrt() <= cutoff)
        .collect();
    if idx.is_empty() {
        return None;
    }
    Some(Matrix::from_fn(a.cols, idx.len(), |i, j| v[(i, idx[j])]))
}

/// Orthonormalize the columns of `a` by modified Gram-Schmidt with
/// re-orthogonalization, dropping columns whose residual norm falls below
/// `cutoff`. Returns the kept orthonormal vectors.
pub fn orthonormal_columns(a: &Matrix, cutoff: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for j in 0..a.cols {
        let mut v: Vec<C64> = (0..a.rows).map(|i| a[(i, j)]).collect();
        for _ in 0..2 {
            for b in &basis {
                let ip: C64 = b.iter().zip(&v).map(|(&bi, &vi)| bi.conj() * vi).sum();
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi -= ip * bi;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > cutoff {
            for x in &mut v {
                *x /= norm;
            }
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identity_case() {
        let i2 = Matrix::identity(2);
        let i3 = Matrix::identity(3);
        assert!(i2.kron(&i3).approx_eq(&Matrix::identity(6), 0.0));
    }

    #[test]
    fn kron_diagonal_case() {
        let d = Matrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let expect = Matrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]);
        assert!(d.kron(&Matrix::identity(2)).approx_eq(&expect, 0.0));
    }

    #[test]
    fn kron_frobenius_multiplicative() {
        // oracle: direct entrywise computation of both norms
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut random = |rows, cols| {
            Matrix::from_fn(rows, cols, |_, _| {
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            })
        };
        let a = random(3, 3);
        let b = random(3, 3);
        let lhs = a.kron(&b).frobenius_norm();
        let rhs = a.frobenius_norm() * b.frobenius_norm();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn det_and_inverse() {
        let a = Matrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        // det = 2*3 - (1+i)(-i) = 6 - (-i + 1) = 5 + i
        let d = a.det();
        assert!((d - c(5.0, 1.0)).norm() < 1e-12);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).approx_eq(&Matrix::identity(2), 1e-12));
    }

    #[test]
    fn polar_of_scaled_unitary() {
        let u = Matrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(-1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let s = u.scale(c(3.0, 0.0));
        let p = s.polar_unitary().unwrap();
        assert!(p.approx_eq(&u, 1e-12));
    }

    #[test]
    fn polar_rejects_singular() {
        let z = Matrix::zeros(2, 2);
        assert!(z.polar_unitary().is_err());
    }

    #[test]
    fn jacobi_recovers_spectrum() {
        let a = Matrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.5, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
        ])
        .unwrap();
        let (evals, v) = hermitian_eig(&a);
        assert!(v.is_unitary(1e-12));
        let recon = v
            .mul(&Matrix::diag(
                &evals.iter().map(|&l| c(l, 0.0)).collect::<Vec<_>>(),
            ))
            .mul(&v.adjoint());
        assert!(recon.approx_eq(&a, 1e-10));
        let tr: f64 = evals.iter().sum();
        assert!((tr - 2.0).abs() < 1e-10);
    }

    #[test]
    fn null_space_of_projection() {
        // P = diag(1,1,0): null space is the last coordinate axis
        let p = Matrix::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let ns = null_space(&p, 1e-6).unwrap();
        assert_eq!(ns.cols(), 1);
        assert!((ns[(2, 0)].norm() - 1.0).abs() < 1e-12);
        assert_eq!(rank_with_cutoff(&p, 1e-6), 2);
    }

    #[test]
    fn operator_norm_diag() {
        let d = Matrix::diag(&[c(3.0, 0.0), c(-4.0, 0.0)]);
        assert!((d.operator_norm() - 4.0).abs() < 1e-10);
    }
}
