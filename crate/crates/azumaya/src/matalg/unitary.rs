use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::{orthonormal_columns, Matrix};
use crate::{AzumayaError, Result, ToleranceConfig};

/// A square matrix checked to be unitary at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    mat: Matrix,
}

impl Unitary {
    pub fn new(mat: Matrix, tol: f64) -> Result<Self> {
        if !mat.is_square() {
            return Err(AzumayaError::DimensionMismatch(
                "unitary matrix must be square".into(),
            ));
        }
        if !mat.is_unitary(tol) {
            let res = mat
                .mul(&mat.adjoint())
                .sub(&Matrix::identity(mat.rows()))
                .max_abs();
            return Err(AzumayaError::Degenerate(format!(
                "matrix is not unitary (residual {res:.3e})"
            )));
        }
        Ok(Unitary { mat })
    }

    pub fn identity(n: usize) -> Self {
        Unitary {
            mat: Matrix::identity(n),
        }
    }

    /// Wrap without checking; caller guarantees unitarity.
    pub(crate) fn from_unchecked(mat: Matrix) -> Self {
        debug_assert!(mat.is_unitary(1e-8));
        Unitary { mat }
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary {
            mat: self.mat.adjoint(),
        }
    }

    pub fn mul(&self, other: &Unitary) -> Unitary {
        Unitary {
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn kron(&self, other: &Unitary) -> Unitary {
        Unitary {
            mat: self.mat.kron(&other.mat),
        }
    }

    pub fn scale_phase(&self, phase: C64) -> Unitary {
        debug_assert!((phase.norm() - 1.0).abs() < 1e-12);
        Unitary {
            mat: self.mat.scale(phase),
        }
    }

    /// Conjugation `u · m · u*`.
    pub fn conjugate(&self, m: &Matrix) -> Matrix {
        self.mat.mul(m).mul(&self.mat.adjoint())
    }
}

/// Rescale `u` to determinant one using the principal branch of the k-th
/// root. The remaining μ_k ambiguity is intentional: it is exactly the
/// scalar data carried by downstream cocycles.
pub fn su_normalize(u: &Unitary) -> Unitary {
    let k = u.size() as f64;
    let det = u.matrix().det();
    // det lies on the unit circle; principal branch of det^{-1/k}
    let theta = det.arg();
    let factor = C64::from_polar(1.0, -theta / k);
    u.scale_phase(factor)
}

/// Projective comparison: are `u` and `v` equal up to a global phase?
/// Returns the verdict, the optimal phase and the residual at that phase.
pub fn projective_equal(u: &Unitary, v: &Unitary, cfg: &ToleranceConfig) -> (bool, C64, f64) {
    assert_eq!(u.size(), v.size(), "projective comparison needs equal sizes");
    let t = v.adjoint().mul(u).matrix().trace();
    let phase = if t.norm() < 1e-14 {
        C64::new(1.0, 0.0)
    } else {
        t / t.norm()
    };
    let residual = u.matrix().sub(&v.matrix().scale(phase)).max_abs();
    (residual <= cfg.abs_tol, phase, residual)
}

/// Projective distance in operator norm: `min_θ ‖u − e^{iθ}v‖_op`.
pub fn projective_distance(u: &Unitary, v: &Unitary) -> f64 {
    let t = v.adjoint().mul(u).matrix().trace();
    let phase = if t.norm() < 1e-14 {
        C64::new(1.0, 0.0)
    } else {
        t / t.norm()
    };
    u.matrix().sub(&v.matrix().scale(phase)).operator_norm()
}

/// Haar-random unitary of size `n`, deterministic per seed. QR of a complex
/// Gaussian matrix with the column-phase fix that makes the distribution
/// exactly Haar.
pub fn haar_unitary(n: usize, seed: u64) -> Unitary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_with(n, &mut rng)
}

pub fn haar_unitary_with(n: usize, rng: &mut ChaCha8Rng) -> Unitary {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        });
        let cols = orthonormal_columns(&g, 1e-8);
        if cols.len() < n {
            continue; // measure-zero degeneracy, resample
        }
        let mut q = Matrix::zeros(n, n);
        for (j, col) in cols.iter().enumerate() {
            // phase fix: make the diagonal of R real positive
            let r: C64 = col.iter().zip(0..n).map(|(&x, i)| x.conj() * g[(i, j)]).sum();
            let phase = if r.norm() < 1e-300 {
                C64::new(1.0, 0.0)
            } else {
                r / r.norm()
            };
            for i in 0..n {
                q[(i, j)] = col[i] * phase;
            }
        }
        return Unitary::from_unchecked(q);
    }
}

/// The μ_k exponent of a unit scalar: nearest `m` with `λ ≈ e^{2πim/k}`.
/// Fails when `λ` is not within `tol` of any k-th root of unity.
pub fn mu_k_exponent(lambda: C64, k: usize, tol: f64) -> Result<i64> {
    if (lambda.norm() - 1.0).abs() > tol {
        return Err(AzumayaError::Degenerate(format!(
            "scalar {lambda} is not on the unit circle"
        )));
    }
    let kf = k as f64;
    let m = (lambda.arg() * kf / std::f64::consts::TAU).round();
    let nearest = C64::from_polar(1.0, std::f64::consts::TAU * m / kf);
    if (lambda - nearest).norm() > tol {
        return Err(AzumayaError::Degenerate(format!(
            "scalar {lambda} is not a μ_{k} root of unity"
        )));
    }
    Ok((m as i64).rem_euclid(k as i64))
}
