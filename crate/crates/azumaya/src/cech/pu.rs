//! PU(k)-valued 1-cochains on the nerve: verification of the projective
//! cocycle condition and extraction of the μ_k scalar defect.

use num_complex::Complex64 as C64;

use crate::exec;
use crate::matalg::{mu_k_exponent, su_normalize, Matrix, Unitary};
use crate::simplicial::{check_cocycle, Cochain, Ring, SimplicialComplex};
use crate::tol::ToleranceConfig;
use crate::{AzumayaError, Result};

/// PU(k)-valued Čech data: one SU-normalized unitary per edge `α<β` of
/// the nerve; `u_{βα}` is always computed as the inverse, never stored.
#[derive(Debug, Clone)]
pub struct PUCocycle {
    complex: SimplicialComplex,
    k: usize,
    edge_values: Vec<Unitary>,
}

impl PUCocycle {
    /// Build from per-edge unitaries in edge order. Values are
    /// SU-normalized on entry; the cocycle condition is NOT checked here
    /// (use [`verify_pu_cocycle`]).
    pub fn new(
        complex: SimplicialComplex,
        k: usize,
        edge_values: Vec<Unitary>,
    ) -> Result<Self> {
        if edge_values.len() != complex.count(1) {
            return Err(AzumayaError::InvalidInput(format!(
                "expected {} edge values, got {}",
                complex.count(1),
                edge_values.len()
            )));
        }
        if let Some(u) = edge_values.iter().find(|u| u.size() != k) {
            return Err(AzumayaError::DimensionMismatch(format!(
                "edge unitary of size {} in a PU({k}) cocycle",
                u.size()
            )));
        }
        Ok(PUCocycle {
            complex,
            k,
            edge_values: edge_values.iter().map(su_normalize).collect(),
        })
    }

    pub fn identity(complex: SimplicialComplex, k: usize) -> Self {
        let edges = complex.count(1);
        PUCocycle {
            complex,
            k,
            edge_values: vec![Unitary::identity(k); edges],
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_values(&self) -> &[Unitary] {
        &self.edge_values
    }

    /// `u_{αβ}` for an arbitrary ordered vertex pair.
    pub fn edge(&self, a: usize, b: usize) -> Result<Unitary> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let idx = self
            .complex
            .index_of(1, &[lo, hi])
            .ok_or_else(|| AzumayaError::InvalidInput(format!("no edge ({a},{b})")))?;
        let u = &self.edge_values[idx];
        Ok(if a < b { u.clone() } else { u.adjoint() })
    }

    /// Edgewise multiplication by a μ_k-valued 1-cochain `d`: the defect
    /// shifts by the exact coboundary `δd`.
    pub fn twist_by(&self, d: &Cochain) -> Result<PUCocycle> {
        if d.degree != 1 || d.ring != Ring::ModK(self.k as i64) {
            return Err(AzumayaError::CochainMismatch(
                "twist needs a μ_k-valued 1-cochain".into(),
            ));
        }
        let zeta = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / self.k as f64);
        let edge_values = self
            .edge_values
            .iter()
            .zip(&d.values)
            .map(|(u, &e)| u.scale_phase(zeta.powi(e as i32)))
            .collect();
        Ok(PUCocycle {
            complex: self.complex.clone(),
            k: self.k,
            edge_values,
        })
    }

    /// Conjugate the whole cocycle by a vertexwise family of unitaries:
    /// `u_{αβ} ↦ w_α u_{αβ} w_β^{-1}` (SU-normalized).
    pub fn conjugated_by(&self, w: &[Unitary]) -> Result<PUCocycle> {
        if w.len() != self.complex.count(0) {
            return Err(AzumayaError::InvalidInput(
                "need one unitary per vertex".into(),
            ));
        }
        let edge_values = self
            .complex
            .simplices(1)
            .iter()
            .zip(&self.edge_values)
            .map(|(e, u)| su_normalize(&w[e[0]].mul(u).mul(&w[e[1]].adjoint())))
            .collect();
        Ok(PUCocycle {
            complex: self.complex.clone(),
            k: self.k,
            edge_values,
        })
    }

    /// Exact cocycle `u_{αβ} = w_α w_β^{-1}` from vertexwise unitaries.
    pub fn exact_from_vertices(
        complex: SimplicialComplex,
        w: &[Unitary],
    ) -> Result<PUCocycle> {
        let k = w
            .first()
            .map(Unitary::size)
            .ok_or_else(|| AzumayaError::InvalidInput("no vertex unitaries".into()))?;
        PUCocycle::identity(complex, k).conjugated_by(w)
    }
}

/// PU(2) cocycle on the tetrahedron nerve built from quaternion units.
/// Its triangle defects form a nonconstant ±1 cochain whose class is
/// nevertheless zero: on four charts the edges at vertex 0 force the rest
/// up to scalars, so the defect exponent sum is always even. Useful as a
/// demo of "nonzero defect cochain, trivial class".
pub fn quaternion_tetrahedron() -> PUCocycle {
    let complex = crate::simplicial::datasets::tetrahedron_boundary();
    let i = C64::new(0.0, 1.0);
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let qi = Matrix::from_rows(&[vec![i, o], vec![o, -i]]).unwrap();
    let qj = Matrix::from_rows(&[vec![o, one], vec![-one, o]]).unwrap();
    let qk = Matrix::from_rows(&[vec![o, i], vec![i, o]]).unwrap();
    // edges in order: 01, 02, 03, 12, 13, 23
    let units = [
        qi.clone(),
        qj.clone(),
        qk.clone(),
        qk,
        qj.scale(-one),
        qi.scale(-one),
    ];
    let edges = units
        .iter()
        .map(|m| Unitary::new(m.clone(), 1e-12).expect("quaternion units are unitary"))
        .collect();
    PUCocycle::new(complex, 2, edges).expect("fixed valid data")
}

/// One triangle of the verification report.
#[derive(Debug, Clone)]
pub struct TriangleDefect {
    pub triangle: Vec<usize>,
    /// Scalar part of `u_{αβ}u_{βγ}u_{αγ}^{-1}`.
    pub lambda: C64,
    /// μ_k exponent of λ, when λ is a k-th root of unity within tolerance.
    pub exponent: Option<i64>,
    /// `‖d − λI‖_max` plus the distance of λ from μ_k.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct PUVerification {
    pub pass: bool,
    pub triangles: Vec<TriangleDefect>,
    pub worst_residual: f64,
    pub first_failure: Option<Vec<usize>>,
}

/// Check `u_{αβ}u_{βγ}u_{αγ}^{-1} = λI` with `λ ∈ μ_k` on every triangle.
pub fn verify_pu_cocycle(c: &PUCocycle, cfg: &ToleranceConfig) -> PUVerification {
    let tris = c.complex.simplices(2);
    let tol = cfg.loose_tol();
    let triangles = exec::map_indexed(tris.len(), |t| {
        let s = &tris[t];
        let ab = c.edge(s[0], s[1]).expect("face-closed");
        let bc = c.edge(s[1], s[2]).expect("face-closed");
        let ac = c.edge(s[0], s[2]).expect("face-closed");
        let d = ab.mul(&bc).mul(&ac.adjoint());
        let lambda = d.matrix().trace() / C64::new(c.k as f64, 0.0);
        let scalar_part = Matrix::identity(c.k).scale(lambda);
        let mut residual = d.matrix().sub(&scalar_part).max_abs();
        let exponent = match mu_k_exponent(lambda, c.k, tol) {
            Ok(e) => e,
            Err(_) => {
                residual += (lambda.norm() - 1.0).abs().max(tol * 2.0);
                -1
            }
        };
        TriangleDefect {
            triangle: s.clone(),
            lambda,
            exponent: (exponent >= 0).then_some(exponent),
            residual,
        }
    });
    let worst_residual = triangles
        .iter()
        .map(|t| t.residual)
        .fold(0.0f64, f64::max);
    let first_failure = triangles
        .iter()
        .find(|t| t.residual > tol || t.exponent.is_none())
        .map(|t| t.triangle.clone());
    PUVerification {
        pass: first_failure.is_none(),
        triangles,
        worst_residual,
        first_failure,
    }
}

/// μ_k exponents of the triangle defects as a mod-k 2-cochain; `δm = 0`
/// is checked exactly after rounding.
pub fn scalar_defect(c: &PUCocycle, cfg: &ToleranceConfig) -> Result<Cochain> {
    let report = verify_pu_cocycle(c, cfg);
    if !report.pass {
        return Err(AzumayaError::VerificationFailed(format!(
            "cocycle condition fails at triangle {:?} (residual {:.2e})",
            report.first_failure.unwrap_or_default(),
            report.worst_residual
        )));
    }
    let values = report
        .triangles
        .iter()
        .map(|t| t.exponent.expect("pass implies exponents"))
        .collect();
    let m = Cochain::new(&c.complex, 2, Ring::ModK(c.k as i64), values)?;
    check_cocycle(&c.complex, &m)?;
    Ok(m)
}

/// Edgewise Kronecker product; the result is a PU(km) cocycle on the
/// same complex.
pub fn tensor_cocycles(c1: &PUCocycle, c2: &PUCocycle) -> Result<PUCocycle> {
    if c1.complex != c2.complex {
        return Err(AzumayaError::InvalidInput(
            "tensor of cocycles on different complexes".into(),
        ));
    }
    let edge_values = c1
        .edge_values
        .iter()
        .zip(&c2.edge_values)
        .map(|(u, v)| su_normalize(&u.kron(v)))
        .collect();
    PUCocycle::new(c1.complex.clone(), c1.k * c2.k, edge_values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matalg::{haar_unitary, projective_distance};
    use crate::simplicial::{coboundary, datasets};
    use rand::{Rng, SeedableRng};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_cocycle_passes_with_unit_lambda() {
        let c = PUCocycle::identity(datasets::tetrahedron_boundary(), 3);
        let r = verify_pu_cocycle(&c, &cfg());
        assert!(r.pass);
        for t in &r.triangles {
            assert!((t.lambda - C64::new(1.0, 0.0)).norm() < 1e-12);
            assert_eq!(t.exponent, Some(0));
        }
        let m = scalar_defect(&c, &cfg()).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn exact_cocycle_passes_and_defect_is_a_cocycle() {
        let x = datasets::rp2_six();
        let w: Vec<Unitary> = (0..x.count(0))
            .map(|v| haar_unitary(2, 100 + v as u64))
            .collect();
        let c = PUCocycle::exact_from_vertices(x.clone(), &w).unwrap();
        let r = verify_pu_cocycle(&c, &cfg());
        assert!(r.pass, "worst residual {}", r.worst_residual);
        // defect is a μ_2 coboundary-free zero? not necessarily zero as a
        // cochain, but every exponent is a defect of su-normalization; the
        // cochain must still be a cocycle
        let m = scalar_defect(&c, &cfg()).unwrap();
        assert!(check_cocycle(&x, &m).is_ok());
    }

    #[test]
    fn perturbed_edge_fails_verification() {
        let x = datasets::tetrahedron_boundary();
        let mut edges = vec![Unitary::identity(2); x.count(1)];
        let (c, s) = (1e-2f64.cos(), 1e-2f64.sin());
        let rot = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) | (1, 1) => C64::new(c, 0.0),
            (0, 1) => C64::new(s, 0.0),
            _ => C64::new(-s, 0.0),
        });
        edges[0] = Unitary::new(rot, 1e-8).unwrap();
        let c = PUCocycle::new(x, 2, edges).unwrap();
        let r = verify_pu_cocycle(&c, &cfg());
        assert!(!r.pass);
        assert!(r.first_failure.is_some());
        assert!(scalar_defect(&c, &cfg()).is_err());
    }

    #[test]
    fn twist_shifts_defect_by_coboundary() {
        let x = datasets::tetrahedron_boundary();
        let k = 3i64;
        let w: Vec<Unitary> = (0..x.count(0))
            .map(|v| haar_unitary(3, 7 + v as u64))
            .collect();
        let c = PUCocycle::exact_from_vertices(x.clone(), &w).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let d = Cochain::new(
            &x,
            1,
            Ring::ModK(k),
            (0..x.count(1)).map(|_| rng.gen_range(0..k)).collect(),
        )
        .unwrap();
        let m0 = scalar_defect(&c, &cfg()).unwrap();
        let m1 = scalar_defect(&c.twist_by(&d).unwrap(), &cfg()).unwrap();
        let expect = m0.add(&coboundary(&x, &d)).unwrap();
        assert_eq!(m1, expect);
    }

    #[test]
    fn conjugation_preserves_defect_class() {
        let x = datasets::tetrahedron_boundary();
        let w: Vec<Unitary> = (0..x.count(0))
            .map(|v| haar_unitary(2, 40 + v as u64))
            .collect();
        let c = PUCocycle::exact_from_vertices(x.clone(), &w).unwrap();
        let g: Vec<Unitary> = (0..x.count(0))
            .map(|v| haar_unitary(2, 90 + v as u64))
            .collect();
        let c2 = c.conjugated_by(&g).unwrap();
        let m0 = scalar_defect(&c, &cfg()).unwrap();
        let m1 = scalar_defect(&c2, &cfg()).unwrap();
        let h2 = crate::simplicial::cohomology(&x, 2, Ring::ModK(2));
        assert_eq!(
            h2.class_of(&x, &m0).unwrap(),
            h2.class_of(&x, &m1).unwrap()
        );
    }

    #[test]
    fn reversed_edge_is_inverse() {
        let x = datasets::tetrahedron_boundary();
        let w: Vec<Unitary> = (0..4).map(|v| haar_unitary(2, v as u64)).collect();
        let c = PUCocycle::exact_from_vertices(x, &w).unwrap();
        let u = c.edge(0, 1).unwrap();
        let v = c.edge(1, 0).unwrap();
        assert!(projective_distance(&u.adjoint(), &v) < 1e-12);
    }

    #[test]
    fn tensor_with_identity_keeps_triangle_exponents_scaled() {
        let x = datasets::tetrahedron_boundary();
        let w: Vec<Unitary> = (0..4).map(|v| haar_unitary(2, 60 + v as u64)).collect();
        let c = PUCocycle::exact_from_vertices(x.clone(), &w).unwrap();
        let id3 = PUCocycle::identity(x.clone(), 3);
        let t = tensor_cocycles(&c, &id3).unwrap();
        assert_eq!(t.k(), 6);
        let m = scalar_defect(&c, &cfg()).unwrap();
        let mt = scalar_defect(&t, &cfg()).unwrap();
        // μ_2 → μ_6 inclusion multiplies exponents by 3
        for (a, b) in m.values.iter().zip(&mt.values) {
            assert_eq!((a * 3).rem_euclid(6), *b);
        }
    }
}
