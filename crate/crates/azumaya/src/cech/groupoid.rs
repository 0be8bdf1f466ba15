//! Cocycles valued in the groupoid of k-subalgebras: vertices carry
//! subalgebras of a common ambient M_n, edges carry algebra isomorphisms.
//! Conversion to and from PU(k) data and natural transformations between
//! cocycles.

use crate::cech::pu::PUCocycle;
use crate::exec;
use crate::matalg::{
    decompose_hom, su_normalize, verify_star_hom, AlgebraIso, KSubalgebra, Matrix, StarHom,
    Unitary, C64,
};
use crate::simplicial::SimplicialComplex;
use crate::tol::ToleranceConfig;
use crate::{AzumayaError, Result};

fn matrix_unit(k: usize, i: usize, j: usize) -> Matrix {
    Matrix::from_fn(k, k, |p, q| {
        if p == i && q == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Groupoid-valued Čech data: per vertex a k-subalgebra of M_n, per edge
/// `α<β` an isomorphism A_α → A_β. Edges compose diagrammatically:
/// the cocycle condition reads `φ_{βγ}∘φ_{αβ} = φ_{αγ}`.
#[derive(Debug, Clone)]
pub struct GroupoidCocycle {
    complex: SimplicialComplex,
    k: usize,
    vertex_values: Vec<KSubalgebra>,
    edge_values: Vec<AlgebraIso>,
}

impl GroupoidCocycle {
    pub fn new(
        complex: SimplicialComplex,
        k: usize,
        vertex_values: Vec<KSubalgebra>,
        edge_values: Vec<AlgebraIso>,
    ) -> Result<Self> {
        if vertex_values.len() != complex.count(0) || edge_values.len() != complex.count(1) {
            return Err(AzumayaError::InvalidInput(
                "vertex/edge data must match the complex".into(),
            ));
        }
        let n = vertex_values
            .first()
            .map(KSubalgebra::ambient_size)
            .unwrap_or(k);
        for a in &vertex_values {
            if a.k() != k || a.ambient_size() != n {
                return Err(AzumayaError::DimensionMismatch(format!(
                    "vertex object in M_{} with k = {}, expected M_{n} with k = {k}",
                    a.ambient_size(),
                    a.k()
                )));
            }
        }
        Ok(GroupoidCocycle {
            complex,
            k,
            vertex_values,
            edge_values,
        })
    }

    /// Constant cocycle at a single subalgebra with identity edges.
    pub fn constant(complex: SimplicialComplex, algebra: KSubalgebra) -> Self {
        let edges = complex.count(1);
        let vertices = complex.count(0);
        let id = AlgebraIso::identity_on(algebra.generator());
        GroupoidCocycle {
            complex,
            k: algebra.k(),
            vertex_values: vec![algebra; vertices],
            edge_values: vec![id; edges],
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ambient_size(&self) -> usize {
        self.vertex_values[0].ambient_size()
    }

    pub fn multiplicity(&self) -> usize {
        self.vertex_values[0].multiplicity()
    }

    pub fn vertex(&self, a: usize) -> &KSubalgebra {
        &self.vertex_values[a]
    }

    pub fn edge_values(&self) -> &[AlgebraIso] {
        &self.edge_values
    }

    /// `φ_{αβ}` for an arbitrary ordered pair (the reverse edge is the
    /// inverse isomorphism).
    pub fn edge(&self, a: usize, b: usize) -> Result<AlgebraIso> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let idx = self
            .complex
            .index_of(1, &[lo, hi])
            .ok_or_else(|| AzumayaError::InvalidInput(format!("no edge ({a},{b})")))?;
        let e = &self.edge_values[idx];
        Ok(if a < b {
            e.clone()
        } else {
            AlgebraIso {
                source: e.target.clone(),
                target: e.source.clone(),
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct GroupoidReport {
    pub pass: bool,
    pub worst_residual: f64,
    /// Human-readable locations of endpoint or triangle failures.
    pub failures: Vec<String>,
}

/// Check per-edge endpoint compatibility and the triangle identity
/// `φ_{βγ}∘φ_{αβ} = φ_{αγ}` on the source vertex's matrix units.
pub fn verify_groupoid_cocycle(c: &GroupoidCocycle, cfg: &ToleranceConfig) -> GroupoidReport {
    let tol = cfg.loose_tol();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;

    for (idx, e) in c.complex.simplices(1).iter().enumerate() {
        let iso = &c.edge_values[idx];
        let src_ok = KSubalgebra::new(iso.source.clone()).same_image(&c.vertex_values[e[0]], cfg);
        let tgt_ok = KSubalgebra::new(iso.target.clone()).same_image(&c.vertex_values[e[1]], cfg);
        if !src_ok || !tgt_ok {
            failures.push(format!("edge {e:?}: endpoint mismatch"));
        }
    }

    let tris = c.complex.simplices(2);
    let residuals = exec::map_indexed(tris.len(), |t| {
        let s = &tris[t];
        let ab = c.edge(s[0], s[1]).expect("face-closed");
        let bc = c.edge(s[1], s[2]).expect("face-closed");
        let ac = c.edge(s[0], s[2]).expect("face-closed");
        let gen = c.vertex_values[s[0]].generator();
        let mut r = 0.0f64;
        for i in 0..c.k {
            for j in 0..c.k {
                let x = gen.image(i, j);
                let lhs = bc.map(&ab.map(x));
                let rhs = ac.map(x);
                r = r.max(lhs.sub(&rhs).max_abs());
            }
        }
        r
    });
    for (t, &r) in residuals.iter().enumerate() {
        worst = worst.max(r);
        if r > tol {
            failures.push(format!(
                "triangle {:?}: composition residual {r:.3e}",
                tris[t]
            ));
        }
    }

    GroupoidReport {
        pass: failures.is_empty(),
        worst_residual: worst,
        failures,
    }
}

/// A transformation χ: φ ⇒ ψ between two cocycles with the same k and
/// complex: per vertex a *-isomorphism A_α → B_α, stored by its values on
/// the matrix units of φ's vertex generator.
#[derive(Debug, Clone)]
pub struct NaturalTransformation {
    pub source: GroupoidCocycle,
    pub target: GroupoidCocycle,
    /// `vertex_values[α].image(i,j) = χ_α(φ_α(e_ij))`.
    pub vertex_values: Vec<StarHom>,
}

impl NaturalTransformation {
    /// Identity transformation φ ⇒ φ.
    pub fn identity(c: &GroupoidCocycle) -> Self {
        NaturalTransformation {
            source: c.clone(),
            target: c.clone(),
            vertex_values: c
                .vertex_values
                .iter()
                .map(|a| a.generator().clone())
                .collect(),
        }
    }
}

/// Check endpoint compatibility (χ_α lands on B_α) and the naturality
/// squares `ψ_{αβ}∘χ_α = χ_β∘φ_{αβ}` on matrix units.
pub fn verify_natural_transformation(
    chi: &NaturalTransformation,
    cfg: &ToleranceConfig,
) -> GroupoidReport {
    let tol = cfg.loose_tol();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let (src, tgt) = (&chi.source, &chi.target);
    if src.complex != tgt.complex || src.k != tgt.k {
        return GroupoidReport {
            pass: false,
            worst_residual: f64::INFINITY,
            failures: vec!["source/target complex or k mismatch".into()],
        };
    }
    let k = src.k;
    for (a, h) in chi.vertex_values.iter().enumerate() {
        if !KSubalgebra::new(h.clone()).same_image(&tgt.vertex_values[a], cfg) {
            failures.push(format!("vertex {a}: image is not the target object"));
        }
    }
    for (idx, e) in src.complex.simplices(1).iter().enumerate() {
        let (a, b) = (e[0], e[1]);
        let phi = &src.edge_values[idx];
        let psi = &tgt.edge_values[idx];
        let gen_a = src.vertex_values[a].generator();
        let gen_b = src.vertex_values[b].generator();
        let mut r = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                let lhs = psi.map(chi.vertex_values[a].image(i, j));
                let moved = phi.map(gen_a.image(i, j));
                let rhs = chi.vertex_values[b].apply(&gen_b.coefficients_of(&moved));
                r = r.max(lhs.sub(&rhs).max_abs());
            }
        }
        worst = worst.max(r);
        if r > tol {
            failures.push(format!("edge {e:?}: naturality residual {r:.3e}"));
        }
    }
    GroupoidReport {
        pass: failures.is_empty(),
        worst_residual: worst,
        failures,
    }
}

/// Turn a PU(k)-cocycle into a groupoid cocycle with every vertex object
/// equal to the image of `basepoint` and edge action `Ad(u_{αβ}^{-1})` in
/// basepoint coordinates. The inverse makes edges compose diagrammatically
/// under the `u_{αβ}u_{βγ} = λ·u_{αγ}` defect convention.
pub fn induce_groupoid_cocycle(
    c: &PUCocycle,
    basepoint: &StarHom,
    cfg: &ToleranceConfig,
) -> Result<GroupoidCocycle> {
    let k = c.k();
    if basepoint.source_size() != k {
        return Err(AzumayaError::DimensionMismatch(format!(
            "basepoint source M_{} does not match fiber size {k}",
            basepoint.source_size()
        )));
    }
    let report = verify_star_hom(basepoint, cfg);
    if !report.pass {
        return Err(AzumayaError::InvalidStarHom {
            reason: "basepoint is not a *-homomorphism".into(),
            residual: report.max_residual(),
        });
    }
    let n = basepoint.target_size();
    let vertex_values =
        vec![KSubalgebra::new(basepoint.clone()); c.complex().count(0)];
    let edge_values: Result<Vec<AlgebraIso>> = c
        .complex()
        .simplices(1)
        .iter()
        .zip(c.edge_values())
        .map(|(_, u)| {
            let ua = u.adjoint();
            let images = (0..k * k)
                .map(|m| {
                    let (i, j) = (m / k, m % k);
                    let moved = ua.matrix().mul(&matrix_unit(k, i, j)).mul(u.matrix());
                    basepoint.apply(&moved)
                })
                .collect();
            AlgebraIso::new(basepoint.clone(), StarHom::new(k, n, images)?)
        })
        .collect();
    GroupoidCocycle::new(c.complex().clone(), k, vertex_values, edge_values?)
}

/// Flatten a groupoid cocycle to PU(k) data: per edge the vertex
/// generators serve as coordinate isomorphisms M_k → A_α, the edge becomes
/// an automorphism `g_{αβ} = φ_β^{-1}∘φ_{αβ}∘φ_α` of M_k, and the returned
/// edge unitary is the SU-normalized inverse of its implementing unitary.
/// Also returns the transformation `induce(result) ⇒ c` witnessing
/// equivalence.
pub fn skeletonize(
    c: &GroupoidCocycle,
    cfg: &ToleranceConfig,
) -> Result<(PUCocycle, NaturalTransformation)> {
    let k = c.k;
    let l = c.multiplicity();
    let edge_values: Result<Vec<Unitary>> = c
        .complex
        .simplices(1)
        .iter()
        .zip(&c.edge_values)
        .map(|(e, iso)| {
            let gen_a = c.vertex_values[e[0]].generator();
            let gen_b = c.vertex_values[e[1]].generator();
            let images = (0..k * k)
                .map(|m| {
                    let (i, j) = (m / k, m % k);
                    gen_b.coefficients_of(&iso.map(gen_a.image(i, j)))
                })
                .collect();
            let g = StarHom::new(k, k, images)?;
            let w = decompose_hom(&g, cfg)?;
            Ok(su_normalize(&w.adjoint()))
        })
        .collect();
    let pu = PUCocycle::new(c.complex.clone(), k, edge_values?)?;
    let induced = induce_groupoid_cocycle(&pu, &StarHom::standard(k, l), cfg)?;
    let witness = NaturalTransformation {
        source: induced,
        target: c.clone(),
        vertex_values: c
            .vertex_values
            .iter()
            .map(|a| a.generator().clone())
            .collect(),
    };
    Ok((pu, witness))
}
