//! JSON dataset schema: a versioned envelope with a kind tag and a
//! per-kind payload. Complex numbers are `[re, im]` pairs, matrices are
//! row-major nested arrays, simplices are sorted vertex-index arrays.

use std::path::Path;

use serde::{Deserialize, Serialize};

use azumaya::cech::{GroupoidCocycle, NaturalTransformation, PUCocycle};
use azumaya::invariants::ClutchingLoop;
use azumaya::matalg::{verify_star_hom, AlgebraIso, KSubalgebra, Matrix, StarHom, Unitary, C64};
use azumaya::simplicial::SimplicialComplex;
use azumaya::ToleranceConfig;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1";

/// A complex matrix as row-major rows of `[re, im]` entries.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Dataset {
    pub schema_version: String,
    #[serde(flatten)]
    pub body: Payload,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum Payload {
    Complex(ComplexPayload),
    PuCocycle(PuCocyclePayload),
    GroupoidCocycle(GroupoidPayload),
    Loop(LoopPayload),
    NatTrans(NatTransPayload),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Complex(_) => "complex",
            Payload::PuCocycle(_) => "pu-cocycle",
            Payload::GroupoidCocycle(_) => "groupoid-cocycle",
            Payload::Loop(_) => "loop",
            Payload::NatTrans(_) => "nat-trans",
        }
    }
}

/// Every simplex of the complex, faces included; the loader rejects lists
/// that are not closed under taking faces.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ComplexPayload {
    pub vertex_count: usize,
    pub simplices: Vec<Vec<usize>>,
}

/// One unitary per 1-simplex, listed in the complex's edge order.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PuCocyclePayload {
    pub k: usize,
    pub edges: Vec<MatrixJson>,
}

/// An algebra isomorphism stored by the matrix-unit images of its source
/// and target star-homomorphisms.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct IsoJson {
    pub source: Vec<MatrixJson>,
    pub target: Vec<MatrixJson>,
}

/// Per vertex a generating M_k → M_n star-homomorphism (k² matrix-unit
/// images, row-major in (i,j)), per edge an isomorphism.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct GroupoidPayload {
    pub k: usize,
    pub ambient: usize,
    pub vertices: Vec<Vec<MatrixJson>>,
    pub edges: Vec<IsoJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum LoopPayload {
    Unitary {
        k: usize,
        samples: Vec<MatrixJson>,
    },
    Embedding {
        k: usize,
        l: usize,
        samples: Vec<Vec<MatrixJson>>,
    },
}

/// A transformation between two groupoid cocycles on the same complex,
/// stored by per-vertex matrix-unit images.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct NatTransPayload {
    pub k: usize,
    pub source: GroupoidPayload,
    pub target: GroupoidPayload,
    pub vertex_values: Vec<Vec<MatrixJson>>,
}

// ---------------------------------------------------------------------
// Envelope I/O

pub fn parse(text: &str, origin: &str) -> CliResult<Dataset> {
    let ds: Dataset = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("parse error in {origin}: {e}")))?;
    if ds.schema_version != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "{origin}: unsupported schema version {:?} (expected {SCHEMA_VERSION:?})",
            ds.schema_version
        )));
    }
    Ok(ds)
}

pub fn load(path: &Path) -> CliResult<Dataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

pub fn serialize(ds: &Dataset) -> String {
    let mut s = serde_json::to_string_pretty(ds).expect("dataset serialization cannot fail");
    s.push('\n');
    s
}

pub fn envelope(body: Payload) -> Dataset {
    Dataset {
        schema_version: SCHEMA_VERSION.to_string(),
        body,
    }
}

// ---------------------------------------------------------------------
// Matrix conversions

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn matrix_from_json(m: &MatrixJson, what: &str) -> CliResult<Matrix> {
    let rows = m.len();
    if rows == 0 || m.iter().any(|row| row.len() != m[0].len()) || m[0].is_empty() {
        return Err(CliError::Input(format!(
            "{what}: matrix rows must be nonempty and of equal length"
        )));
    }
    let data: Vec<Vec<C64>> = m
        .iter()
        .map(|row| row.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    Matrix::from_rows(&data).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn unitary_from_json(m: &MatrixJson, k: usize, tol: f64, what: &str) -> CliResult<Unitary> {
    let mat = matrix_from_json(m, what)?;
    if mat.rows() != k || mat.cols() != k {
        return Err(CliError::Input(format!(
            "{what}: expected a {k}x{k} matrix, got {}x{}",
            mat.rows(),
            mat.cols()
        )));
    }
    Unitary::new(mat, tol).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn star_hom_from_json(
    images: &[MatrixJson],
    k: usize,
    n: usize,
    cfg: &ToleranceConfig,
    what: &str,
) -> CliResult<StarHom> {
    let mats = images
        .iter()
        .enumerate()
        .map(|(idx, m)| matrix_from_json(m, &format!("{what}, image {idx}")))
        .collect::<CliResult<Vec<Matrix>>>()?;
    let phi = StarHom::new(k, n, mats).map_err(|e| CliError::Input(format!("{what}: {e}")))?;
    let report = verify_star_hom(&phi, &ToleranceConfig::new(cfg.rank_cutoff(), cfg.rng_seed));
    if !report.pass {
        return Err(CliError::Input(format!(
            "{what}: not a star-homomorphism, relation {} has residual {:.3e}",
            report.worst_relation,
            report.max_residual()
        )));
    }
    Ok(phi)
}

fn star_hom_to_json(phi: &StarHom) -> Vec<MatrixJson> {
    phi.images().iter().map(matrix_to_json).collect()
}

// ---------------------------------------------------------------------
// Per-kind conversions to domain objects

impl ComplexPayload {
    pub fn to_complex(&self) -> CliResult<SimplicialComplex> {
        let dim = self.simplices.iter().map(Vec::len).max().unwrap_or(1);
        let mut levels = vec![Vec::new(); dim];
        for s in &self.simplices {
            if s.is_empty() {
                return Err(CliError::Input("empty simplex in complex".into()));
            }
            levels[s.len() - 1].push(s.clone());
        }
        SimplicialComplex::new(self.vertex_count, levels).map_err(CliError::from)
    }

    pub fn from_complex(x: &SimplicialComplex) -> Self {
        let mut simplices = Vec::new();
        for q in 0..=x.dim() {
            simplices.extend(x.simplices(q).iter().cloned());
        }
        ComplexPayload {
            vertex_count: x.vertex_count(),
            simplices,
        }
    }
}

impl PuCocyclePayload {
    pub fn to_cocycle(
        &self,
        x: &SimplicialComplex,
        cfg: &ToleranceConfig,
    ) -> CliResult<PUCocycle> {
        if self.edges.len() != x.count(1) {
            return Err(CliError::Input(format!(
                "cocycle lists {} edge values but the complex has {} edges",
                self.edges.len(),
                x.count(1)
            )));
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, m)| {
                unitary_from_json(m, self.k, cfg.rank_cutoff(), &format!("edge value {e}"))
            })
            .collect::<CliResult<Vec<Unitary>>>()?;
        PUCocycle::new(x.clone(), self.k, edges).map_err(CliError::from)
    }

    pub fn from_cocycle(c: &PUCocycle) -> Self {
        PuCocyclePayload {
            k: c.k(),
            edges: c.edge_values().iter().map(|u| matrix_to_json(u.matrix())).collect(),
        }
    }
}

impl GroupoidPayload {
    pub fn to_cocycle(
        &self,
        x: &SimplicialComplex,
        cfg: &ToleranceConfig,
    ) -> CliResult<GroupoidCocycle> {
        if self.vertices.len() != x.count(0) || self.edges.len() != x.count(1) {
            return Err(CliError::Input(format!(
                "groupoid cocycle has {} vertex and {} edge values; the complex needs {} and {}",
                self.vertices.len(),
                self.edges.len(),
                x.count(0),
                x.count(1)
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(a, imgs)| {
                Ok(KSubalgebra::new(star_hom_from_json(
                    imgs,
                    self.k,
                    self.ambient,
                    cfg,
                    &format!("vertex {a}"),
                )?))
            })
            .collect::<CliResult<Vec<KSubalgebra>>>()?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, iso)| {
                let src =
                    star_hom_from_json(&iso.source, self.k, self.ambient, cfg, &format!("edge {e} source"))?;
                let tgt =
                    star_hom_from_json(&iso.target, self.k, self.ambient, cfg, &format!("edge {e} target"))?;
                AlgebraIso::new(src, tgt).map_err(CliError::from)
            })
            .collect::<CliResult<Vec<AlgebraIso>>>()?;
        GroupoidCocycle::new(x.clone(), self.k, vertices, edges).map_err(CliError::from)
    }

    pub fn from_cocycle(c: &GroupoidCocycle) -> Self {
        GroupoidPayload {
            k: c.k(),
            ambient: c.ambient_size(),
            vertices: (0..c.complex().count(0))
                .map(|a| star_hom_to_json(c.vertex(a).generator()))
                .collect(),
            edges: c
                .edge_values()
                .iter()
                .map(|iso| IsoJson {
                    source: star_hom_to_json(&iso.source),
                    target: star_hom_to_json(&iso.target),
                })
                .collect(),
        }
    }
}

impl LoopPayload {
    pub fn to_loop(&self, cfg: &ToleranceConfig) -> CliResult<ClutchingLoop> {
        match self {
            LoopPayload::Unitary { k, samples } => {
                let us = samples
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        unitary_from_json(m, *k, cfg.rank_cutoff(), &format!("sample {i}"))
                    })
                    .collect::<CliResult<Vec<Unitary>>>()?;
                ClutchingLoop::unitary(us, cfg).map_err(CliError::from)
            }
            LoopPayload::Embedding { k, l, samples } => {
                let hs = samples
                    .iter()
                    .enumerate()
                    .map(|(i, imgs)| {
                        star_hom_from_json(imgs, *k, k * l, cfg, &format!("sample {i}"))
                    })
                    .collect::<CliResult<Vec<StarHom>>>()?;
                ClutchingLoop::embedding(hs, cfg).map_err(CliError::from)
            }
        }
    }

    pub fn from_loop(lp: &ClutchingLoop) -> Self {
        match lp {
            ClutchingLoop::Unitary { k, samples } => LoopPayload::Unitary {
                k: *k,
                samples: samples.iter().map(|u| matrix_to_json(u.matrix())).collect(),
            },
            ClutchingLoop::Embedding { k, l, samples } => LoopPayload::Embedding {
                k: *k,
                l: *l,
                samples: samples.iter().map(star_hom_to_json).collect(),
            },
        }
    }
}

impl NatTransPayload {
    pub fn to_nat(
        &self,
        x: &SimplicialComplex,
        cfg: &ToleranceConfig,
    ) -> CliResult<NaturalTransformation> {
        let source = self.source.to_cocycle(x, cfg)?;
        let target = self.target.to_cocycle(x, cfg)?;
        if self.vertex_values.len() != x.count(0) {
            return Err(CliError::Input(format!(
                "nat-trans has {} vertex values; the complex has {} vertices",
                self.vertex_values.len(),
                x.count(0)
            )));
        }
        let vertex_values = self
            .vertex_values
            .iter()
            .enumerate()
            .map(|(a, imgs)| {
                star_hom_from_json(
                    imgs,
                    self.k,
                    target.ambient_size(),
                    cfg,
                    &format!("nat-trans vertex {a}"),
                )
            })
            .collect::<CliResult<Vec<StarHom>>>()?;
        Ok(NaturalTransformation {
            source,
            target,
            vertex_values,
        })
    }

    pub fn from_nat(chi: &NaturalTransformation) -> Self {
        NatTransPayload {
            k: chi.source.k(),
            source: GroupoidPayload::from_cocycle(&chi.source),
            target: GroupoidPayload::from_cocycle(&chi.target),
            vertex_values: chi.vertex_values.iter().map(star_hom_to_json).collect(),
        }
    }
}
