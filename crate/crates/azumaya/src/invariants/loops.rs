//! Z/k clutching-loop invariants: continuation lifts of projective
//! unitary loops and determinant-winding transport of embedding loops.

use std::f64::consts::TAU;

use num_integer::Integer;

use crate::matalg::{
    decompose_hom, partial_trace_first, projective_distance, su_normalize, Matrix, StarHom,
    Unitary, C64,
};
use crate::tol::ToleranceConfig;
use crate::{AzumayaError, Result};

/// Maximal projective distance between consecutive samples for which the
/// trace phase alignment is unambiguous.
pub const MAX_SAMPLE_GAP: f64 = 0.5;

/// A sampled loop: either a projective unitary loop in PU(k) or a loop of
/// embeddings `M_k → M_{kl}` (a frame-space loop).
#[derive(Debug, Clone)]
pub enum ClutchingLoop {
    Unitary { k: usize, samples: Vec<Unitary> },
    Embedding { k: usize, l: usize, samples: Vec<StarHom> },
}

impl ClutchingLoop {
    /// Projective unitary loop. Gates: at least two samples, consecutive
    /// samples within projective distance [`MAX_SAMPLE_GAP`], endpoints
    /// projectively equal.
    pub fn unitary(samples: Vec<Unitary>, cfg: &ToleranceConfig) -> Result<Self> {
        let k = match samples.as_slice() {
            [] | [_] => {
                return Err(AzumayaError::InvalidInput(
                    "a loop needs at least two samples".into(),
                ))
            }
            [first, ..] => first.size(),
        };
        if samples.iter().any(|u| u.size() != k) {
            return Err(AzumayaError::DimensionMismatch(
                "mixed sample sizes in one loop".into(),
            ));
        }
        for (i, w) in samples.windows(2).enumerate() {
            let d = projective_distance(&w[0], &w[1]);
            if d >= MAX_SAMPLE_GAP {
                return Err(AzumayaError::SamplingTooCoarse(format!(
                    "projective gap {d:.3} at step {i}"
                )));
            }
        }
        let closure = projective_distance(&samples[0], samples.last().unwrap());
        if closure > cfg.rank_cutoff() {
            return Err(AzumayaError::InvalidInput(format!(
                "loop does not close (projective gap {closure:.3e})"
            )));
        }
        Ok(ClutchingLoop::Unitary { k, samples })
    }

    /// Loop of embeddings into a fixed `M_{kl}`. Gates as for unitary
    /// loops, with distances measured on matrix-unit images.
    pub fn embedding(samples: Vec<StarHom>, cfg: &ToleranceConfig) -> Result<Self> {
        let (k, n) = match samples.as_slice() {
            [] | [_] => {
                return Err(AzumayaError::InvalidInput(
                    "a loop needs at least two samples".into(),
                ))
            }
            [first, ..] => (first.source_size(), first.target_size()),
        };
        if samples
            .iter()
            .any(|p| p.source_size() != k || p.target_size() != n)
        {
            return Err(AzumayaError::DimensionMismatch(
                "mixed embedding shapes in one loop".into(),
            ));
        }
        for (i, w) in samples.windows(2).enumerate() {
            let d = w[0].distance(&w[1]);
            if d >= MAX_SAMPLE_GAP {
                return Err(AzumayaError::SamplingTooCoarse(format!(
                    "embedding gap {d:.3} at step {i}"
                )));
            }
        }
        let closure = samples[0].distance(samples.last().unwrap());
        if closure > cfg.rank_cutoff() {
            return Err(AzumayaError::InvalidInput(format!(
                "loop does not close (gap {closure:.3e})"
            )));
        }
        Ok(ClutchingLoop::Embedding {
            k,
            l: n / k,
            samples,
        })
    }

    pub fn k(&self) -> usize {
        match self {
            ClutchingLoop::Unitary { k, .. } | ClutchingLoop::Embedding { k, .. } => *k,
        }
    }

    pub fn sample_count(&self) -> usize {
        match self {
            ClutchingLoop::Unitary { samples, .. } => samples.len(),
            ClutchingLoop::Embedding { samples, .. } => samples.len(),
        }
    }

    pub fn reversed(&self) -> ClutchingLoop {
        match self {
            ClutchingLoop::Unitary { k, samples } => ClutchingLoop::Unitary {
                k: *k,
                samples: samples.iter().rev().cloned().collect(),
            },
            ClutchingLoop::Embedding { k, l, samples } => ClutchingLoop::Embedding {
                k: *k,
                l: *l,
                samples: samples.iter().rev().cloned().collect(),
            },
        }
    }

    /// Concatenate two loops based at the same point.
    pub fn concatenated(&self, other: &ClutchingLoop) -> Result<ClutchingLoop> {
        match (self, other) {
            (
                ClutchingLoop::Unitary { k, samples },
                ClutchingLoop::Unitary {
                    k: k2,
                    samples: s2,
                },
            ) if k == k2 => {
                if projective_distance(samples.last().unwrap(), &s2[0]) >= MAX_SAMPLE_GAP {
                    return Err(AzumayaError::InvalidInput(
                        "concatenation endpoints disagree".into(),
                    ));
                }
                let mut all = samples.clone();
                all.extend(s2.iter().cloned());
                Ok(ClutchingLoop::Unitary {
                    k: *k,
                    samples: all,
                })
            }
            (
                ClutchingLoop::Embedding { k, l, samples },
                ClutchingLoop::Embedding {
                    k: k2,
                    l: l2,
                    samples: s2,
                },
            ) if k == k2 && l == l2 => {
                let mut all = samples.clone();
                all.extend(s2.iter().cloned());
                Ok(ClutchingLoop::Embedding {
                    k: *k,
                    l: *l,
                    samples: all,
                })
            }
            _ => Err(AzumayaError::InvalidInput(
                "concatenation needs two loops of the same variant and size".into(),
            )),
        }
    }
}

/// An element of Z/k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopClass {
    pub modulus: usize,
    pub value: i64,
}

impl LoopClass {
    pub fn new(modulus: usize, value: i64) -> Self {
        LoopClass {
            modulus,
            value: value.rem_euclid(modulus as i64),
        }
    }
}

fn zeta(k: usize) -> C64 {
    C64::from_polar(1.0, TAU / k as f64)
}

/// Align `next` to the previous SU(k) representative by the nearest μ_k
/// phase; errors when the trace overlap is too small to disambiguate.
fn continue_lift(prev: &Unitary, next: &Unitary, k: usize) -> Result<Unitary> {
    let t = prev.adjoint().mul(next).matrix().trace();
    if t.norm() < 0.1 * k as f64 {
        return Err(AzumayaError::SamplingTooCoarse(format!(
            "trace overlap {:.3} too small for phase alignment",
            t.norm() / k as f64
        )));
    }
    let m = (-t.arg() * k as f64 / TAU).round() as i32;
    Ok(next.scale_phase(zeta(k).powi(m)))
}

/// Z/k class of a projective unitary loop by continuation lift to SU(k):
/// the lifted endpoint differs from the lifted start by `ζ^m`; returns
/// `m mod k`. The generator loop `t ↦ diag(e^{2πit},1,…,1)` has class
/// `−1 mod k` under this orientation convention.
pub fn pu_loop_class(lp: &ClutchingLoop, _cfg: &ToleranceConfig) -> Result<LoopClass> {
    let ClutchingLoop::Unitary { k, samples } = lp else {
        return Err(AzumayaError::InvalidInput(
            "pu_loop_class needs a unitary loop".into(),
        ));
    };
    let k = *k;
    let s0 = su_normalize(&samples[0]);
    let mut prev = s0.clone();
    for u in &samples[1..] {
        prev = continue_lift(&prev, &su_normalize(u), k)?;
    }
    let t = s0.adjoint().mul(&prev).matrix().trace();
    if t.norm() < 0.1 * k as f64 {
        return Err(AzumayaError::SamplingTooCoarse(
            "endpoint alignment ambiguous".into(),
        ));
    }
    let m = (t.arg() * k as f64 / TAU).round() as i64;
    let residual = (t / t.norm() - zeta(k).powi(m as i32)).norm();
    if residual > 0.5 {
        return Err(AzumayaError::SamplingTooCoarse(format!(
            "endpoint scalar {residual:.3} away from μ_k"
        )));
    }
    Ok(LoopClass::new(k, m))
}

/// Z/k class of an embedding loop, extracted from the determinant winding
/// of the stepwise intertwiner transport. Requires `gcd(l,k) = 1`: with
/// `P = Σ arg det(v_i)` and `c` the centralizer part of the total
/// transport in start coordinates, the class is `−l^{-1}(P − k·arg det c)/2π
/// mod k`. The normalization is pinned by the concatenation and
/// PU-compatibility oracles in the test suite.
pub fn frame_loop_class(lp: &ClutchingLoop, cfg: &ToleranceConfig) -> Result<LoopClass> {
    let ClutchingLoop::Embedding { k, l, samples } = lp else {
        return Err(AzumayaError::InvalidInput(
            "frame_loop_class needs an embedding loop".into(),
        ));
    };
    let (k, l) = (*k, *l);
    if l.gcd(&k) != 1 {
        return Err(AzumayaError::InvalidInput(format!(
            "multiplicity {l} not coprime to {k}: winding extraction undefined"
        )));
    }
    let n = k * l;
    let mut total = Matrix::identity(n);
    let mut winding = 0.0f64;
    for w in samples.windows(2) {
        // S = Σ_j φ_{i+1}(e_{j1}) φ_i(e_{1j}) intertwines φ_i → φ_{i+1}
        // exactly; for close samples it is near the identity, so its polar
        // part is the canonical small step.
        let mut s = Matrix::zeros(n, n);
        for j in 0..k {
            s = s.add(&w[1].image(j, 0).mul(w[0].image(0, j)));
        }
        let v = s.polar_unitary().map_err(|_| {
            AzumayaError::SamplingTooCoarse("transport step is singular".into())
        })?;
        winding += v.det().arg();
        total = v.mul(&total);
    }
    // the total transport commutes with the start embedding: read off its
    // centralizer component
    let w0 = decompose_hom(&samples[0], cfg)?;
    let inner = w0.adjoint().matrix().mul(&total).mul(w0.matrix());
    let c = partial_trace_first(&inner, k, l);
    let recon = Matrix::from_fn(n, n, |r, q| {
        if r / l == q / l {
            c[(r % l, q % l)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let residual = inner.sub(&recon).max_abs();
    if residual > cfg.rank_cutoff() {
        return Err(AzumayaError::VerificationFailed(format!(
            "transport endpoint leaves the centralizer (residual {residual:.3e})"
        )));
    }
    let m = ((winding - k as f64 * c.det().arg()) / TAU).round();
    let l_inv = (0..k as i64)
        .find(|x| (x * l as i64).rem_euclid(k as i64) == 1)
        .expect("l invertible mod k");
    Ok(LoopClass::new(k, -l_inv * m as i64))
}

/// Pointwise Kronecker product of two unitary loops, resampled to a
/// common grid by nearest-index repetition when the counts differ.
pub fn tensor_loops(f: &ClutchingLoop, g: &ClutchingLoop) -> Result<ClutchingLoop> {
    let (ClutchingLoop::Unitary { k, samples: sf }, ClutchingLoop::Unitary { k: m, samples: sg }) =
        (f, g)
    else {
        return Err(AzumayaError::InvalidInput(
            "tensor_loops needs two unitary loops".into(),
        ));
    };
    let steps = (sf.len() - 1).lcm(&(sg.len() - 1));
    let at = |s: &[Unitary], i: usize| {
        let idx = i * (s.len() - 1) / steps;
        s[idx].clone()
    };
    let samples = (0..=steps)
        .map(|i| at(sf, i).kron(&at(sg, i)))
        .collect();
    Ok(ClutchingLoop::Unitary {
        k: k * m,
        samples,
    })
}

/// Over S², a clutching loop extends to a trivializable bundle iff its
/// Z/k class vanishes.
pub fn s2_embeddability(lp: &ClutchingLoop, cfg: &ToleranceConfig) -> Result<(bool, LoopClass)> {
    let class = match lp {
        ClutchingLoop::Unitary { .. } => pu_loop_class(lp, cfg)?,
        ClutchingLoop::Embedding { .. } => frame_loop_class(lp, cfg)?,
    };
    Ok((class.value == 0, class))
}

/// Sampled loop `t ↦ w·diag(e^{2πi t n_1},…,e^{2πi t n_k})·w*`.
pub fn spectral_loop(
    w: &Unitary,
    exponents: &[i64],
    steps: usize,
    cfg: &ToleranceConfig,
) -> Result<ClutchingLoop> {
    let k = w.size();
    if exponents.len() != k {
        return Err(AzumayaError::InvalidInput(
            "one exponent per eigenvalue".into(),
        ));
    }
    let samples = (0..=steps)
        .map(|i| {
            let t = i as f64 / steps as f64;
            let d = Matrix::from_fn(k, k, |r, q| {
                if r == q {
                    C64::from_polar(1.0, TAU * t * exponents[r] as f64)
                } else {
                    C64::new(0.0, 0.0)
                }
            });
            Unitary::new(w.matrix().mul(&d).mul(w.adjoint().matrix()), 1e-9)
                .expect("unitary by construction")
        })
        .collect();
    ClutchingLoop::unitary(samples, cfg)
}

/// The standard generator loop `t ↦ diag(e^{2πit},1,…,1)`.
pub fn generator_loop(k: usize, steps: usize, cfg: &ToleranceConfig) -> Result<ClutchingLoop> {
    let mut exps = vec![0i64; k];
    exps[0] = 1;
    spectral_loop(&Unitary::identity(k), &exps, steps, cfg)
}

/// The embedding loop `t ↦ Ad(g(t))∘ι` for ι the standard `M_k → M_{kl}`.
pub fn embedding_loop_from_unitary(
    g: &ClutchingLoop,
    l: usize,
    cfg: &ToleranceConfig,
) -> Result<ClutchingLoop> {
    let ClutchingLoop::Unitary { k, samples } = g else {
        return Err(AzumayaError::InvalidInput(
            "need a unitary loop to induce an embedding loop".into(),
        ));
    };
    let base = StarHom::standard(*k, l);
    let embs = samples
        .iter()
        .map(|u| {
            let amb = Unitary::new(u.matrix().kron(&Matrix::identity(l)), 1e-9)
                .expect("unitary by construction");
            base.conjugated(&amb)
        })
        .collect();
    ClutchingLoop::embedding(embs, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matalg::haar_unitary;
    use rand::{Rng, SeedableRng};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn constant_loops_are_trivial() {
        let u = haar_unitary(3, 4);
        let lp = ClutchingLoop::unitary(vec![u.clone(); 8], &cfg()).unwrap();
        assert_eq!(pu_loop_class(&lp, &cfg()).unwrap().value, 0);
        let base = StarHom::standard(3, 2);
        let lp = ClutchingLoop::embedding(vec![base; 8], &cfg()).unwrap();
        assert_eq!(frame_loop_class(&lp, &cfg()).unwrap().value, 0);
    }

    #[test]
    fn generator_loop_class_and_group_law() {
        for k in [2usize, 3, 5] {
            let g = generator_loop(k, 40, &cfg()).unwrap();
            let c = pu_loop_class(&g, &cfg()).unwrap();
            assert_eq!(c.value, (k as i64) - 1, "k = {k}");
            // reversal negates
            let r = pu_loop_class(&g.reversed(), &cfg()).unwrap();
            assert_eq!(r.value, 1);
            // k-fold concatenation is trivial
            let mut acc = g.clone();
            for _ in 1..k {
                acc = acc.concatenated(&g).unwrap();
            }
            assert_eq!(pu_loop_class(&acc, &cfg()).unwrap().value, 0);
        }
    }

    #[test]
    fn spectral_loop_class_matches_exponent_sum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for k in [2usize, 3, 4] {
            for trial in 0..3 {
                let w = haar_unitary(k, 100 * k as u64 + trial);
                let exps: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..3)).collect();
                let lp = spectral_loop(&w, &exps, 60, &cfg()).unwrap();
                let c = pu_loop_class(&lp, &cfg()).unwrap();
                let expect = (-exps.iter().sum::<i64>()).rem_euclid(k as i64);
                assert_eq!(c.value, expect, "k={k} exps={exps:?}");
            }
        }
    }

    #[test]
    fn class_invariances() {
        let g = generator_loop(3, 45, &cfg()).unwrap();
        let base = pu_loop_class(&g, &cfg()).unwrap();
        let ClutchingLoop::Unitary { samples, .. } = &g else {
            unreachable!()
        };
        // per-sample phases
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let phased: Vec<Unitary> = samples
            .iter()
            .map(|u| u.scale_phase(C64::from_polar(1.0, rng.gen_range(0.0..TAU))))
            .collect();
        let lp = ClutchingLoop::unitary(phased, &cfg()).unwrap();
        assert_eq!(pu_loop_class(&lp, &cfg()).unwrap(), base);
        // conjugation by a fixed unitary
        let v = haar_unitary(3, 9);
        let conj: Vec<Unitary> = samples.iter().map(|u| v.mul(u).mul(&v.adjoint())).collect();
        let lp = ClutchingLoop::unitary(conj, &cfg()).unwrap();
        assert_eq!(pu_loop_class(&lp, &cfg()).unwrap(), base);
        // refinement: duplicate every sample
        let refined: Vec<Unitary> = samples
            .iter()
            .flat_map(|u| [u.clone(), u.clone()])
            .collect();
        let lp = ClutchingLoop::unitary(refined, &cfg()).unwrap();
        assert_eq!(pu_loop_class(&lp, &cfg()).unwrap(), base);
        // basepoint rotation (samples[0] == samples[last], so rotate interior)
        let n = samples.len();
        let mut rotated: Vec<Unitary> = Vec::new();
        rotated.extend(samples[10..n - 1].iter().cloned());
        rotated.extend(samples[..=10].iter().cloned());
        let lp = ClutchingLoop::unitary(rotated, &cfg()).unwrap();
        assert_eq!(pu_loop_class(&lp, &cfg()).unwrap(), base);
    }

    #[test]
    fn coarse_sampling_is_rejected() {
        let g = generator_loop(2, 4, &cfg());
        assert!(matches!(g, Err(AzumayaError::SamplingTooCoarse(_))));
    }

    #[test]
    fn non_closing_path_is_rejected() {
        let samples: Vec<Unitary> = (0..=20)
            .map(|i| {
                let t = i as f64 / 20.0 * 0.5; // half a loop
                Unitary::new(
                    Matrix::from_fn(2, 2, |r, q| {
                        if r == q {
                            if r == 0 {
                                C64::from_polar(1.0, TAU * t)
                            } else {
                                C64::new(1.0, 0.0)
                            }
                        } else {
                            C64::new(0.0, 0.0)
                        }
                    }),
                    1e-9,
                )
                .unwrap()
            })
            .collect();
        assert!(ClutchingLoop::unitary(samples, &cfg()).is_err());
    }

    #[test]
    fn frame_class_matches_pu_class_for_induced_loops() {
        for (k, l) in [(2usize, 3usize), (3, 2)] {
            let g = generator_loop(k, 50, &cfg()).unwrap();
            let e = embedding_loop_from_unitary(&g, l, &cfg()).unwrap();
            let pu = pu_loop_class(&g, &cfg()).unwrap();
            let fr = frame_loop_class(&e, &cfg()).unwrap();
            assert_eq!(pu.value, fr.value, "k={k} l={l}");
        }
    }

    #[test]
    fn frame_class_adds_under_concatenation() {
        let cfgv = cfg();
        let g = generator_loop(3, 50, &cfgv).unwrap();
        let e = embedding_loop_from_unitary(&g, 2, &cfgv).unwrap();
        let one = frame_loop_class(&e, &cfgv).unwrap();
        let two = frame_loop_class(&e.concatenated(&e).unwrap(), &cfgv).unwrap();
        assert_eq!(two.value, (2 * one.value).rem_euclid(3));
        let rev = frame_loop_class(&e.reversed(), &cfgv).unwrap();
        assert_eq!((one.value + rev.value).rem_euclid(3), 0);
    }

    #[test]
    fn tensor_class_formula() {
        let cfgv = cfg();
        // k=2, l=3: [f⊗g] = 3[f] + 2[g] mod 6
        let f = generator_loop(2, 48, &cfgv).unwrap();
        let g = generator_loop(3, 48, &cfgv).unwrap();
        let cf = pu_loop_class(&f, &cfgv).unwrap().value;
        let cg = pu_loop_class(&g, &cfgv).unwrap().value;
        let t = tensor_loops(&f, &g).unwrap();
        let ct = pu_loop_class(&t, &cfgv).unwrap().value;
        assert_eq!(ct, (3 * cf + 2 * cg).rem_euclid(6));
        // generator ⊗ constant
        let id = ClutchingLoop::unitary(vec![Unitary::identity(3); 48], &cfgv).unwrap();
        let t = tensor_loops(&f, &id).unwrap();
        assert_eq!(
            pu_loop_class(&t, &cfgv).unwrap().value,
            (3 * cf).rem_euclid(6)
        );
    }

    #[test]
    fn tensor_random_spectral_loops_satisfy_formula() {
        let cfgv = cfg();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for trial in 0..4 {
            let wf = haar_unitary(2, 300 + trial);
            let wg = haar_unitary(3, 400 + trial);
            let ef: Vec<i64> = (0..2).map(|_| rng.gen_range(-2..3)).collect();
            let eg: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..3)).collect();
            let f = spectral_loop(&wf, &ef, 80, &cfgv).unwrap();
            let g = spectral_loop(&wg, &eg, 90, &cfgv).unwrap();
            let cf = pu_loop_class(&f, &cfgv).unwrap().value;
            let cg = pu_loop_class(&g, &cfgv).unwrap().value;
            let ct = pu_loop_class(&tensor_loops(&f, &g).unwrap(), &cfgv)
                .unwrap()
                .value;
            assert_eq!(ct, (3 * cf + 2 * cg).rem_euclid(6), "trial {trial}");
        }
    }

    #[test]
    fn embeddability_over_s2() {
        let cfgv = cfg();
        let g = generator_loop(2, 40, &cfgv).unwrap();
        let (ok, c) = s2_embeddability(&g, &cfgv).unwrap();
        assert!(!ok);
        assert_eq!(c.value, 1);
        let double = g.concatenated(&g).unwrap();
        let (ok, c) = s2_embeddability(&double, &cfgv).unwrap();
        assert!(ok);
        assert_eq!(c.value, 0);
        let constant = ClutchingLoop::unitary(vec![Unitary::identity(2); 6], &cfgv).unwrap();
        assert!(s2_embeddability(&constant, &cfgv).unwrap().0);
    }
}
