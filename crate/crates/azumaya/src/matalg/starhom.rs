use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{hermitian_eig, orthonormal_columns, Matrix};
use super::unitary::{haar_unitary, Unitary};
use crate::{AzumayaError, Result, ToleranceConfig};

/// A unital *-homomorphism `M_k → M_n` (with `k | n`), given by the images
/// of the standard matrix units `e_{ij}`. Image index `i·k + j` holds
/// `φ(e_{ij})`.
#[derive(Debug, Clone)]
pub struct StarHom {
    k: usize,
    n: usize,
    images: Vec<Matrix>,
}

/// Residuals of the three defining relation families of a [`StarHom`].
#[derive(Debug, Clone)]
pub struct StarHomReport {
    pub pass: bool,
    pub product_residual: f64,
    pub unital_residual: f64,
    pub star_residual: f64,
    /// Worst-violating relation, human readable.
    pub worst_relation: String,
}

impl StarHomReport {
    pub fn max_residual(&self) -> f64 {
        self.product_residual
            .max(self.unital_residual)
            .max(self.star_residual)
    }
}

impl StarHom {
    pub fn new(k: usize, n: usize, images: Vec<Matrix>) -> Result<Self> {
        if k == 0 || n == 0 || n % k != 0 {
            return Err(AzumayaError::DimensionMismatch(format!(
                "source size {k} must divide target size {n}"
            )));
        }
        if images.len() != k * k {
            return Err(AzumayaError::DimensionMismatch(format!(
                "expected {} images of matrix units, got {}",
                k * k,
                images.len()
            )));
        }
        if images.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(AzumayaError::DimensionMismatch(format!(
                "all images must be {n}x{n}"
            )));
        }
        Ok(StarHom { k, n, images })
    }

    /// The canonical embedding `a ↦ a ⊗ I_l` into `M_{kl}`.
    pub fn standard(k: usize, l: usize) -> Self {
        let n = k * l;
        let il = Matrix::identity(l);
        let mut images = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut e = Matrix::zeros(k, k);
                e[(i, j)] = C64::new(1.0, 0.0);
                images.push(e.kron(&il));
            }
        }
        StarHom { k, n, images }
    }

    pub fn source_size(&self) -> usize {
        self.k
    }

    pub fn target_size(&self) -> usize {
        self.n
    }

    /// Multiplicity `l = n / k`.
    pub fn multiplicity(&self) -> usize {
        self.n / self.k
    }

    pub fn image(&self, i: usize, j: usize) -> &Matrix {
        &self.images[i * self.k + j]
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    /// `φ(x)` for an arbitrary `k×k` matrix `x`.
    pub fn apply(&self, x: &Matrix) -> Matrix {
        assert_eq!((x.rows(), x.cols()), (self.k, self.k));
        let mut out = Matrix::zeros(self.n, self.n);
        for i in 0..self.k {
            for j in 0..self.k {
                let c = x[(i, j)];
                if c.norm_sqr() > 0.0 {
                    out = out.add(&self.image(i, j).scale(c));
                }
            }
        }
        out
    }

    /// Coefficients of `y` with respect to the image basis:
    /// `c_{ij} = tr(φ(e_{ji})·y) / l`. For `y` in the image this inverts
    /// [`StarHom::apply`].
    pub fn coefficients_of(&self, y: &Matrix) -> Matrix {
        let l = self.multiplicity() as f64;
        Matrix::from_fn(self.k, self.k, |i, j| {
            self.image(j, i).mul(y).trace() / l
        })
    }

    /// Residual of `y` against the linear span of the image:
    /// `‖y − φ(coefficients_of(y))‖_max`.
    pub fn span_residual(&self, y: &Matrix) -> f64 {
        self.apply(&self.coefficients_of(y)).sub(y).max_abs()
    }

    /// `Ad(u) ∘ φ`.
    pub fn conjugated(&self, u: &Unitary) -> StarHom {
        StarHom {
            k: self.k,
            n: self.n,
            images: self.images.iter().map(|m| u.conjugate(m)).collect(),
        }
    }

    pub fn approx_eq(&self, other: &StarHom, tol: f64) -> bool {
        self.k == other.k
            && self.n == other.n
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Maximum entrywise distance between corresponding matrix-unit images.
    pub fn distance(&self, other: &StarHom) -> f64 {
        self.images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.sub(b).max_abs())
            .fold(0.0, f64::max)
    }

    /// Tensor product `φ ⊗ ψ : M_{km} → M_{nm'}` on matrix units.
    pub fn tensor(&self, other: &StarHom) -> StarHom {
        let k = self.k * other.k;
        let n = self.n * other.n;
        let mut images = Vec::with_capacity(k * k);
        for i1 in 0..self.k {
            for i2 in 0..other.k {
                for j1 in 0..self.k {
                    for j2 in 0..other.k {
                        images.push(self.image(i1, j1).kron(other.image(i2, j2)));
                    }
                }
            }
        }
        StarHom { k, n, images }
    }
}

/// Check the matrix-unit relations, unitality and *-compatibility of `φ`.
pub fn verify_star_hom(phi: &StarHom, cfg: &ToleranceConfig) -> StarHomReport {
    let k = phi.source_size();
    let mut product_residual = 0.0f64;
    let mut worst = String::from("none");
    for i in 0..k {
        for j in 0..k {
            for p in 0..k {
                for q in 0..k {
                    let prod = phi.image(i, j).mul(phi.image(p, q));
                    let expected = if j == p {
                        phi.image(i, q).clone()
                    } else {
                        Matrix::zeros(phi.target_size(), phi.target_size())
                    };
                    let r = prod.sub(&expected).max_abs();
                    if r > product_residual {
                        product_residual = r;
                        worst = format!("φ(e_{i}{j})·φ(e_{p}{q})");
                    }
                }
            }
        }
    }
    let mut unit = Matrix::zeros(phi.target_size(), phi.target_size());
    for i in 0..k {
        unit = unit.add(phi.image(i, i));
    }
    let unital_residual = unit.sub(&Matrix::identity(phi.target_size())).max_abs();
    if unital_residual > product_residual && unital_residual > 0.0 {
        worst = "Σ φ(e_ii) = 1".into();
    }
    let mut star_residual = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let r = phi.image(i, j).adjoint().sub(phi.image(j, i)).max_abs();
            if r > star_residual {
                star_residual = r;
                if r > product_residual && r > unital_residual {
                    worst = format!("φ(e_{i}{j})* = φ(e_{j}{i})");
                }
            }
        }
    }
    let pass = product_residual <= cfg.abs_tol
        && unital_residual <= cfg.abs_tol
        && star_residual <= cfg.abs_tol;
    StarHomReport {
        pass,
        product_residual,
        unital_residual,
        star_residual,
        worst_relation: worst,
    }
}

/// A point of the matrix grassmannian: a unital *-subalgebra of `M_{kl}`
/// isomorphic to `M_k`, carried by a generating [`StarHom`].
#[derive(Debug, Clone)]
pub struct KSubalgebra {
    generator: StarHom,
}

impl KSubalgebra {
    pub fn new(generator: StarHom) -> Self {
        KSubalgebra { generator }
    }

    pub fn generator(&self) -> &StarHom {
        &self.generator
    }

    pub fn k(&self) -> usize {
        self.generator.source_size()
    }

    pub fn ambient_size(&self) -> usize {
        self.generator.target_size()
    }

    pub fn multiplicity(&self) -> usize {
        self.generator.multiplicity()
    }

    /// Subspace equality: mutual containment of matrix-unit images in each
    /// other's linear span.
    pub fn same_image(&self, other: &KSubalgebra, cfg: &ToleranceConfig) -> bool {
        if self.ambient_size() != other.ambient_size() || self.k() != other.k() {
            return false;
        }
        let forward = self
            .generator
            .images()
            .iter()
            .map(|m| other.generator.span_residual(m))
            .fold(0.0, f64::max);
        let backward = other
            .generator
            .images()
            .iter()
            .map(|m| self.generator.span_residual(m))
            .fold(0.0, f64::max);
        forward.max(backward) <= cfg.loose_tol()
    }
}

/// Standard embedding conjugated by a seeded Haar-random unitary of size
/// `kl`. Deterministic per seed.
pub fn random_subalgebra(k: usize, l: usize, seed: u64) -> KSubalgebra {
    let w = haar_unitary(k * l, seed);
    KSubalgebra::new(StarHom::standard(k, l).conjugated(&w))
}

/// Isometry form of a *-homomorphism: unitary `V : C^k ⊗ C^l → C^n` with
/// `φ(a) = V (a ⊗ I_l) V*`.
pub fn decompose_hom(phi: &StarHom, cfg: &ToleranceConfig) -> Result<Unitary> {
    let (k, n, l) = (phi.source_size(), phi.target_size(), phi.multiplicity());
    let p = phi.image(0, 0);
    // range of the rank-l projection φ(e_11)
    let basis = orthonormal_columns(p, cfg.rank_cutoff());
    if basis.len() != l {
        return Err(AzumayaError::Degenerate(format!(
            "φ(e_11) has rank {} instead of {l}",
            basis.len()
        )));
    }
    let mut v = Matrix::zeros(n, n);
    for i in 0..k {
        let carrier = phi.image(i, 0);
        for (j, w) in basis.iter().enumerate() {
            let col = carrier.matvec(w);
            for (r, &x) in col.iter().enumerate() {
                v[(r, i * l + j)] = x;
            }
        }
    }
    let v = Unitary::new(v, cfg.loose_tol())
        .map_err(|_| AzumayaError::Degenerate("decomposition isometry is not unitary".into()))?;
    // reconstruction residual gate
    let std = StarHom::standard(k, l);
    let recon = std.conjugated(&v);
    let res = recon.distance(phi);
    if res > cfg.loose_tol() {
        return Err(AzumayaError::Degenerate(format!(
            "decomposition reconstruction residual {res:.3e} exceeds tolerance"
        )));
    }
    Ok(v)
}

/// Matrix units of the commutant of `A` in its ambient algebra, as a
/// `StarHom` with source `l`. The commutant dimension is certified to be
/// exactly `l²` by a singular-value rank decision on the commutation
/// system before the units are constructed.
pub fn centralizer(a: &KSubalgebra, cfg: &ToleranceConfig) -> Result<StarHom> {
    let phi = a.generator();
    let (k, n, l) = (phi.source_size(), phi.target_size(), phi.multiplicity());
    let dim = commutant_dimension(phi, cfg);
    if dim != l * l {
        return Err(AzumayaError::Degenerate(format!(
            "commutant dimension {dim} differs from l² = {}",
            l * l
        )));
    }
    let v = decompose_hom(phi, cfg)?;
    let ik = Matrix::identity(k);
    let mut images = Vec::with_capacity(l * l);
    for p in 0..l {
        for q in 0..l {
            let mut e = Matrix::zeros(l, l);
            e[(p, q)] = C64::new(1.0, 0.0);
            images.push(v.conjugate(&ik.kron(&e)));
        }
    }
    StarHom::new(l, n, images)
}

/// Dimension of `{X ∈ M_n : [X, φ(e_{ij})] = 0 for all i,j}`, decided by
/// the spectrum of the accumulated commutation Gram matrix with the
/// `√abs_tol` singular-value cutoff.
pub fn commutant_dimension(phi: &StarHom, cfg: &ToleranceConfig) -> usize {
    let n = phi.target_size();
    let k = phi.source_size();
    let nn = n * n;
    // commuting with a generating set of the subalgebra is enough; the
    // sub- and superdiagonal matrix units generate M_k
    let mut gens: Vec<&Matrix> = Vec::new();
    for i in 0..k.saturating_sub(1) {
        gens.push(phi.image(i, i + 1));
        gens.push(phi.image(i + 1, i));
    }
    if k == 1 {
        gens.push(phi.image(0, 0));
    }
    // row-major vec: vec(XA - AX) = (I ⊗ Aᵀ - A ⊗ I) vec(X), and the
    // Gram term op†·op expands into Kronecker products of n×n factors:
    // (I⊗Ā − A†⊗I)(I⊗Aᵀ − A⊗I) = I⊗(ĀAᵀ) − A⊗Ā − A†⊗Aᵀ + (A†A)⊗I,
    // which avoids ever multiplying n²×n² matrices.
    let mut gram = Matrix::zeros(nn, nn);
    let id = Matrix::identity(n);
    for a in gens {
        let abar = Matrix::from_fn(n, n, |i, j| a[(i, j)].conj());
        let at = Matrix::from_fn(n, n, |i, j| a[(j, i)]);
        let ad = a.adjoint();
        let term = id
            .kron(&abar.mul(&at))
            .add(&ad.mul(a).kron(&id))
            .sub(&a.kron(&abar))
            .sub(&ad.kron(&at));
        gram = gram.add(&term);
    }
    let (evals, _) = hermitian_eig(&gram);
    let cutoff = cfg.rank_cutoff();
    evals
        .iter()
        .filter(|&&lam| lam.max(0.0).sqrt() <= cutoff)
        .count()
}

/// Noether-Skolem intertwiner: a unitary `U` with `ψ = Ad(U) ∘ φ`.
///
/// Builds `S = Σ_i ψ(e_{i1}) Y φ(e_{1i})` for a seeded random `Y`, takes the
/// unitary polar factor and retries with fresh `Y` while `S` is numerically
/// singular or the conjugation residual is out of tolerance.
pub fn noether_skolem(phi: &StarHom, psi: &StarHom, cfg: &ToleranceConfig) -> Result<Unitary> {
    if phi.source_size() != psi.source_size() || phi.target_size() != psi.target_size() {
        return Err(AzumayaError::DimensionMismatch(
            "intertwined homomorphisms must share source and target sizes".into(),
        ));
    }
    let n = phi.target_size();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut last_residual = f64::INFINITY;
    for _attempt in 0..cfg.retry_limit {
        let y = Matrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        match intertwiner_from_seed(phi, psi, &y) {
            Some(u) => {
                let residual = psi.distance(&phi.conjugated(&u));
                if residual <= cfg.loose_tol() {
                    return Ok(u);
                }
                last_residual = last_residual.min(residual);
            }
            None => continue,
        }
    }
    Err(AzumayaError::RetryExhausted(format!(
        "no unitary intertwiner found after {} attempts (best residual {last_residual:.3e}); \
         inputs are likely not conjugate or not valid homomorphisms",
        cfg.retry_limit
    )))
}

/// One intertwiner attempt from a fixed seed matrix `Y`; `None` when the
/// candidate is numerically singular.
pub(crate) fn intertwiner_from_seed(phi: &StarHom, psi: &StarHom, y: &Matrix) -> Option<Unitary> {
    let k = phi.source_size();
    let n = phi.target_size();
    let mut s = Matrix::zeros(n, n);
    for i in 0..k {
        s = s.add(&psi.image(i, 0).mul(y).mul(phi.image(0, i)));
    }
    s.polar_unitary().ok().map(Unitary::from_unchecked)
}

/// An isomorphism between two matrix subalgebras of the same ambient `M_n`,
/// sending the matrix units of `source` to those of `target`.
#[derive(Debug, Clone)]
pub struct AlgebraIso {
    pub source: StarHom,
    pub target: StarHom,
}

impl AlgebraIso {
    pub fn new(source: StarHom, target: StarHom) -> Result<Self> {
        if source.source_size() != target.source_size()
            || source.target_size() != target.target_size()
        {
            return Err(AzumayaError::DimensionMismatch(
                "isomorphism endpoints must share source and ambient sizes".into(),
            ));
        }
        Ok(AlgebraIso { source, target })
    }

    pub fn identity_on(phi: &StarHom) -> Self {
        AlgebraIso {
            source: phi.clone(),
            target: phi.clone(),
        }
    }

    /// Apply to an element of the source subalgebra (by coefficient
    /// extraction and reassembly in the target).
    pub fn map(&self, y: &Matrix) -> Matrix {
        self.target.apply(&self.source.coefficients_of(y))
    }
}

/// Partial trace over the first tensor factor of `m ∈ M_k ⊗ M_l`,
/// normalized: the `l×l` matrix `x` with `m ≈ I_k ⊗ x` when `m` commutes
/// with `M_k ⊗ I`.
pub fn partial_trace_first(m: &Matrix, k: usize, l: usize) -> Matrix {
    Matrix::from_fn(l, l, |p, q| {
        (0..k).map(|i| m[(i * l + p, i * l + q)]).sum::<C64>() / k as f64
    })
}

/// Partial trace over the second factor: the `k×k` matrix `x` with
/// `m ≈ x ⊗ I_l` when `m` commutes with `I ⊗ M_l`.
pub fn partial_trace_second(m: &Matrix, k: usize, l: usize) -> Matrix {
    Matrix::from_fn(k, k, |i, j| {
        (0..l).map(|p| m[(i * l + p, j * l + p)]).sum::<C64>() / l as f64
    })
}

/// The unique (up to phase) ambient unitary implementing a compatible pair
/// `(λ, μ)`: `λ` an isomorphism of k-subalgebras, `μ` an isomorphism of
/// their centralizers. `Ad(u)` restricts to `λ` on the k-subalgebra and to
/// `μ` on its commutant.
pub fn ambient_from_pair(
    lambda: &AlgebraIso,
    mu: &AlgebraIso,
    cfg: &ToleranceConfig,
) -> Result<Unitary> {
    let k = lambda.source.source_size();
    let n = lambda.source.target_size();
    let l = lambda.source.multiplicity();
    if mu.source.source_size() != l || mu.source.target_size() != n {
        return Err(AzumayaError::DimensionMismatch(format!(
            "centralizer isomorphism must have source size {l} in M_{n}"
        )));
    }
    // μ's domain must commute with λ's domain (and likewise for targets)
    let mismatch = |a: &StarHom, b: &StarHom| -> f64 {
        let mut worst = 0.0f64;
        for x in a.images() {
            for y in b.images() {
                worst = worst.max(x.mul(y).sub(&y.mul(x)).max_abs());
            }
        }
        worst
    };
    if mismatch(&lambda.source, &mu.source) > cfg.loose_tol()
        || mismatch(&lambda.target, &mu.target) > cfg.loose_tol()
    {
        return Err(AzumayaError::Degenerate(
            "centralizer mismatch: μ's domain does not commute with λ's domain".into(),
        ));
    }
    let va = decompose_hom(&lambda.source, cfg)?;
    let vb = decompose_hom(&lambda.target, cfg)?;
    // In the adapted coordinates λ is the identity on the first factor, so
    // the whole content of the pair sits in the second factor: transport
    // μ's matrix units to l×l coordinate automorphisms and intertwine them.
    let coord_units = |v: &Unitary, units: &StarHom| -> Result<StarHom> {
        let images = units
            .images()
            .iter()
            .map(|f| partial_trace_first(&v.adjoint().conjugate(f), k, l))
            .collect();
        StarHom::new(l, l, images)
    };
    let h_source = coord_units(&va, &mu.source)?;
    let h_target = coord_units(&vb, &mu.target)?;
    for h in [&h_source, &h_target] {
        let rep = verify_star_hom(h, cfg);
        if rep.max_residual() > cfg.loose_tol() {
            return Err(AzumayaError::Degenerate(format!(
                "centralizer units do not reduce to coordinate matrix units \
                 (residual {:.3e})",
                rep.max_residual()
            )));
        }
    }
    let w = noether_skolem(&h_source, &h_target, cfg)?;
    let u = vb
        .mul(&Unitary::identity(k).kron(&w))
        .mul(&va.adjoint());
    // verify both restrictions
    let lam_res = lambda.target.distance(&lambda.source.conjugated(&u));
    let mu_res = mu.target.distance(&mu.source.conjugated(&u));
    if lam_res.max(mu_res) > cfg.loose_tol() {
        return Err(AzumayaError::Degenerate(format!(
            "induced automorphism residual {:.3e} exceeds tolerance",
            lam_res.max(mu_res)
        )));
    }
    Ok(u)
}
