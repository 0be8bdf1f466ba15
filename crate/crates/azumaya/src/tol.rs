/// Numerical policy shared by every tolerance-based operation.
///
/// `abs_tol` is the absolute entrywise tolerance for matrix comparisons.
/// Rank decisions use the singular-value cutoff `rank_cutoff()` which
/// separates accumulated `abs_tol`-scale residuals from genuine rank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub retry_limit: u32,
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            abs_tol: 1e-9,
            retry_limit: 8,
            rng_seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn new(abs_tol: f64, rng_seed: u64) -> Self {
        assert!(abs_tol > 0.0, "abs_tol must be positive");
        ToleranceConfig {
            abs_tol,
            rng_seed,
            ..Default::default()
        }
    }

    pub fn with_seed(self, rng_seed: u64) -> Self {
        ToleranceConfig { rng_seed, ..self }
    }

    /// Singular values above this count as nonzero.
    pub fn rank_cutoff(&self) -> f64 {
        self.abs_tol.sqrt()
    }

    /// Residual budget for multi-step constructions (decompositions,
    /// intertwiners) that compose several tolerance-checked steps.
    pub fn loose_tol(&self) -> f64 {
        10.0 * self.abs_tol
    }
}
