//! Brauer classes of PU(k)-cocycles: the μ_k scalar-defect class in
//! H²(X;Z/k) together with its integral Bockstein in H³(X;Z).

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cech::{scalar_defect, PUCocycle};
use crate::matalg::{su_normalize, Matrix, Unitary, C64};
use crate::simplicial::{
    bockstein, check_cocycle, cohomology, Cochain, Ring, SimplicialComplex,
};
use crate::tol::ToleranceConfig;
use crate::{AzumayaError, Result};

/// The pair of cohomology coordinates classifying a PU(k)-cocycle: its
/// defect class in H²(X;Z/k) and the Bockstein image in the k-torsion of
/// H³(X;Z).
#[derive(Debug, Clone)]
pub struct BrauerClass {
    pub k: usize,
    /// Coordinates in H²(X;Z/k), torsion-first.
    pub h2: Vec<BigInt>,
    /// Torsion coordinates in H³(X;Z) (the Bockstein lands in torsion).
    pub h3: Vec<BigInt>,
    /// Shapes of the two groups, e.g. `"Z/2 ⊕ Z/2"`.
    pub h2_group: String,
    pub h3_group: String,
}

impl BrauerClass {
    pub fn is_trivial(&self) -> bool {
        self.h2.iter().all(BigInt::is_zero)
    }

    pub fn h3_is_trivial(&self) -> bool {
        self.h3.iter().all(BigInt::is_zero)
    }
}

/// Serre's construction at desk scale: scalar defect → H²(X;Z/k) class →
/// Bockstein → H³(X;Z) torsion coordinates.
pub fn brauer_class(c: &PUCocycle, cfg: &ToleranceConfig) -> Result<BrauerClass> {
    let x = c.complex();
    let k = c.k();
    let m = scalar_defect(c, cfg)?;
    let h2g = cohomology(x, 2, Ring::ModK(k as i64));
    let h2 = h2g.class_of(x, &m)?;
    let b = bockstein(x, &m)?;
    let h3g = cohomology(x, 3, Ring::Z);
    let coords = h3g.class_of(x, &b)?;
    let torsion_count = h3g.torsion.len();
    debug_assert!(
        coords[torsion_count..].iter().all(BigInt::is_zero),
        "bockstein image must be torsion"
    );
    Ok(BrauerClass {
        k,
        h2,
        h3: coords[..torsion_count].to_vec(),
        h2_group: h2g.describe(),
        h3_group: h3g.describe(),
    })
}

/// Clock and shift matrices with `ZX = ωXZ`, `ω = e^{2πi/k}`.
fn clock_shift(k: usize) -> (Matrix, Matrix) {
    let x = Matrix::from_fn(k, k, |r, q| {
        if r == (q + 1) % k {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let z = Matrix::from_fn(k, k, |r, q| {
        if r == q {
            C64::from_polar(1.0, TAU * r as f64 / k as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    (x, z)
}

fn matrix_power(m: &Matrix, e: usize) -> Matrix {
    let mut out = Matrix::identity(m.rows());
    for _ in 0..e {
        out = out.mul(m);
    }
    out
}

/// PU(k)-cocycle `u_{αβ} = su_normalize(X^{a(αβ)} Z^{b(αβ)})` from two
/// mod-k 1-cocycles. Its scalar-defect class is `[b∪a] = −[a∪b]`; the sign
/// comes from `Z^{b}X^{a} = ω^{ab}X^{a}Z^{b}` and is frozen here.
pub fn realize_cup_cocycle(
    a: &Cochain,
    b: &Cochain,
    complex: &SimplicialComplex,
    k: usize,
) -> Result<PUCocycle> {
    let ring = Ring::ModK(k as i64);
    if a.ring != ring || b.ring != ring || a.degree != 1 || b.degree != 1 {
        return Err(AzumayaError::CochainMismatch(
            "need two mod-k 1-cochains".into(),
        ));
    }
    check_cocycle(complex, a)?;
    check_cocycle(complex, b)?;
    let (x, z) = clock_shift(k);
    let edges = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(&ae, &be)| {
            let m = matrix_power(&x, ae as usize).mul(&matrix_power(&z, be as usize));
            Ok(su_normalize(&Unitary::new(m, 1e-9)?))
        })
        .collect::<Result<Vec<Unitary>>>()?;
    PUCocycle::new(complex.clone(), k, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::verify_pu_cocycle;
    use crate::matalg::haar_unitary;
    use crate::simplicial::{coboundary, cup_product, datasets, pullback};
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn clock_shift_commutation() {
        for k in [2usize, 3, 5] {
            let (x, z) = clock_shift(k);
            let lhs = z.mul(&x);
            let rhs = x.mul(&z).scale(C64::from_polar(1.0, TAU / k as f64));
            assert!(lhs.sub(&rhs).max_abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn zero_cochains_give_identity_cocycle() {
        let x = datasets::torus_seven();
        let zero = Cochain::zero(&x, 1, Ring::ModK(3));
        let c = realize_cup_cocycle(&zero, &zero, &x, 3).unwrap();
        let m = scalar_defect(&c, &cfg()).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn torus_cup_cocycle_has_the_cup_class() {
        let x = datasets::torus_seven();
        let h1 = cohomology(&x, 1, Ring::ModK(2));
        let h2 = cohomology(&x, 2, Ring::ModK(2));
        let a = h1.representative(0).clone();
        let b = h1.representative(1).clone();
        let c = realize_cup_cocycle(&a, &b, &x, 2).unwrap();
        assert!(verify_pu_cocycle(&c, &cfg()).pass);
        let m = scalar_defect(&c, &cfg()).unwrap();
        let expect = cup_product(&x, &b, &a).unwrap();
        assert_eq!(
            h2.class_of(&x, &m).unwrap(),
            h2.class_of(&x, &expect).unwrap()
        );
        // mod 2 the cup square of a basis pairing is the nonzero class
        assert!(!h2.is_zero_class(&x, &m).unwrap());
    }

    #[test]
    fn coboundary_input_does_not_change_the_class() {
        let x = datasets::torus_seven();
        let h1 = cohomology(&x, 1, Ring::ModK(2));
        let h2 = cohomology(&x, 2, Ring::ModK(2));
        let b = h1.representative(1).clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let d = Cochain::new(
            &x,
            0,
            Ring::ModK(2),
            (0..x.count(0)).map(|_| rng.gen_range(0..2)).collect(),
        )
        .unwrap();
        let a0 = Cochain::zero(&x, 1, Ring::ModK(2));
        let a1 = coboundary(&x, &d);
        let m0 = scalar_defect(&realize_cup_cocycle(&a0, &b, &x, 2).unwrap(), &cfg()).unwrap();
        let m1 = scalar_defect(&realize_cup_cocycle(&a1, &b, &x, 2).unwrap(), &cfg()).unwrap();
        assert_eq!(
            h2.class_of(&x, &m0).unwrap(),
            h2.class_of(&x, &m1).unwrap()
        );
    }

    #[test]
    fn exact_cocycle_has_trivial_brauer_class() {
        let x = datasets::torus_seven();
        let w: Vec<Unitary> = (0..x.count(0))
            .map(|v| haar_unitary(2, 500 + v as u64))
            .collect();
        let c = PUCocycle::exact_from_vertices(x, &w).unwrap();
        let bc = brauer_class(&c, &cfg()).unwrap();
        assert!(bc.is_trivial());
        assert!(bc.h3_is_trivial());
    }

    #[test]
    fn torus_cup_class_has_zero_bockstein() {
        let x = datasets::torus_seven();
        let h1 = cohomology(&x, 1, Ring::ModK(2));
        let c = realize_cup_cocycle(
            h1.representative(0),
            h1.representative(1),
            &x,
            2,
        )
        .unwrap();
        let bc = brauer_class(&c, &cfg()).unwrap();
        assert!(!bc.is_trivial());
        assert!(bc.h3_is_trivial()); // H³(T²) = 0
        assert_eq!(bc.h3.len(), 0);
    }

    #[test]
    fn rp2_x_s1_cup_class_has_nonzero_bockstein() {
        let x = datasets::rp2_x_s1();
        let rp2 = datasets::rp2_six();
        let s1 = datasets::circle(3);
        // pull back the H¹ generators of the two factors
        let to_rp2: Vec<usize> = (0..x.vertex_count()).map(|v| v / 3).collect();
        let to_s1: Vec<usize> = (0..x.vertex_count()).map(|v| v % 3).collect();
        let ga = cohomology(&rp2, 1, Ring::ModK(2));
        let a = pullback(&x, &rp2, &to_rp2, ga.representative(0)).unwrap();
        // S¹ has H¹(Z/2) = Z/2; use the mod-2 reduction of the winding
        // cocycle: value 1 on the wrap-around edge {0,2}
        let mut bvals = vec![0i64; s1.count(1)];
        bvals[s1.index_of(1, &[0, 2]).unwrap()] = 1;
        let bgen = Cochain::new(&s1, 1, Ring::ModK(2), bvals).unwrap();
        let b = pullback(&x, &s1, &to_s1, &bgen).unwrap();

        let c = realize_cup_cocycle(&a, &b, &x, 2).unwrap();
        let bc = brauer_class(&c, &cfg()).unwrap();
        assert!(!bc.is_trivial(), "h2 class must be nonzero");
        assert!(!bc.h3_is_trivial(), "bockstein must be nonzero");
        assert_eq!(bc.h3_group, "Z/2");
        assert_eq!(bc.h3, vec![big(1)]);
    }

    #[test]
    fn tetrahedron_h2_vanishes_iff_defect_is_a_coboundary() {
        // brute force over all μ_2 1-cochains on the 6 edges
        let x = datasets::tetrahedron_boundary();
        let h2 = cohomology(&x, 2, Ring::ModK(2));
        let exhaustive_coboundary = |m: &Cochain| {
            (0..1u64 << x.count(1)).any(|bits| {
                let vals = (0..x.count(1)).map(|e| ((bits >> e) & 1) as i64).collect();
                let d = Cochain::new(&x, 1, Ring::ModK(2), vals).unwrap();
                coboundary(&x, &d) == *m
            })
        };
        // the equivalence holds for every mod-2 2-cochain on this nerve
        for bits in 0..1u64 << x.count(2) {
            let vals = (0..x.count(2)).map(|t| ((bits >> t) & 1) as i64).collect();
            let m = Cochain::new(&x, 2, Ring::ModK(2), vals).unwrap();
            let class_zero = h2.is_zero_class(&x, &m).unwrap();
            assert_eq!(class_zero, exhaustive_coboundary(&m), "bits {bits}");
        }
        // and in particular for defect cochains of actual cocycles
        let c = crate::cech::pu::quaternion_tetrahedron();
        let m = scalar_defect(&c, &cfg()).unwrap();
        assert!(h2.is_zero_class(&x, &m).unwrap());
        assert!(exhaustive_coboundary(&m));
    }
}
