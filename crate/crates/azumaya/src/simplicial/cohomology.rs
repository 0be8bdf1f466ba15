//! Cohomology of a finite complex via Smith normal form, with explicit
//! coordinate maps from cocycles to (free, torsion) coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cochain::{check_cocycle, coboundary, Cochain, Ring};
use super::complex::SimplicialComplex;
use super::snf::{imat_from_i64, imat_identity, imat_mul, imat_vec, smith_normal_form, IMat};
use crate::{AzumayaError, Result};

/// `H^q(X; R)` together with representative cocycles and a coordinate map.
///
/// Coordinates are ordered torsion-first: one coordinate per invariant
/// factor `> 1` (normalized to `[0, factor)`), then `free_rank` integer
/// coordinates. The map vanishes exactly on coboundaries.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub ring: Ring,
    pub free_rank: usize,
    /// Invariant factors > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
    reps: Vec<Cochain>,
    n_q: usize,
    /// Z: kernel coordinates start at this row of `v_inv·c`.
    kernel_rank: usize,
    /// ModK: per-coordinate lattice stretch `k / gcd(d_i, k)`.
    stretch: Vec<BigInt>,
    v_inv: IMat,
    p: IMat,
    /// Full diagonal of the relations SNF (0 marks a free coordinate).
    rel_diag: Vec<BigInt>,
    /// Indices of retained coordinates: torsion (factor > 1) then free.
    sel: Vec<usize>,
}

impl CohomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn coordinate_count(&self) -> usize {
        self.sel.len()
    }

    /// Representative cocycle of the i-th coordinate (torsion-first order).
    pub fn representative(&self, i: usize) -> &Cochain {
        &self.reps[i]
    }

    /// Coordinates of a cocycle. Errors when `δc ≠ 0` (with the offending
    /// simplex) or when degree/ring disagree.
    pub fn class_of(&self, complex: &SimplicialComplex, c: &Cochain) -> Result<Vec<BigInt>> {
        if c.degree != self.degree || c.ring != self.ring {
            return Err(AzumayaError::CochainMismatch(format!(
                "expected a degree-{} cochain over {:?}",
                self.degree, self.ring
            )));
        }
        check_cocycle(complex, c)?;
        if self.n_q == 0 {
            return Ok(vec![]);
        }
        let cv: Vec<BigInt> = c.values.iter().map(|&v| BigInt::from(v)).collect();
        let y = imat_vec(&self.v_inv, &cv);
        let z: Vec<BigInt> = match self.ring {
            Ring::Z => {
                for (i, yi) in y.iter().enumerate().take(self.kernel_rank) {
                    debug_assert!(yi.is_zero(), "cocycle has nonzero image coordinate {i}");
                }
                y[self.kernel_rank..].to_vec()
            }
            Ring::ModK(_) => y
                .iter()
                .zip(&self.stretch)
                .map(|(yi, s)| {
                    debug_assert!((yi % s).is_zero());
                    yi / s
                })
                .collect(),
        };
        let full = imat_vec(&self.p, &z);
        Ok(self
            .sel
            .iter()
            .map(|&i| {
                let t = &self.rel_diag[i];
                if t.is_zero() {
                    full[i].clone()
                } else {
                    full[i].mod_floor(t)
                }
            })
            .collect())
    }

    pub fn is_zero_class(&self, complex: &SimplicialComplex, c: &Cochain) -> Result<bool> {
        Ok(self.class_of(complex, c)?.iter().all(BigInt::is_zero))
    }

    /// Group description like `Z^2`, `Z/2`, `Z ⊕ Z/4` or `0`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// Compute `H^q(X; R)` by Smith normal form over Z. Mod-k coefficients are
/// handled by folding the modulus into the kernel lattice of the integer
/// coboundary.
pub fn cohomology(complex: &SimplicialComplex, degree: usize, ring: Ring) -> CohomologyGroup {
    let n_q = complex.count(degree);
    if n_q == 0 {
        return CohomologyGroup {
            degree,
            ring,
            free_rank: 0,
            torsion: vec![],
            reps: vec![],
            n_q: 0,
            kernel_rank: 0,
            stretch: vec![],
            v_inv: vec![],
            p: vec![],
            rel_diag: vec![],
            sel: vec![],
        };
    }
    let d = imat_from_i64(&complex.coboundary_matrix(degree));
    let e_cols = if degree == 0 {
        0
    } else {
        complex.count(degree - 1)
    };
    let e = if degree == 0 {
        vec![vec![]; n_q]
    } else {
        imat_from_i64(&complex.coboundary_matrix(degree - 1))
    };

    let snf_d = smith_normal_form(&d);
    let v_inv = if snf_d.col_t_inv.is_empty() {
        imat_identity(n_q)
    } else {
        snf_d.col_t_inv.clone()
    };
    let v = if snf_d.col_t.is_empty() {
        imat_identity(n_q)
    } else {
        snf_d.col_t.clone()
    };
    let r = snf_d.rank;

    match ring {
        Ring::Z => {
            let z = n_q - r;
            // relations: coboundaries expressed in kernel coordinates
            let ve = imat_mul(&v_inv, &e);
            let m: IMat = (r..n_q).map(|i| ve[i].clone()).collect();
            let (p, p_inv, rel_diag) = relations_snf(&m, z, e_cols);
            let (sel, torsion, free_rank) = select(&rel_diag, z);
            // representatives: columns of V[:, r..]·P^{-1}
            let reps = sel
                .iter()
                .map(|&i| {
                    let values = (0..n_q)
                        .map(|row| {
                            let s: BigInt =
                                (0..z).map(|j| &v[row][r + j] * &p_inv[j][i]).sum();
                            i64::try_from(&s).expect("representative fits in i64")
                        })
                        .collect();
                    Cochain {
                        degree,
                        ring,
                        values,
                    }
                })
                .collect();
            CohomologyGroup {
                degree,
                ring,
                free_rank,
                torsion,
                reps,
                n_q,
                kernel_rank: r,
                stretch: vec![],
                v_inv,
                p,
                rel_diag,
                sel,
            }
        }
        Ring::ModK(k) => {
            let kb = BigInt::from(k);
            let stretch: Vec<BigInt> = (0..n_q)
                .map(|i| {
                    if i < r {
                        &kb / snf_d.diag[i].gcd(&kb)
                    } else {
                        BigInt::one()
                    }
                })
                .collect();
            // relations: [E | k·I] pulled into lattice coordinates
            let ve = imat_mul(&v_inv, &e);
            let m: IMat = (0..n_q)
                .map(|i| {
                    let mut row: Vec<BigInt> = ve[i]
                        .iter()
                        .map(|x| {
                            debug_assert!((x % &stretch[i]).is_zero());
                            x / &stretch[i]
                        })
                        .collect();
                    for j in 0..n_q {
                        let x = &kb * &v_inv[i][j];
                        debug_assert!((&x % &stretch[i]).is_zero());
                        row.push(x / &stretch[i]);
                    }
                    row
                })
                .collect();
            let (p, p_inv, rel_diag) = relations_snf(&m, n_q, e_cols + n_q);
            let (sel, torsion, free_rank) = select(&rel_diag, n_q);
            debug_assert_eq!(free_rank, 0, "mod-k cohomology is pure torsion");
            let reps = sel
                .iter()
                .map(|&i| {
                    let values = (0..n_q)
                        .map(|row| {
                            let s: BigInt = (0..n_q)
                                .map(|j| &v[row][j] * &stretch[j] * &p_inv[j][i])
                                .sum();
                            i64::try_from(&s.mod_floor(&kb)).expect("fits in i64")
                        })
                        .collect();
                    Cochain {
                        degree,
                        ring,
                        values,
                    }
                })
                .collect();
            CohomologyGroup {
                degree,
                ring,
                free_rank,
                torsion,
                reps,
                n_q,
                kernel_rank: r,
                stretch,
                v_inv,
                p,
                rel_diag,
                sel,
            }
        }
    }
}

/// SNF of the relation matrix; returns `(P, P^{-1}, full diagonal padded
/// with zeros to the coordinate count)`.
fn relations_snf(m: &IMat, coords: usize, rel_count: usize) -> (IMat, IMat, Vec<BigInt>) {
    if coords == 0 {
        return (vec![], vec![], vec![]);
    }
    if rel_count == 0 {
        let mut diag = vec![BigInt::zero(); coords];
        diag.truncate(coords);
        return (imat_identity(coords), imat_identity(coords), diag);
    }
    let snf = smith_normal_form(m);
    let mut diag = snf.diag.clone();
    diag.resize(coords, BigInt::zero());
    (snf.row_t, snf.row_t_inv, diag)
}

/// Retained coordinates: torsion (factor > 1) first, then free (factor 0).
fn select(rel_diag: &[BigInt], coords: usize) -> (Vec<usize>, Vec<BigInt>, usize) {
    let one = BigInt::one();
    let mut sel: Vec<usize> = (0..coords)
        .filter(|&i| !rel_diag[i].is_zero() && rel_diag[i] > one)
        .collect();
    let torsion = sel.iter().map(|&i| rel_diag[i].clone()).collect();
    let free: Vec<usize> = (0..coords).filter(|&i| rel_diag[i].is_zero()).collect();
    let free_rank = free.len();
    sel.extend(free);
    (sel, torsion, free_rank)
}

/// Bockstein at cochain level for the sequence `Z → Z → Z/k`: lift the
/// mod-k cocycle to its canonical integer representative `ĉ`, then
/// `δĉ = k·b` for a unique integral cocycle `b`, which is returned.
pub fn bockstein(complex: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
    let Ring::ModK(k) = c.ring else {
        return Err(AzumayaError::CochainMismatch(
            "bockstein needs mod-k coefficients".into(),
        ));
    };
    check_cocycle(complex, c)?;
    let lift = Cochain {
        degree: c.degree,
        ring: Ring::Z,
        values: c.values.clone(), // canonical representative in [0, k)
    };
    let dlift = coboundary(complex, &lift);
    let values = dlift
        .values
        .iter()
        .map(|&v| {
            debug_assert_eq!(v % k, 0, "lift coboundary must be divisible by k");
            v / k
        })
        .collect();
    Ok(Cochain {
        degree: c.degree + 1,
        ring: Ring::Z,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::super::datasets;
    use super::*;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};

    fn h(x: &SimplicialComplex, q: usize, ring: Ring) -> CohomologyGroup {
        cohomology(x, q, ring)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn sphere_cohomology() {
        let x = datasets::tetrahedron_boundary();
        assert_eq!(h(&x, 0, Ring::Z).describe(), "Z");
        assert_eq!(h(&x, 1, Ring::Z).describe(), "0");
        assert_eq!(h(&x, 2, Ring::Z).describe(), "Z");
    }

    #[test]
    fn rp2_cohomology() {
        let x = datasets::rp2_six();
        assert_eq!(h(&x, 0, Ring::Z).describe(), "Z");
        assert_eq!(h(&x, 1, Ring::Z).describe(), "0");
        assert_eq!(h(&x, 2, Ring::Z).describe(), "Z/2");
        assert_eq!(h(&x, 1, Ring::ModK(2)).describe(), "Z/2");
        assert_eq!(h(&x, 2, Ring::ModK(2)).describe(), "Z/2");
    }

    #[test]
    fn torus_cohomology() {
        let x = datasets::torus_seven();
        assert_eq!(h(&x, 0, Ring::Z).describe(), "Z");
        assert_eq!(h(&x, 1, Ring::Z).describe(), "Z^2");
        assert_eq!(h(&x, 2, Ring::Z).describe(), "Z");
        assert_eq!(h(&x, 1, Ring::ModK(2)).torsion, vec![big(2), big(2)]);
    }

    #[test]
    fn rp2_x_s1_has_two_torsion_in_h3() {
        let x = datasets::rp2_x_s1();
        let h3 = h(&x, 3, Ring::Z);
        assert_eq!(h3.describe(), "Z/2");
        let h2 = h(&x, 2, Ring::ModK(2));
        assert_eq!(h2.torsion, vec![big(2), big(2)]);
    }

    #[test]
    fn cone_is_acyclic_in_positive_degrees() {
        let x = datasets::cone(&datasets::rp2_six());
        for q in 1..=x.dim() {
            assert!(h(&x, q, Ring::Z).is_trivial(), "H^{q} of a cone");
            assert!(h(&x, q, Ring::ModK(6)).is_trivial());
        }
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers() {
        for x in [
            datasets::tetrahedron_boundary(),
            datasets::rp2_six(),
            datasets::torus_seven(),
            datasets::suspension_rp2(),
        ] {
            let chi: i64 = (0..=x.dim())
                .map(|q| {
                    let b = h(&x, q, Ring::Z).free_rank as i64;
                    if q % 2 == 0 {
                        b
                    } else {
                        -b
                    }
                })
                .sum();
            assert_eq!(chi, x.euler_characteristic());
        }
    }

    #[test]
    fn coordinate_map_vanishes_exactly_on_coboundaries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for x in [datasets::rp2_six(), datasets::torus_seven()] {
            for ring in [Ring::Z, Ring::ModK(2), Ring::ModK(6)] {
                let g = h(&x, 1, ring);
                for _ in 0..5 {
                    let c = Cochain::new(
                        &x,
                        0,
                        ring,
                        (0..x.count(0)).map(|_| rng.gen_range(-7..8)).collect(),
                    )
                    .unwrap();
                    let db = coboundary(&x, &c);
                    assert!(g.is_zero_class(&x, &db).unwrap());
                }
                // zero cochain maps to zero coordinates
                assert!(g
                    .is_zero_class(&x, &Cochain::zero(&x, 1, ring))
                    .unwrap());
            }
        }
    }

    #[test]
    fn representatives_have_unit_coordinates() {
        for x in [
            datasets::rp2_six(),
            datasets::torus_seven(),
            datasets::rp2_x_s1(),
        ] {
            for q in 1..=x.dim() {
                for ring in [Ring::Z, Ring::ModK(2)] {
                    let g = h(&x, q, ring);
                    for i in 0..g.coordinate_count() {
                        let coords = g.class_of(&x, g.representative(i)).unwrap();
                        for (j, c) in coords.iter().enumerate() {
                            let expect = if i == j { big(1) } else { big(0) };
                            assert_eq!(*c, expect, "{:?} deg {q} rep {i}", ring);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rp2_generator_has_nonzero_class() {
        let x = datasets::rp2_six();
        let g = h(&x, 1, Ring::ModK(2));
        let gen = g.representative(0).clone();
        assert!(!g.is_zero_class(&x, &gen).unwrap());
        let coords = g.class_of(&x, &gen).unwrap();
        assert_eq!(coords, vec![big(1)]);
    }

    #[test]
    fn non_cocycle_rejected() {
        let x = datasets::tetrahedron_boundary();
        let g = h(&x, 1, Ring::Z);
        let mut vals = vec![0i64; x.count(1)];
        vals[2] = 1;
        let c = Cochain::new(&x, 1, Ring::Z, vals).unwrap();
        assert!(matches!(
            g.class_of(&x, &c),
            Err(AzumayaError::NotACocycle { .. })
        ));
    }

    #[test]
    fn torus_cup_product_generates_h2() {
        let x = datasets::torus_seven();
        let h1 = h(&x, 1, Ring::Z);
        let h2 = h(&x, 2, Ring::Z);
        let a = h1.representative(0).clone();
        let b = h1.representative(1).clone();
        let ab = super::super::cochain::cup_product(&x, &a, &b).unwrap();
        let coords = h2.class_of(&x, &ab).unwrap();
        assert_eq!(coords.len(), 1);
        assert!(coords[0].abs() == big(1), "got {coords:?}");
    }

    #[test]
    fn bockstein_vanishes_on_integral_reductions() {
        let x = datasets::rp2_six();
        let h2z = h(&x, 2, Ring::Z);
        // reduction of an integral cocycle has trivial bockstein class
        let h1z = h(&x, 0, Ring::Z); // use a 0-cocycle reduction in degree 0
        let _ = h1z;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let c0 = Cochain::new(
            &x,
            0,
            Ring::Z,
            (0..x.count(0)).map(|_| rng.gen_range(-3..4)).collect(),
        )
        .unwrap();
        let z1 = coboundary(&x, &c0); // an integral 1-cocycle
        let red = z1.reduce_mod(2);
        let b = bockstein(&x, &red).unwrap();
        assert!(h2z.is_zero_class(&x, &b).unwrap());
    }

    #[test]
    fn bockstein_of_rp2_generator_is_nonzero() {
        let x = datasets::rp2_six();
        let g1 = h(&x, 1, Ring::ModK(2));
        let h2z = h(&x, 2, Ring::Z);
        let gen = g1.representative(0).clone();
        let b = bockstein(&x, &gen).unwrap();
        let coords = h2z.class_of(&x, &b).unwrap();
        assert_eq!(coords, vec![big(1)]);
    }

    #[test]
    fn bockstein_additive_and_lift_independent() {
        let x = datasets::rp2_six();
        let g1 = h(&x, 1, Ring::ModK(2));
        let h2z = h(&x, 2, Ring::Z);
        let gen = g1.representative(0).clone();
        // shift the cocycle by a mod-2 coboundary: class of bockstein is equal
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c0 = Cochain::new(
            &x,
            0,
            Ring::ModK(2),
            (0..x.count(0)).map(|_| rng.gen_range(0..2)).collect(),
        )
        .unwrap();
        let shifted = gen.add(&coboundary(&x, &c0)).unwrap();
        let b1 = h2z.class_of(&x, &bockstein(&x, &gen).unwrap()).unwrap();
        let b2 = h2z.class_of(&x, &bockstein(&x, &shifted).unwrap()).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn bockstein_on_product_type_class_in_rp2_x_s1() {
        // generator of H²(RP²×S¹; Z/2) of product type has nonzero torsion
        // image in H³(·; Z)
        let x = datasets::rp2_x_s1();
        let h2 = h(&x, 2, Ring::ModK(2));
        let h3z = h(&x, 3, Ring::Z);
        let mut found_nonzero = false;
        for i in 0..h2.coordinate_count() {
            let b = bockstein(&x, h2.representative(i)).unwrap();
            if !h3z.is_zero_class(&x, &b).unwrap() {
                found_nonzero = true;
            }
        }
        assert!(found_nonzero);
    }
}
