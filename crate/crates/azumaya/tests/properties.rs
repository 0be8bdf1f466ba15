//! Randomized property checks for the exact and numerical kernels.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use azumaya::matalg::{su_normalize, C64, Matrix, Unitary};
use azumaya::simplicial::snf::{imat_from_i64, imat_mul, smith_normal_form, IMat};

fn imat_det(a: &IMat) -> BigInt {
    // Laplace expansion; transforms here are at most 5×5
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return a[0][0].clone();
    }
    let mut det = BigInt::zero();
    for (j, entry) in a[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: IMat = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry * imat_det(&minor);
        if j % 2 == 0 {
            det += cofactor;
        } else {
            det -= cofactor;
        }
    }
    det
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Smith normal form satisfies row_t·A·col_t = diag with
    /// unimodular transforms, exact inverses, and a divisibility chain.
    #[test]
    fn smith_normal_form_properties(
        entries in proptest::collection::vec(-9i64..=9, 12),
        rows in 2usize..=4,
    ) {
        let cols = 12 / rows;
        let a: Vec<Vec<i64>> = (0..rows)
            .map(|r| entries[r * cols..(r + 1) * cols].to_vec())
            .collect();
        let a = imat_from_i64(&a);
        let s = smith_normal_form(&a);

        // row_t · a · col_t is the diagonal
        let d = imat_mul(&imat_mul(&s.row_t, &a), &s.col_t);
        for (r, row) in d.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                let want = if r == c && r < s.diag.len() {
                    s.diag[r].clone()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(v, &want, "entry ({}, {})", r, c);
            }
        }
        // transforms are unimodular and the stored inverses are exact
        prop_assert_eq!(imat_det(&s.row_t).abs(), BigInt::one());
        prop_assert_eq!(imat_det(&s.col_t).abs(), BigInt::one());
        let id_r = imat_mul(&s.row_t, &s.row_t_inv);
        let id_c = imat_mul(&s.col_t, &s.col_t_inv);
        for (m, n) in [(&id_r, rows), (&id_c, cols)] {
            for r in 0..n {
                for c in 0..n {
                    let want = if r == c { BigInt::one() } else { BigInt::zero() };
                    prop_assert_eq!(&m[r][c], &want);
                }
            }
        }
        // nonnegative divisibility chain, zeros trailing
        for w in s.diag.windows(2) {
            prop_assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[0].is_zero() {
                prop_assert!(w[1].clone() % w[0].clone() == BigInt::zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }

    /// Polar factors of random well-conditioned matrices are unitary, and
    /// su-normalization fixes the determinant without moving the
    /// projective class.
    #[test]
    fn polar_and_su_normalization(
        re in proptest::collection::vec(-1.0f64..1.0, 9),
        im in proptest::collection::vec(-1.0f64..1.0, 9),
    ) {
        let m = Matrix::from_fn(3, 3, |r, c| {
            let base = if r == c { 3.0 } else { 0.0 };
            C64::new(base + re[3 * r + c], im[3 * r + c])
        });
        let p = m.polar_unitary().unwrap();
        prop_assert!(p.is_unitary(1e-8));
        let u = Unitary::new(p, 1e-8).unwrap();
        let s = su_normalize(&u);
        prop_assert!((s.matrix().det() - C64::new(1.0, 0.0)).norm() < 1e-8);
        // s differs from u by a scalar phase
        let ratio = s.matrix()[(0, 0)] / u.matrix()[(0, 0)];
        let scaled = u.matrix().scale(ratio);
        prop_assert!(s.matrix().sub(&scaled).max_abs() < 1e-7);
    }
}
