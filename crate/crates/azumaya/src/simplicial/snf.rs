//! Smith normal form over exact big integers, tracking the unimodular
//! transforms and their inverses.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn imat_zeros(rows: usize, cols: usize) -> IMat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn imat_identity(n: usize) -> IMat {
    let mut m = imat_zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert_eq!(inner, b.len());
    let mut out = imat_zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = &a[i][k] * &b[k][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn imat_vec(a: &IMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn imat_from_i64(m: &[Vec<i64>]) -> IMat {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// `row_t · a · col_t = diag`, with `row_t_inv`, `col_t_inv` the exact
/// inverses of the accumulated transforms. Diagonal entries are
/// nonnegative and each divides the next.
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub row_t: IMat,
    pub row_t_inv: IMat,
    pub col_t: IMat,
    pub col_t_inv: IMat,
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut m = a.to_vec();
    let mut row_t = imat_identity(rows);
    let mut row_t_inv = imat_identity(rows);
    let mut col_t = imat_identity(cols);
    let mut col_t_inv = imat_identity(cols);

    // elementary ops, mirrored onto the transforms and their inverses
    macro_rules! swap_rows {
        ($i:expr, $j:expr) => {{
            m.swap($i, $j);
            row_t.swap($i, $j);
            // (L^{-1} applied on the right of row_t_inv = column swap)
            for r in row_t_inv.iter_mut() {
                r.swap($i, $j);
            }
        }};
    }
    macro_rules! swap_cols {
        ($i:expr, $j:expr) => {{
            for r in m.iter_mut() {
                r.swap($i, $j);
            }
            for r in col_t.iter_mut() {
                r.swap($i, $j);
            }
            col_t_inv.swap($i, $j);
        }};
    }
    macro_rules! negate_row {
        ($i:expr) => {{
            for x in m[$i].iter_mut() {
                *x = -&*x;
            }
            for x in row_t[$i].iter_mut() {
                *x = -&*x;
            }
            for r in row_t_inv.iter_mut() {
                r[$i] = -&r[$i];
            }
        }};
    }
    // row j += c * row i  (inverse: column i -= c * column j in row_t_inv)
    macro_rules! add_row {
        ($j:expr, $i:expr, $c:expr) => {{
            let c: BigInt = $c;
            for k in 0..cols {
                let t = &c * &m[$i][k];
                m[$j][k] += t;
            }
            for k in 0..rows {
                let t = &c * &row_t[$i][k];
                row_t[$j][k] += t;
            }
            for r in row_t_inv.iter_mut() {
                let t = &c * &r[$j];
                r[$i] -= t;
            }
        }};
    }
    // col j += c * col i  (inverse: row i -= c * row j in col_t_inv)
    macro_rules! add_col {
        ($j:expr, $i:expr, $c:expr) => {{
            let c: BigInt = $c;
            for r in m.iter_mut() {
                let t = &c * &r[$i];
                r[$j] += t;
            }
            for r in col_t.iter_mut() {
                let t = &c * &r[$i];
                r[$j] += t;
            }
            for k in 0..cols {
                let t = &c * &col_t_inv[$j][k];
                col_t_inv[$i][k] -= t;
            }
        }};
    }

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // pivot: nonzero entry of least absolute value in the submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != t {
            swap_rows!(t, pi);
        }
        if pj != t {
            swap_cols!(t, pj);
        }
        if m[t][t].is_negative() {
            negate_row!(t);
        }
        // clear row and column t; restart if a remainder shrinks the pivot
        let mut clean = true;
        for i in t + 1..rows {
            if !m[i][t].is_zero() {
                let q = &m[i][t] / &m[t][t];
                add_row!(i, t, -q);
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !m[t][j].is_zero() {
                let q = &m[t][j] / &m[t][t];
                add_col!(j, t, -q);
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // divisibility: pivot must divide every remaining entry
        let mut fixed = false;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&m[i][j] % &m[t][t]).is_zero() {
                    add_row!(t, i, BigInt::one());
                    fixed = true;
                    break 'outer;
                }
            }
        }
        if fixed {
            continue;
        }
        t += 1;
    }

    let diag: Vec<BigInt> = (0..n).map(|i| m[i][i].clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    Snf {
        diag,
        rank,
        rows,
        cols,
        row_t,
        row_t_inv,
        col_t,
        col_t_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IMat) {
        let snf = smith_normal_form(a);
        let rows = a.len();
        let cols = if rows > 0 { a[0].len() } else { 0 };
        // U A V = S
        let s = imat_mul(&imat_mul(&snf.row_t, a), &snf.col_t);
        for i in 0..rows {
            for j in 0..cols {
                let expect = if i == j && i < snf.diag.len() {
                    snf.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(s[i][j], expect, "S mismatch at ({i},{j})");
            }
        }
        // transforms invert
        assert_eq!(imat_mul(&snf.row_t, &snf.row_t_inv), imat_identity(rows));
        assert_eq!(imat_mul(&snf.col_t, &snf.col_t_inv), imat_identity(cols));
        // divisibility chain
        for w in snf.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero() && (&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn small_examples() {
        check(&imat_from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]));
        check(&imat_from_i64(&[vec![1, 0], vec![0, 0]]));
        check(&imat_from_i64(&[vec![0, 0], vec![0, 0]]));
        check(&imat_from_i64(&[vec![6, 10, 15]]));
        check(&imat_from_i64(&[vec![2], vec![3], vec![5]]));
    }

    #[test]
    fn known_invariant_factors() {
        let snf = smith_normal_form(&imat_from_i64(&[
            vec![2, 4, 4],
            vec![-6, 6, 12],
            vec![10, 4, 16],
        ]));
        // oracle: d_1 = gcd of entries = 2, d_1·d_2 = gcd of 2×2 minors = 4,
        // d_1·d_2·d_3 = |det| = 624, so the invariant factors are (2, 2, 156)
        let d: Vec<i64> = snf
            .diag
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![2, 2, 156]);
    }

    #[test]
    fn randomized_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let a: IMat = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| BigInt::from(rng.gen_range(-9i64..10)))
                        .collect()
                })
                .collect();
            check(&a);
        }
    }
}
