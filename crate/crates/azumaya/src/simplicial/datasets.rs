//! Bundled complexes and combinatorial constructions used across the
//! test and demo corpus.

use super::complex::SimplicialComplex;

/// Boundary of the 3-simplex: the minimal triangulation of S².
pub fn tetrahedron_boundary() -> SimplicialComplex {
    SimplicialComplex::from_maximal(
        4,
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("valid complex")
}

/// The minimal 6-vertex triangulation of RP² (the antipodal quotient of
/// the icosahedron; its 1-skeleton is K₆).
pub fn rp2_six() -> SimplicialComplex {
    SimplicialComplex::from_maximal(
        6,
        &[
            vec![0, 1, 4],
            vec![0, 1, 5],
            vec![0, 2, 3],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
            vec![3, 4, 5],
        ],
    )
    .expect("valid complex")
}

/// The 7-vertex Möbius-Kantor triangulation of the torus (1-skeleton K₇):
/// triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus_seven() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7usize {
        for offs in [[0, 1, 3], [0, 2, 3]] {
            let mut t: Vec<usize> = offs.iter().map(|o| (i + o) % 7).collect();
            t.sort();
            tris.push(t);
        }
    }
    SimplicialComplex::from_maximal(7, &tris).expect("valid complex")
}

/// Cycle with `n ≥ 3` vertices.
pub fn circle(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let edges: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut e = vec![i, (i + 1) % n];
            e.sort();
            e
        })
        .collect();
    SimplicialComplex::from_maximal(n, &edges).expect("valid complex")
}

/// Product triangulation of two ordered complexes by monotone staircases:
/// vertex `(v, w)` becomes `v·|Y| + w`, and each pair of maximal simplices
/// contributes one top cell per monotone path through its grid.
pub fn product(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let ny = y.vertex_count();
    let mut tops: Vec<Vec<usize>> = Vec::new();
    let maximal = |c: &SimplicialComplex| -> Vec<Vec<usize>> {
        // simplices not a face of any higher simplex
        let mut out = Vec::new();
        for q in 0..=c.dim() {
            'next: for s in c.simplices(q) {
                for t in c.simplices(q + 1) {
                    if s.iter().all(|v| t.contains(v)) {
                        continue 'next;
                    }
                }
                out.push(s.clone());
            }
        }
        out
    };
    for sx in maximal(x) {
        for sy in maximal(y) {
            let (p, q) = (sx.len() - 1, sy.len() - 1);
            // enumerate monotone paths from (0,0) to (p,q)
            let mut stack = vec![(0usize, 0usize, vec![sx[0] * ny + sy[0]])];
            while let Some((i, j, path)) = stack.pop() {
                if i == p && j == q {
                    tops.push(path);
                    continue;
                }
                if i < p {
                    let mut next = path.clone();
                    next.push(sx[i + 1] * ny + sy[j]);
                    stack.push((i + 1, j, next));
                }
                if j < q {
                    let mut next = path.clone();
                    next.push(sx[i] * ny + sy[j + 1]);
                    stack.push((i, j + 1, next));
                }
            }
        }
    }
    SimplicialComplex::from_maximal(x.vertex_count() * ny, &tops).expect("valid product")
}

/// Suspension: two new apex vertices joined to every simplex.
pub fn suspension(x: &SimplicialComplex) -> SimplicialComplex {
    let n = x.vertex_count();
    let mut tops = Vec::new();
    for q in 0..=x.dim() {
        for s in x.simplices(q) {
            for apex in [n, n + 1] {
                let mut t = s.clone();
                t.push(apex);
                tops.push(t);
            }
        }
    }
    SimplicialComplex::from_maximal(n + 2, &tops).expect("valid suspension")
}

/// Cone: one new apex joined to every simplex.
pub fn cone(x: &SimplicialComplex) -> SimplicialComplex {
    let n = x.vertex_count();
    let mut tops = Vec::new();
    for q in 0..=x.dim() {
        for s in x.simplices(q) {
            let mut t = s.clone();
            t.push(n);
            tops.push(t);
        }
    }
    SimplicialComplex::from_maximal(n + 1, &tops).expect("valid cone")
}

/// Prism triangulation of RP² × S¹.
pub fn rp2_x_s1() -> SimplicialComplex {
    product(&rp2_six(), &circle(3))
}

/// Suspension of the 6-vertex RP².
pub fn suspension_rp2() -> SimplicialComplex {
    suspension(&rp2_six())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_edges_is_square() {
        let e = SimplicialComplex::from_maximal(2, &[vec![0, 1]]).unwrap();
        let sq = product(&e, &e);
        assert_eq!(sq.count(0), 4);
        assert_eq!(sq.count(1), 5); // 4 sides + 1 diagonal
        assert_eq!(sq.count(2), 2);
        assert_eq!(sq.euler_characteristic(), 1);
    }

    #[test]
    fn rp2_x_s1_is_a_closed_3_manifold_combinatorially() {
        let x = rp2_x_s1();
        assert_eq!(x.dim(), 3);
        // every triangle is a face of exactly two tetrahedra
        for t in x.simplices(2) {
            let count = x
                .simplices(3)
                .iter()
                .filter(|s| t.iter().all(|v| s.contains(v)))
                .count();
            assert_eq!(count, 2, "triangle {t:?}");
        }
    }

    #[test]
    fn torus_is_a_closed_surface() {
        let x = torus_seven();
        assert_eq!(x.count(1), 21);
        assert_eq!(x.count(2), 14);
        for e in x.simplices(1) {
            let count = x
                .simplices(2)
                .iter()
                .filter(|s| e.iter().all(|v| s.contains(v)))
                .count();
            assert_eq!(count, 2);
        }
    }
}
