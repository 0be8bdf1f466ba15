use std::collections::{BTreeSet, HashMap};

use crate::{AzumayaError, Result};

/// Finite ordered simplicial complex. Simplices are strictly increasing
/// vertex tuples; the global vertex order fixes every sign.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// per dimension q, sorted list of q-simplices
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Build from an explicit simplex list, which must be closed under
    /// faces (every face of a listed simplex is itself listed).
    pub fn new(vertex_count: usize, mut simplices: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(AzumayaError::InvalidComplex("no vertices".into()));
        }
        while simplices.last().is_some_and(|l| l.is_empty()) {
            simplices.pop();
        }
        for (q, list) in simplices.iter_mut().enumerate() {
            for s in list.iter() {
                if s.len() != q + 1 {
                    return Err(AzumayaError::InvalidComplex(format!(
                        "simplex {s:?} listed in dimension {q}"
                    )));
                }
                if !s.windows(2).all(|w| w[0] < w[1]) {
                    return Err(AzumayaError::InvalidComplex(format!(
                        "simplex {s:?} is not strictly increasing"
                    )));
                }
                if s.iter().any(|&v| v >= vertex_count) {
                    return Err(AzumayaError::InvalidComplex(format!(
                        "simplex {s:?} references a vertex ≥ {vertex_count}"
                    )));
                }
            }
            list.sort();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(AzumayaError::InvalidComplex(format!(
                    "duplicate simplex in dimension {q}"
                )));
            }
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        // face closure
        for q in 1..simplices.len() {
            for s in &simplices[q] {
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    if !index[q - 1].contains_key(&face) {
                        return Err(AzumayaError::InvalidComplex(format!(
                            "missing face {face:?} of simplex {s:?}"
                        )));
                    }
                }
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            simplices,
            index,
        })
    }

    /// Build from maximal simplices, taking the closure under faces and
    /// including every vertex `0..vertex_count`.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<usize>> = (0..vertex_count).map(|v| vec![v]).collect();
        let mut stack: Vec<Vec<usize>> = maximal.to_vec();
        while let Some(s) = stack.pop() {
            if s.is_empty() || all.contains(&s) {
                continue;
            }
            for drop in 0..s.len() {
                let mut face = s.clone();
                face.remove(drop);
                if face.len() > 1 && !all.contains(&face) {
                    stack.push(face);
                }
            }
            all.insert(s);
        }
        let dim = all.iter().map(|s| s.len()).max().unwrap_or(1);
        let mut simplices = vec![Vec::new(); dim];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        SimplicialComplex::new(vertex_count, simplices)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// q-simplices, sorted.
    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.simplices
            .get(q)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn index_of(&self, q: usize, simplex: &[usize]) -> Option<usize> {
        self.index.get(q)?.get(simplex).copied()
    }

    /// Integer coboundary matrix `δ_q` mapping q-cochains to
    /// (q+1)-cochains: `(δc)(σ) = Σ_i (−1)^i c(σ with i-th vertex deleted)`.
    pub fn coboundary_matrix(&self, q: usize) -> Vec<Vec<i64>> {
        let rows = self.count(q + 1);
        let cols = self.count(q);
        let mut d = vec![vec![0i64; cols]; rows];
        for (r, s) in self.simplices(q + 1).iter().enumerate() {
            for drop in 0..s.len() {
                let mut face = s.clone();
                face.remove(drop);
                let c = self.index_of(q, &face).expect("complex is face-closed");
                d[r][c] += if drop % 2 == 0 { 1 } else { -1 };
            }
        }
        d
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(q, list)| {
                let n = list.len() as i64;
                if q % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }
}
