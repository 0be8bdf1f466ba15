use super::complex::SimplicialComplex;
use crate::{AzumayaError, Result};

/// Coefficient ring of a cochain: the integers, or Z/k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Z,
    ModK(i64),
}

impl Ring {
    pub fn modulus(&self) -> Option<i64> {
        match self {
            Ring::Z => None,
            Ring::ModK(k) => Some(*k),
        }
    }

    fn reduce(&self, v: i64) -> i64 {
        match self {
            Ring::Z => v,
            Ring::ModK(k) => v.rem_euclid(*k),
        }
    }
}

/// A q-cochain: one integer per q-simplex, in simplex order. Mod-k values
/// are kept reduced to `[0, k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub ring: Ring,
    pub values: Vec<i64>,
}

impl Cochain {
    pub fn new(
        complex: &SimplicialComplex,
        degree: usize,
        ring: Ring,
        values: Vec<i64>,
    ) -> Result<Self> {
        if let Ring::ModK(k) = ring {
            if k < 2 {
                return Err(AzumayaError::InvalidInput(format!("modulus {k} < 2")));
            }
        }
        if values.len() != complex.count(degree) {
            return Err(AzumayaError::CochainMismatch(format!(
                "expected {} values in degree {degree}, got {}",
                complex.count(degree),
                values.len()
            )));
        }
        Ok(Cochain {
            degree,
            ring,
            values: values.into_iter().map(|v| ring.reduce(v)).collect(),
        })
    }

    pub fn zero(complex: &SimplicialComplex, degree: usize, ring: Ring) -> Self {
        Cochain {
            degree,
            ring,
            values: vec![0; complex.count(degree)],
        }
    }

    pub fn value_on(&self, complex: &SimplicialComplex, simplex: &[usize]) -> Option<i64> {
        complex
            .index_of(self.degree, simplex)
            .map(|i| self.values[i])
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree || self.ring != other.ring {
            return Err(AzumayaError::CochainMismatch(
                "cochain degree/ring mismatch".into(),
            ));
        }
        Ok(Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| self.ring.reduce(a + b))
                .collect(),
        })
    }

    pub fn scale(&self, c: i64) -> Cochain {
        Cochain {
            degree: self.degree,
            ring: self.ring,
            values: self.values.iter().map(|&v| self.ring.reduce(c * v)).collect(),
        }
    }

    /// Mod-k reduction of an integral cochain.
    pub fn reduce_mod(&self, k: i64) -> Cochain {
        Cochain {
            degree: self.degree,
            ring: Ring::ModK(k),
            values: self.values.iter().map(|&v| v.rem_euclid(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Simplicial coboundary `(δc)(σ) = Σ_i (−1)^i c(σ \ v_i)`.
pub fn coboundary(complex: &SimplicialComplex, c: &Cochain) -> Cochain {
    let d = complex.coboundary_matrix(c.degree);
    let values = d
        .iter()
        .map(|row| {
            let v: i64 = row.iter().zip(&c.values).map(|(&a, &x)| a * x).sum();
            c.ring.reduce(v)
        })
        .collect();
    Cochain {
        degree: c.degree + 1,
        ring: c.ring,
        values,
    }
}

/// `Ok(())` when `δc = 0` (exactly over Z, mod k over Z/k); otherwise the
/// first offending simplex.
pub fn check_cocycle(complex: &SimplicialComplex, c: &Cochain) -> Result<()> {
    let dc = coboundary(complex, c);
    for (i, &v) in dc.values.iter().enumerate() {
        if v != 0 {
            return Err(AzumayaError::NotACocycle {
                simplex: complex.simplices(c.degree + 1)[i].clone(),
            });
        }
    }
    Ok(())
}

/// Alexander-Whitney cup product:
/// `(a∪b)(v_0..v_{p+q}) = a(v_0..v_p) · b(v_p..v_{p+q})`.
pub fn cup_product(complex: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.ring != b.ring {
        return Err(AzumayaError::CochainMismatch("cup of mixed rings".into()));
    }
    let (p, q) = (a.degree, b.degree);
    let values = complex
        .simplices(p + q)
        .iter()
        .map(|s| {
            let front = &s[..=p];
            let back = &s[p..];
            let av = a.value_on(complex, front).expect("face of a simplex");
            let bv = b.value_on(complex, back).expect("face of a simplex");
            a.ring.reduce(av * bv)
        })
        .collect();
    Ok(Cochain {
        degree: p + q,
        ring: a.ring,
        values,
    })
}

/// Pullback along a simplicial map given by a monotone vertex assignment
/// `vertex_map: X → Y`: the value on a simplex is `c` on its image, or 0
/// when the image is degenerate.
pub fn pullback(
    domain: &SimplicialComplex,
    codomain: &SimplicialComplex,
    vertex_map: &[usize],
    c: &Cochain,
) -> Result<Cochain> {
    if vertex_map.len() != domain.vertex_count() {
        return Err(AzumayaError::InvalidInput(
            "vertex map must cover the domain".into(),
        ));
    }
    let values = domain
        .simplices(c.degree)
        .iter()
        .map(|s| {
            let img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
            if !img.windows(2).all(|w| w[0] < w[1]) {
                return Ok(0); // degenerate image
            }
            codomain
                .index_of(c.degree, &img)
                .map(|i| c.values[i])
                .ok_or_else(|| {
                    AzumayaError::InvalidInput(format!("image simplex {img:?} missing"))
                })
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(Cochain {
        degree: c.degree,
        ring: c.ring,
        values,
    })
}
