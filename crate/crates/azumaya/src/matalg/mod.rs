//! Finite-dimensional complex matrix-algebra engine.

pub mod matrix;
pub mod starhom;
pub mod unitary;

pub use matrix::{
    hermitian_eig, null_space, orthonormal_columns, rank_with_cutoff, singular_values, Matrix,
    C64,
};
pub use starhom::{
    ambient_from_pair, centralizer, commutant_dimension, decompose_hom, noether_skolem,
    partial_trace_first, partial_trace_second, random_subalgebra, verify_star_hom, AlgebraIso,
    KSubalgebra, StarHom, StarHomReport,
};
pub use unitary::{
    haar_unitary, haar_unitary_with, mu_k_exponent, projective_distance, projective_equal,
    su_normalize, Unitary,
};
