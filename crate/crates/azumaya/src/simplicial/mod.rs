//! Finite simplicial complexes, integral and mod-k cochains, and
//! cohomology with explicit coordinates via Smith normal form.

pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod datasets;
pub mod snf;

pub use cochain::{check_cocycle, coboundary, cup_product, pullback, Cochain, Ring};
pub use cohomology::{bockstein, cohomology, CohomologyGroup};
pub use complex::SimplicialComplex;
