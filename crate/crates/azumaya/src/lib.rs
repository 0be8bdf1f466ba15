//! Desk-scale machinery for matrix algebra bundles over finite simplicial
//! complexes.
//!
//! The crate is organized in four layers:
//!
//! * [`matalg`] — dense complex matrices, unital *-homomorphisms between
//!   matrix algebras, centralizers, intertwiners and the induced ambient
//!   automorphism of a pair of subalgebra isomorphisms.
//! * [`simplicial`] — finite ordered simplicial complexes, integer and mod-k
//!   cochains, cohomology via Smith normal form, cup products and Bocksteins.
//! * [`cech`] — Cech cocycles on the nerve of an open-star cover, valued in
//!   projective unitary groups or in the groupoid of matrix subalgebras,
//!   together with conversions in both directions.
//! * [`invariants`] — Z/k clutching-loop invariants over spheres and the
//!   Brauer class (H^2 mod k plus its integral Bockstein) of a PU(k)-cocycle.
//!
//! All randomness flows from explicit seeds; every operation is a pure
//! function of its inputs and a [`ToleranceConfig`].

pub mod cech;
pub mod error;
pub mod exec;
pub mod invariants;
pub mod matalg;
pub mod simplicial;

mod tol;

pub use error::AzumayaError;
pub use tol::ToleranceConfig;

pub type Result<T> = std::result::Result<T, AzumayaError>;
