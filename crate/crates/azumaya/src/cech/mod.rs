//! Čech cocycles on the nerve of a star cover (= the complex itself),
//! valued in PU(k) or in the groupoid of k-subalgebras.

pub mod groupoid;
pub mod pu;

pub use groupoid::{
    induce_groupoid_cocycle, skeletonize, verify_groupoid_cocycle, verify_natural_transformation,
    GroupoidCocycle, GroupoidReport, NaturalTransformation,
};
pub use pu::{
    quaternion_tetrahedron, scalar_defect, tensor_cocycles, verify_pu_cocycle, PUCocycle,
    PUVerification, TriangleDefect,
};
