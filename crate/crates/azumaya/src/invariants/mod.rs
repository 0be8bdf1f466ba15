//! Z/k clutching-loop invariants and Brauer classes.

pub mod brauer;
pub mod loops;

pub use brauer::{brauer_class, realize_cup_cocycle, BrauerClass};
pub use loops::{
    embedding_loop_from_unitary, frame_loop_class, generator_loop, pu_loop_class,
    s2_embeddability, spectral_loop, tensor_loops, ClutchingLoop, LoopClass, MAX_SAMPLE_GAP,
};
