//! Algorithms for the family of d-setting, d-outcome Bell inequalities built on
//! the unique game `s_a·s_b + o_a + o_b ≡ 0 (mod d)`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure function
//! of its inputs: threads, wall-clock budgets, files and the command line live in
//! the `quditbell` companion crate.
//!
//! Module map:
//!
//! * [`game`]: strategies, score matrices, behaviors, correlators and both Bell
//!   functionals.
//! * [`cyclotomic`]: exact arithmetic in `Z[ω]`, used to check the correlation
//!   functional without rounding.
//! * [`symmetry`]: the symmetry group of the game acting on strategies.
//! * [`bounds`]: best responses, the normalized exhaustive search kernel, the
//!   alternating best-response heuristic and the explicit constructions.
//! * [`polytope`]: vertex embeddings, saturating-set enumeration, the Fourier
//!   block decomposition and exact rank over prime fields.
//! * [`linalg`]: small dense complex matrices and a Hermitian Jacobi eigensolver.
//! * [`quantum`]: states, projective measurements, Bell operators, the see-saw
//!   optimizer and the multiport measurement family.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bounds;
pub mod cyclotomic;
pub mod error;
pub mod game;
pub mod linalg;
pub mod polytope;
pub mod quantum;
pub mod symmetry;

pub use error::{Error, Result};
pub use game::{
    BehaviorTable, CorrelationTable, DeterministicStrategy, GameParams, ScoreMatrix,
};
pub use num_complex::Complex64;

/// Largest `d` supported. Column masks in the search kernel are `u64`.
pub const MAX_D: usize = 64;
