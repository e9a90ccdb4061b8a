//! Calogero-Moser spaces and their triangular automorphism group, computationally.
//!
//! A point of the Calogero-Moser space `C_n` is a pair `(X, Y)` of complex
//! `n x n` matrices with `rank([X, Y] + I) = 1`, taken up to simultaneous
//! conjugation. The group `G` generated by the triangular automorphisms
//! `(X, Y) -> (X + p(Y), Y)` and `(X, Y) -> (X, Y + q(X))`, for univariate
//! polynomials `p` and `q`, acts on `C_n` and diagonally on products of
//! such spaces.
//!
//! This crate realizes the objects and the action numerically and, above
//! all, constructs explicit automorphism sequences ("programs") that map
//! any generic tuple of points to any other — including one program acting
//! simultaneously on products `C_{n_1} x ... x C_{n_k}` with pairwise
//! distinct sizes. Every randomized step is certified a posteriori by
//! resultant magnitudes, and every solution is re-verified independently.
//!
//! Entry points:
//! - [`space::CMPoint`] — membership, construction, canonical forms
//! - [`moves::Program`] — words in the triangular generators
//! - [`engine::solve_transitivity`] / [`engine::solve_collective`] — solvers
//! - [`cli`] — the file formats and the `cmt` command surface
//!
//! The `examples/` directory walks through each capability; the acceptance
//! suite in `tests/acceptance.rs` pins the end-to-end guarantees.

pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod moves;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod space;

pub use config::Tolerances;
pub use engine::{Certificate, GenericityBudget, SolveReport};
pub use error::{Error, Result};
pub use linalg::{CMatrix, EigenDecomposition};
pub use moves::{Move, MoveKind, Program};
pub use poly::{Poly, SpectrumTargets};
pub use space::{CMPoint, CanonicalForm, Configuration};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
