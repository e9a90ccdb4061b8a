//! The constructive transitivity solver.
//!
//! Pipeline, for tuples `source` and `target` on one space or on a product
//! of distinct-size spaces:
//!
//! 1. make every `X`- and `Y`-component simple-spectrum via certified
//!    random moves (at most one move per matrix);
//! 2. make all `X`-spectra pairwise disjoint and all `Y`-spectra pairwise
//!    disjoint via certified shared random moves;
//! 3. align tuples with two interpolation moves: one `Y += p(X)` built from
//!    per-point fiber solves and combined over the disjoint `X`-spectra,
//!    and one `X += q(Y)` doing the same with the roles reversed.
//!
//! The answer is `g . g1 . g^{-1}` where `g` covers steps 1-2 and `g1` is
//! step 3. Randomized steps record resultant certificates; the final
//! program is re-verified independently, and a verification failure is a
//! first-class, reported outcome.

mod align;
mod diagonalize;
mod fiber;
mod separate;
mod solve;

pub use align::align_tuples;
pub use diagonalize::{diagonalizing_move, make_all_diagonalizable};
pub use fiber::fiber_solve;
pub use separate::separate_spectra;
pub use solve::{solve_collective, solve_transitivity, verify_solution};

use crate::moves::Program;

/// Parameters of the randomized, certified search for generic moves.
#[derive(Clone, Copy, Debug)]
pub struct GenericityBudget {
    /// Seed of the single randomness stream threaded through the pipeline.
    pub seed: u64,
    /// Retry budget per search (polynomial draws, Newton restarts).
    pub max_retries: usize,
    /// Half-width of the square the random coefficients are drawn from.
    pub coeff_scale: f64,
    /// Number of scaling parameters tried per polynomial draw.
    pub t_samples: usize,
    /// Verification tolerance: solved instances must come back with
    /// per-point distances at most this. Tightening it also tightens the
    /// fiber-solve residuals; certificate thresholds stay at the fixed
    /// [`Tolerances`](crate::config::Tolerances) defaults.
    pub tol: f64,
}

impl Default for GenericityBudget {
    fn default() -> Self {
        GenericityBudget {
            seed: 0,
            max_retries: 48,
            coeff_scale: 1.0,
            t_samples: 4,
            tol: 1e-6,
        }
    }
}

impl GenericityBudget {
    pub fn with_seed(seed: u64) -> Self {
        GenericityBudget {
            seed,
            ..GenericityBudget::default()
        }
    }
}

/// One certified genericity claim: a resultant magnitude above a threshold.
#[derive(Clone, Debug)]
pub struct CertEntry {
    pub description: String,
    pub magnitude: f64,
    pub threshold: f64,
}

/// A bundle of genericity claims; valid iff every magnitude exceeds its
/// threshold.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    pub entries: Vec<CertEntry>,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.entries.iter().all(|e| e.magnitude > e.threshold)
    }

    pub fn push(&mut self, description: impl Into<String>, magnitude: f64, threshold: f64) {
        self.entries.push(CertEntry {
            description: description.into(),
            magnitude,
            threshold,
        });
    }
}

/// Move and retry counts of one pipeline stage.
#[derive(Clone, Debug)]
pub struct StageStats {
    pub name: String,
    pub moves: usize,
    pub retries: usize,
}

/// Everything a solve produces: the program, per-stage statistics, the
/// independent verification distances, and the certificates of the
/// genericity state the alignment ran on.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub program: Program,
    pub stages: Vec<StageStats>,
    /// Independent `same_point` distance per point, flattened block order.
    pub verification: Vec<f64>,
    pub certificates: Vec<Certificate>,
    /// Verification tolerance the distances were compared against.
    pub tol: f64,
    pub passed: bool,
}

impl SolveReport {
    /// Number of moves in the prefix `g` (stages 1-2); applying exactly this
    /// many moves of the program to the concatenated source and target
    /// points reproduces the state the certificates describe.
    pub fn generic_prefix_len(&self) -> usize {
        self.stages
            .iter()
            .filter(|s| s.name == "diagonalize" || s.name == "separate")
            .map(|s| s.moves)
            .sum()
    }

    pub fn max_distance(&self) -> f64 {
        self.verification.iter().copied().fold(0.0, f64::max)
    }
}
