//! Tolerances and caps shared across the crate.
//!
//! All floating-point claims made by this crate are tolerance-certified;
//! the knobs below are the defaults, and every operation that depends on
//! one either takes it explicitly or reads it from a [`Tolerances`] value.

/// Trailing polynomial coefficients at or below this magnitude are stripped.
pub const EPS_COEFF: f64 = 1e-12;

/// Two spectral nodes closer than this are treated as coincident.
pub const EPS_SPEC: f64 = 1e-8;

/// Interpolation residual bound.
pub const EPS_INTERP: f64 = 1e-8;

/// Relative pivot threshold for numerical rank.
pub const EPS_RANK: f64 = 1e-9;

/// Eigendecomposition reconstruction bound (relative).
pub const EPS_RECON: f64 = 1e-8;

/// Canonical-form matching tolerance for point equality.
pub const EPS_CANON: f64 = 1e-7;

/// Largest matrix size accepted by characteristic-polynomial routines.
pub const SIZE_CAP: usize = 16;

/// Largest polynomial degree accepted in serialized programs.
pub const DEGREE_CAP: usize = 64;

/// Residual tolerance for the simultaneous root iteration.
pub const ROOT_TOL: f64 = 1e-12;

/// Sweep cap for the simultaneous root iteration.
pub const ROOT_MAX_ITER: usize = 200;

/// The tolerance family used by the higher-level pipelines.
///
/// Constructors of low-level values (polynomials, matrices) use the module
/// constants directly; the engine and the CLI thread a `Tolerances` value
/// so that a whole run can be tightened or relaxed coherently.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Trailing-coefficient strip threshold.
    pub coeff: f64,
    /// Spectral node separation.
    pub spec: f64,
    /// Interpolation residual bound.
    pub interp: f64,
    /// Relative rank pivot threshold.
    pub rank: f64,
    /// Eigendecomposition reconstruction bound.
    pub recon: f64,
    /// Canonical-form matching tolerance.
    pub canon: f64,
    /// Membership residual gate applied after every move.
    pub membership: f64,
    /// Certificate threshold for resultant magnitudes.
    pub cert: f64,
    /// End-to-end verification tolerance for solved instances.
    pub verify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            coeff: EPS_COEFF,
            spec: EPS_SPEC,
            interp: EPS_INTERP,
            rank: EPS_RANK,
            recon: EPS_RECON,
            canon: EPS_CANON,
            membership: 1e-7,
            cert: 1e-8,
            verify: 1e-6,
        }
    }
}

impl Tolerances {
    /// Same defaults with the end-to-end verification tolerance replaced.
    pub fn with_verify(verify: f64) -> Self {
        Tolerances {
            verify,
            ..Tolerances::default()
        }
    }
}
