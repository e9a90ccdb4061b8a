//! Tuple alignment on fully generic inputs: two interpolation moves.
//!
//! With every matrix certified simple, the source `X`-spectra pairwise
//! disjoint and the target `Y`-spectra pairwise disjoint, one polynomial
//! steers all points at once in each stage:
//!
//! (a) per point, a fiber solve finds the `Y`-diagonal giving the source's
//!     normalized frame the target's `Y`-spectrum, and the per-point
//!     interpolation conditions combine over the disjoint `X`-spectra into
//!     a single move `Y += p(X)`;
//! (b) the same with the roles reversed: in the `Y`-diagonal frames
//!     (reached through the transpose swap), a single `X += q(Y)` adjusts
//!     the free diagonals to the targets'.
//!
//! Stage (b) matches full normalized forms, so it also repairs any fiber
//! sheet ambiguity left by stage (a).

use super::GenericityBudget;
use crate::config::{Tolerances, ROOT_TOL};
use crate::error::{Error, Result};
use crate::moves::{Move, MoveKind, Program};
use crate::poly::{crt_combine, interpolate, Poly, SpectrumTargets};
use crate::random::rng_from_seed;
use crate::space::CMPoint;
use num_complex::Complex64;
use rand_chacha::ChaCha12Rng;

/// Wilson-frame tolerance used while reading canonical data mid-pipeline.
const FRAME_TOL: f64 = 1e-5;

/// Program `g1` with `apply(g1, source_i)` equal to `target_i` for all `i`.
pub fn align_tuples(
    source: &[CMPoint],
    target: &[CMPoint],
    budget: &GenericityBudget,
) -> Result<Program> {
    let mut rng = rng_from_seed(budget.seed);
    run(source, target, budget, &mut rng).map(|(program, _)| program)
}

pub(crate) fn run(
    source: &[CMPoint],
    target: &[CMPoint],
    budget: &GenericityBudget,
    rng: &mut ChaCha12Rng,
) -> Result<(Program, usize)> {
    let m = source.len();
    if m != target.len() {
        return Err(Error::ShapeMismatch(format!(
            "{m} source points vs {} target points",
            target.len()
        )));
    }
    if m == 0 {
        return Ok((Program::new(), 0));
    }
    for (i, (s, t)) in source.iter().zip(target).enumerate() {
        if s.size() != t.size() {
            return Err(Error::ShapeMismatch(format!(
                "point {i}: source size {} vs target size {}",
                s.size(),
                t.size()
            )));
        }
    }
    check_preconditions(source, target, Tolerances::default().cert)?;
    let tols = Tolerances::default();
    let mut retries = 0usize;

    // stage (a): one move Y += p(X) giving every source the target Y-spectrum
    let mut blocks_a: Vec<(Vec<Complex64>, Poly)> = Vec::with_capacity(m);
    for (i, (s, t)) in source.iter().zip(target).enumerate() {
        let form = s.canonicalize(FRAME_TOL)?;
        let xs: Vec<Complex64> = form.pairs.iter().map(|&(x, _)| x).collect();
        let d_cur: Vec<Complex64> = form.pairs.iter().map(|&(_, d)| d).collect();
        let mu = t.y().eigenvalues(ROOT_TOL)?;
        let (d_new, restarts) = super::fiber::solve(&xs, &mu, budget, rng).map_err(|e| match e {
            Error::RepeatedEigenvalue(a, b) => Error::PreconditionViolated(format!(
                "point {i}: spectra are not simple (eigenvalues {a} and {b} coincide)"
            )),
            other => other,
        })?;
        retries += restarts;
        let targets = SpectrumTargets::new(
            xs.iter()
                .zip(d_new.iter().zip(&d_cur))
                .map(|(&x, (&dn, &dc))| (x, dn - dc))
                .collect(),
        )?;
        blocks_a.push((xs, interpolate(&targets)?));
    }
    let p = crt_combine(&blocks_a)?;
    let mut program = Program::new();
    let stage_a = Move::new(MoveKind::AddPolyOfXToY, p);
    let intermediates: Vec<CMPoint> = if stage_a.is_identity() {
        source.to_vec()
    } else {
        let images = source
            .iter()
            .map(|s| stage_a.apply(s, tols.membership))
            .collect::<Result<Vec<_>>>()?;
        program.push(stage_a);
        images
    };

    // stage (b): the same interpolation with X and Y reversed
    let mut blocks_b: Vec<(Vec<Complex64>, Poly)> = Vec::with_capacity(m);
    for (i, (inter, t)) in intermediates.iter().zip(target).enumerate() {
        let inter_form = inter.transpose_swap().canonicalize(FRAME_TOL)?;
        let target_form = t.transpose_swap().canonicalize(FRAME_TOL)?;
        let nodes: Vec<Complex64> = inter_form.pairs.iter().map(|&(mu, _)| mu).collect();
        let a_cur: Vec<Complex64> = inter_form.pairs.iter().map(|&(_, a)| a).collect();
        // match the target's Y-eigenvalues to the intermediate's; they agree
        // within the fiber residual, so nearest matching is unambiguous
        let mut used = vec![false; target_form.pairs.len()];
        let mut values = Vec::with_capacity(nodes.len());
        for (k, &mu) in nodes.iter().enumerate() {
            let mut best = f64::INFINITY;
            let mut best_j = usize::MAX;
            for (j, &(mu_t, _)) in target_form.pairs.iter().enumerate() {
                if !used[j] {
                    let dist = (mu - mu_t).norm();
                    if dist < best {
                        best = dist;
                        best_j = j;
                    }
                }
            }
            if best > 1e-3 {
                return Err(Error::PreconditionViolated(format!(
                    "point {i}: intermediate Y-spectrum drifted {best:.3e} from the target's"
                )));
            }
            used[best_j] = true;
            values.push(target_form.pairs[best_j].1 - a_cur[k]);
        }
        let targets = SpectrumTargets::new(
            nodes.iter().copied().zip(values).collect(),
        )?;
        blocks_b.push((nodes, interpolate(&targets)?));
    }
    let q = crt_combine(&blocks_b)?;
    let stage_b = Move::new(MoveKind::AddPolyOfYToX, q);
    if !stage_b.is_identity() {
        program.push(stage_b);
    }
    Ok((program, retries))
}

fn check_preconditions(source: &[CMPoint], target: &[CMPoint], cert_tol: f64) -> Result<()> {
    for (i, s) in source.iter().enumerate() {
        if !s.x().is_simple_spectrum(cert_tol)?.0 {
            return Err(Error::PreconditionViolated(format!(
                "source point {i} lacks a simple X-spectrum certificate"
            )));
        }
    }
    for (i, t) in target.iter().enumerate() {
        if !t.y().is_simple_spectrum(cert_tol)?.0 {
            return Err(Error::PreconditionViolated(format!(
                "target point {i} lacks a simple Y-spectrum certificate"
            )));
        }
    }
    for i in 0..source.len() {
        for j in i + 1..source.len() {
            let (ok, cert) = source[i].x().spectra_disjoint(source[j].x(), cert_tol)?;
            if !ok {
                return Err(Error::PreconditionViolated(format!(
                    "source X-spectra {i} and {j} are not disjoint (certificate {cert:.3e})"
                )));
            }
        }
    }
    for i in 0..target.len() {
        for j in i + 1..target.len() {
            let (ok, cert) = target[i].y().spectra_disjoint(target[j].y(), cert_tol)?;
            if !ok {
                return Err(Error::PreconditionViolated(format!(
                    "target Y-spectra {i} and {j} are not disjoint (certificate {cert:.3e})"
                )));
            }
        }
    }
    Ok(())
}
