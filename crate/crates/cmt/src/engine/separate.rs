//! Certified spectral separation by shared random moves.
//!
//! After this stage all `X`-components have pairwise disjoint spectra and
//! all `Y`-components have pairwise disjoint spectra, with every
//! simple-spectrum certificate still standing. One shared move of each kind
//! usually suffices: a `Y += t q(X)` move reshuffles all `Y`-spectra
//! (leaving every `X` untouched), then an `X += t p(Y)` move reshuffles all
//! `X`-spectra (leaving every `Y`, and hence the fresh `Y`-separation,
//! untouched). When points share a component exactly, moves of one kind
//! shift them in lockstep; a stir move of the opposite kind breaks the tie
//! before the search resumes.

use super::GenericityBudget;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::moves::{Move, MoveKind, Program};
use crate::random::{complex_in_annulus, random_poly, rng_from_seed};
use crate::space::CMPoint;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

#[derive(Clone, Copy, PartialEq)]
enum Component {
    X,
    Y,
}

fn component_of(point: &CMPoint, which: Component) -> &crate::linalg::CMatrix {
    match which {
        Component::X => point.x(),
        Component::Y => point.y(),
    }
}

/// Program after which all `X`-spectra are pairwise disjoint, all
/// `Y`-spectra are pairwise disjoint, and all simple-spectrum certificates
/// hold. Points must be pairwise distinct; equal points have equal spectra
/// forever, so coincidences are a precondition violation here (the solver
/// handles them by grouping).
pub fn separate_spectra(points: &[CMPoint], budget: &GenericityBudget) -> Result<Program> {
    let classes: Vec<usize> = (0..points.len()).collect();
    let mut rng = rng_from_seed(budget.seed);
    run(points, &classes, budget, &mut rng).map(|(program, _, _)| program)
}

fn all_simple(points: &[CMPoint], tol: f64) -> Result<bool> {
    for point in points {
        if !point.x().is_simple_spectrum(tol)?.0 || !point.y().is_simple_spectrum(tol)?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cross-spectrum gap the engine insists on beyond the resultant
/// certificate: the certificate is a product over all eigenvalue pairs, so
/// a single near-collision could hide behind large gaps elsewhere, and the
/// alignment stage interpolates over exactly these nodes.
const MIN_CROSS_GAP: f64 = 1e-6;

fn separated(points: &[CMPoint], classes: &[usize], which: Component, tol: f64) -> Result<bool> {
    use crate::config::ROOT_TOL;
    use crate::scalar::min_cross_distance;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if classes[i] == classes[j] {
                continue;
            }
            let a = component_of(&points[i], which);
            let b = component_of(&points[j], which);
            let (ok, _) = a.spectra_disjoint(b, tol)?;
            if !ok {
                return Ok(false);
            }
            if min_cross_distance(&a.eigenvalues(ROOT_TOL)?, &b.eigenvalues(ROOT_TOL)?)
                <= MIN_CROSS_GAP
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Core loop shared by the public operation and the solver. `classes`
/// groups indices that are known to be the same point of the space (their
/// spectra coincide identically and are exempt from separation).
pub(crate) fn run(
    points: &[CMPoint],
    classes: &[usize],
    budget: &GenericityBudget,
    rng: &mut ChaCha12Rng,
) -> Result<(Program, Vec<CMPoint>, usize)> {
    let tols = Tolerances::default();
    for (k, point) in points.iter().enumerate() {
        if !point.x().is_simple_spectrum(tols.cert)?.0
            || !point.y().is_simple_spectrum(tols.cert)?.0
        {
            return Err(Error::PreconditionViolated(format!(
                "point {k} lacks a simple-spectrum certificate"
            )));
        }
    }

    let mut pts = points.to_vec();
    let mut program = Program::new();
    let mut retries = 0usize;
    let max_n = pts.iter().map(CMPoint::size).max().unwrap_or(1);

    // Y first: the later X-kind moves leave Y untouched.
    for which in [Component::Y, Component::X] {
        if separated(&pts, classes, which, tols.cert)? {
            continue;
        }
        let kind = match which {
            Component::Y => MoveKind::AddPolyOfXToY,
            Component::X => MoveKind::AddPolyOfYToX,
        };
        let mut done = false;
        let mut failed_draws = 0usize;
        while !done {
            if retries >= budget.max_retries {
                return Err(Error::GenericityExhausted(retries));
            }
            let degree = rng.gen_range(1..=max_n);
            let p = random_poly(rng, degree, budget.coeff_scale);
            let mut accepted = false;
            for _ in 0..budget.t_samples.max(1) {
                retries += 1;
                let t = complex_in_annulus(rng, 0.5, 2.0);
                let mv = Move::new(kind, p.scale(t));
                let Some(candidate) = apply_all(&mv, &pts, tols.membership) else {
                    continue;
                };
                if all_simple(&candidate, tols.cert)?
                    && separated(&candidate, classes, which, tols.cert)?
                {
                    program.push(mv);
                    pts = candidate;
                    accepted = true;
                    break;
                }
            }
            if accepted {
                done = true;
            } else {
                failed_draws += 1;
                if failed_draws >= 2 {
                    // stir with the opposite kind so components that move in
                    // lockstep under `kind` stop coinciding
                    retries += 1;
                    let degree = rng.gen_range(1..=max_n);
                    let q = random_poly(rng, degree, budget.coeff_scale);
                    let t = complex_in_annulus(rng, 0.5, 2.0);
                    let stir = Move::new(kind.opposite(), q.scale(t));
                    if let Some(candidate) = apply_all(&stir, &pts, tols.membership) {
                        // a Y-kind stir during the X phase must not undo the
                        // Y-separation already achieved
                        let keeps_y = which == Component::Y
                            || separated(&candidate, classes, Component::Y, tols.cert)?;
                        if all_simple(&candidate, tols.cert)? && keeps_y {
                            program.push(stir);
                            pts = candidate;
                            failed_draws = 0;
                        }
                    }
                }
            }
        }
    }
    Ok((program, pts, retries))
}

fn apply_all(mv: &Move, points: &[CMPoint], tol: f64) -> Option<Vec<CMPoint>> {
    let mut out = Vec::with_capacity(points.len());
    for point in points {
        match mv.apply(point, tol) {
            Ok(image) => out.push(image),
            Err(_) => return None,
        }
    }
    Some(out)
}
