//! Certified randomized diagonalization.
//!
//! "Diagonalizable" is certified only through a simple-spectrum resultant:
//! for a matrix with simple spectrum the certificate is a single nonzero
//! number, and every construction downstream lands on simple spectra
//! anyway. The bad parameter set of each random draw is a proper algebraic
//! subset, so draws succeed with probability one; the certificate makes
//! that checkable instead of assumed.

use super::{Certificate, GenericityBudget};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::moves::{Move, MoveKind, Program};
use crate::poly::Poly;
use crate::random::{complex_in_annulus, random_poly, rng_from_seed};
use crate::space::CMPoint;
use rand::Rng;
use rand_chacha::ChaCha12Rng;

/// One move `X += t * p(Y)` whose image has a certified simple-spectrum
/// `X`-component; the zero move if `X` is already certified.
pub fn diagonalizing_move(
    point: &CMPoint,
    budget: &GenericityBudget,
) -> Result<(Move, Certificate)> {
    let tols = Tolerances::default();
    let (ok, magnitude) = point.x().is_simple_spectrum(tols.cert)?;
    if ok {
        let mut cert = Certificate::default();
        cert.push("X simple spectrum (already certified)", magnitude, tols.cert);
        return Ok((Move::new(MoveKind::AddPolyOfYToX, Poly::zero()), cert));
    }

    let mut rng = rng_from_seed(budget.seed);
    let mut attempts = 0usize;
    for _ in 0..budget.max_retries {
        let degree = rng.gen_range(1..=point.size());
        let p = random_poly(&mut rng, degree, budget.coeff_scale);
        for _ in 0..budget.t_samples.max(1) {
            attempts += 1;
            let t = complex_in_annulus(&mut rng, 0.5, 2.0);
            let mv = Move::new(MoveKind::AddPolyOfYToX, p.scale(t));
            let image = match mv.apply(point, tols.membership) {
                Ok(image) => image,
                Err(_) => continue,
            };
            let (ok, magnitude) = image.x().is_simple_spectrum(tols.cert)?;
            if ok {
                let mut cert = Certificate::default();
                cert.push("X simple spectrum after move", magnitude, tols.cert);
                return Ok((mv, cert));
            }
        }
    }
    Err(Error::GenericityExhausted(attempts))
}

/// Program after which every `X`- and every `Y`-component in the list has a
/// simple-spectrum certificate. Matrices are fixed one by one — all `X`
/// first, then all `Y` — with each accepted move re-certifying everything
/// fixed so far, so the program has at most one move per matrix.
pub fn make_all_diagonalizable(points: &[CMPoint], budget: &GenericityBudget) -> Result<Program> {
    let mut rng = rng_from_seed(budget.seed);
    run(points, budget, &mut rng).map(|(program, _, _)| program)
}

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

pub(crate) fn run(
    points: &[CMPoint],
    budget: &GenericityBudget,
    rng: &mut ChaCha12Rng,
) -> Result<(Program, Vec<CMPoint>, usize)> {
    let tols = Tolerances::default();
    for (k, point) in points.iter().enumerate() {
        let (ok, residual) = point.membership(tols.membership)?;
        if !ok {
            return Err(Error::PreconditionViolated(format!(
                "point {k} is not a member (residual {residual:.3e})"
            )));
        }
    }

    let mut pts = points.to_vec();
    let mut program = Program::new();
    let mut retries = 0usize;

    for which in [Component::X, Component::Y] {
        let kind = match which {
            Component::X => MoveKind::AddPolyOfYToX,
            Component::Y => MoveKind::AddPolyOfXToY,
        };
        for i in 0..pts.len() {
            if component_of(&pts[i], which)
                .is_simple_spectrum(tols.cert)?
                .0
            {
                continue;
            }
            let mut fixed = false;
            'draws: for _ in 0..budget.max_retries {
                let max_n = pts.iter().map(CMPoint::size).max().unwrap_or(1);
                let degree = rng.gen_range(1..=max_n);
                let p = random_poly(rng, degree, budget.coeff_scale);
                for _ in 0..budget.t_samples.max(1) {
                    retries += 1;
                    let t = complex_in_annulus(rng, 0.5, 2.0);
                    let mv = Move::new(kind, p.scale(t));
                    let mut candidate = Vec::with_capacity(pts.len());
                    let mut applied = true;
                    for pt in &pts {
                        match mv.apply(pt, tols.membership) {
                            Ok(image) => candidate.push(image),
                            Err(_) => {
                                applied = false;
                                break;
                            }
                        }
                    }
                    if !applied {
                        continue;
                    }
                    // everything certified so far in this phase must stay
                    // certified, including the matrix being fixed
                    let mut all_ok = true;
                    for cand in candidate.iter().take(i + 1) {
                        if !component_of(cand, which).is_simple_spectrum(tols.cert)?.0 {
                            all_ok = false;
                            break;
                        }
                    }
                    if all_ok {
                        program.push(mv);
                        pts = candidate;
                        fixed = true;
                        break 'draws;
                    }
                }
            }
            if !fixed {
                return Err(Error::GenericityExhausted(retries));
            }
        }
    }
    Ok((program, pts, retries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::scalar::c;

    /// A genuine member of the size-2 space whose X is nilpotent: obtained
    /// by solving the rank-one condition directly, since
    /// [X, Y] + I = diag(2, 0) for this pair.
    pub(crate) fn nilpotent_fixture() -> CMPoint {
        let x = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let y = CMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        CMPoint::from_matrices(x, y).unwrap()
    }

    #[test]
    fn already_simple_gets_the_zero_move() {
        let p = CMPoint::random(3, 40, 1.0);
        let budget = GenericityBudget::with_seed(1);
        let (mv, cert) = diagonalizing_move(&p, &budget).unwrap();
        assert!(mv.is_identity());
        assert!(cert.is_valid());
    }

    #[test]
    fn nilpotent_x_is_repaired_with_a_certificate() {
        let fixture = nilpotent_fixture();
        let (ok, _) = fixture.x().is_simple_spectrum(1e-8).unwrap();
        assert!(!ok, "fixture X is nilpotent");

        let budget = GenericityBudget::with_seed(5);
        let (mv, cert) = diagonalizing_move(&fixture, &budget).unwrap();
        assert!(!mv.is_identity());
        assert!(cert.is_valid());
        let image = mv.apply(&fixture, 1e-7).unwrap();
        let (ok, _) = image.x().is_simple_spectrum(1e-8).unwrap();
        assert!(ok);
    }

    #[test]
    fn zero_budget_exhausts_on_the_fixture() {
        let fixture = nilpotent_fixture();
        let budget = GenericityBudget {
            max_retries: 0,
            ..GenericityBudget::with_seed(5)
        };
        assert!(matches!(
            diagonalizing_move(&fixture, &budget),
            Err(Error::GenericityExhausted(0))
        ));
    }

    #[test]
    fn certified_list_yields_empty_program() {
        let pts = vec![CMPoint::random(2, 1, 1.0), CMPoint::random(3, 2, 1.0)];
        let prog = make_all_diagonalizable(&pts, &GenericityBudget::with_seed(9)).unwrap();
        assert!(prog.is_empty());
    }

    #[test]
    fn single_uncertified_point_needs_at_most_two_moves() {
        let pts = vec![nilpotent_fixture()];
        let budget = GenericityBudget::with_seed(17);
        let prog = make_all_diagonalizable(&pts, &budget).unwrap();
        assert!(prog.len() <= 2, "emitted {} moves", prog.len());
        let tols = Tolerances::default();
        let image = prog.apply(&pts[0], tols.membership).unwrap();
        assert!(image.x().is_simple_spectrum(1e-8).unwrap().0);
        assert!(image.y().is_simple_spectrum(1e-8).unwrap().0);
    }

    #[test]
    fn mixed_sizes_all_end_up_certified() {
        let pts = vec![
            CMPoint::random(1, 3, 1.0),
            nilpotent_fixture(),
            CMPoint::random(3, 4, 1.0),
        ];
        let budget = GenericityBudget::with_seed(23);
        let prog = make_all_diagonalizable(&pts, &budget).unwrap();
        assert!(prog.len() <= 2 * pts.len());
        let tols = Tolerances::default();
        for p in &pts {
            let image = prog.apply(p, tols.membership).unwrap();
            assert!(image.x().is_simple_spectrum(1e-8).unwrap().0);
            assert!(image.y().is_simple_spectrum(1e-8).unwrap().0);
        }
    }
}
