//! End-to-end transitivity: `g . g1 . g^{-1}`.

use super::{align, diagonalize, separate, Certificate, GenericityBudget, SolveReport, StageStats};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::moves::Program;
use crate::random::rng_from_seed;
use crate::space::{CMPoint, Configuration};

/// Seed of the throwaway diagonalization the verifier may need when a
/// compared point sits off the simple-spectrum locus.
const VERIFIER_SEED: u64 = 0x5eed_cafe;

/// One program mapping `source_i` to `target_i` for all `i` on a single
/// space. Tuples must be pairwise distinct within themselves; `source` and
/// `target` may share points.
pub fn solve_transitivity(
    source: &[CMPoint],
    target: &[CMPoint],
    budget: &GenericityBudget,
) -> Result<SolveReport> {
    for (i, p) in source.iter().chain(target).enumerate() {
        if p.size() != source.first().map(CMPoint::size).unwrap_or(p.size()) {
            return Err(Error::ShapeMismatch(format!(
                "point {i} has size {}, expected a single space",
                p.size()
            )));
        }
    }
    pipeline(source, target, budget)
}

/// One program simultaneously mapping every block's source tuple to its
/// target tuple on a product of spaces with pairwise distinct sizes.
pub fn solve_collective(
    source: &Configuration,
    target: &Configuration,
    budget: &GenericityBudget,
) -> Result<SolveReport> {
    for i in 0..source.blocks.len() {
        for j in i + 1..source.blocks.len() {
            if source.blocks[i].n == source.blocks[j].n {
                return Err(Error::DuplicateSpaceSizes(i, j, source.blocks[i].n));
            }
        }
    }
    if source.blocks.len() != target.blocks.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} source blocks vs {} target blocks",
            source.blocks.len(),
            target.blocks.len()
        )));
    }
    for (k, (sb, tb)) in source.blocks.iter().zip(&target.blocks).enumerate() {
        if sb.n != tb.n {
            return Err(Error::ShapeMismatch(format!(
                "block {k}: source size {} vs target size {}",
                sb.n, tb.n
            )));
        }
        if sb.points.len() != tb.points.len() {
            return Err(Error::ShapeMismatch(format!(
                "block {k}: {} source points vs {} target points",
                sb.points.len(),
                tb.points.len()
            )));
        }
    }
    pipeline(&source.flatten(), &target.flatten(), budget)
}

fn pipeline(
    source: &[CMPoint],
    target: &[CMPoint],
    budget: &GenericityBudget,
) -> Result<SolveReport> {
    let tols = Tolerances::default();
    let m = source.len();
    if m != target.len() {
        return Err(Error::ShapeMismatch(format!(
            "{m} source points vs {} target points",
            target.len()
        )));
    }
    if m == 0 {
        return Ok(SolveReport {
            program: Program::new(),
            stages: Vec::new(),
            verification: Vec::new(),
            certificates: Vec::new(),
            tol: budget.tol,
            passed: true,
        });
    }
    let mut rng = rng_from_seed(budget.seed);

    // step 1: certify every matrix of the concatenated 2m-tuple
    let all: Vec<CMPoint> = source.iter().chain(target).cloned().collect();
    let (g_diag, images, diag_retries) = diagonalize::run(&all, budget, &mut rng)?;

    // tuples must be distinct within themselves; duplicates across the two
    // tuples are legitimate and get grouped so separation skips them
    check_tuple_distinct(&images[..m])?;
    check_tuple_distinct(&images[m..])?;
    let classes = point_classes(&images)?;

    // step 2: disjoint spectra across all distinct points
    let (g_sep, images, sep_retries) = separate::run(&images, &classes, budget, &mut rng)?;
    let g = g_diag.then(&g_sep);

    // step 3: align the image tuples with two interpolation moves
    let (g1, align_retries) = align::run(&images[..m], &images[m..], budget, &mut rng)?;

    let program = g.then(&g1).then(&g.invert());
    let certificate = state_certificate(&images, &classes, tols.cert)?;

    let verification = verify_solution(&program, source, target, budget.tol)?;
    let max_distance = verification.iter().copied().fold(0.0, f64::max);
    let passed = max_distance <= budget.tol;
    let report = SolveReport {
        program,
        stages: vec![
            StageStats {
                name: "diagonalize".into(),
                moves: g_diag.len(),
                retries: diag_retries,
            },
            StageStats {
                name: "separate".into(),
                moves: g_sep.len(),
                retries: sep_retries,
            },
            StageStats {
                name: "align".into(),
                moves: g1.len(),
                retries: align_retries,
            },
        ],
        verification,
        certificates: vec![certificate],
        tol: budget.tol,
        passed,
    };
    if !passed {
        return Err(Error::VerificationFailed {
            max_distance,
            report: Box::new(report),
        });
    }
    Ok(report)
}

fn check_tuple_distinct(points: &[CMPoint]) -> Result<()> {
    let tols = Tolerances::default();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].size() != points[j].size() {
                continue;
            }
            let (same, _) = points[i].same_point(&points[j], 10.0 * tols.canon)?;
            if same {
                return Err(Error::DuplicatePoints(i, j));
            }
        }
    }
    Ok(())
}

/// Groups indices naming the same point of the same space; such indices
/// share spectra identically and are exempt from separation.
fn point_classes(points: &[CMPoint]) -> Result<Vec<usize>> {
    let tols = Tolerances::default();
    let mut classes: Vec<usize> = (0..points.len()).collect();
    for k in 0..points.len() {
        for l in 0..k {
            if points[l].size() == points[k].size() {
                let (same, _) = points[l].same_point(&points[k], 10.0 * tols.canon)?;
                if same {
                    classes[k] = classes[l];
                    break;
                }
            }
        }
    }
    Ok(classes)
}

/// Certificates of the post-`g` state: every matrix simple, every
/// cross-class pair of spectra disjoint. Re-validatable by applying the
/// report's generic prefix to the concatenated source and target points.
fn state_certificate(
    points: &[CMPoint],
    classes: &[usize],
    threshold: f64,
) -> Result<Certificate> {
    let mut cert = Certificate::default();
    for (k, p) in points.iter().enumerate() {
        let (_, mx) = p.x().is_simple_spectrum(threshold)?;
        cert.push(format!("X[{k}] simple spectrum"), mx, threshold);
        let (_, my) = p.y().is_simple_spectrum(threshold)?;
        cert.push(format!("Y[{k}] simple spectrum"), my, threshold);
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if classes[i] == classes[j] {
                continue;
            }
            let (_, cx) = points[i].x().spectra_disjoint(points[j].x(), threshold)?;
            cert.push(format!("X[{i}],X[{j}] disjoint spectra"), cx, threshold);
            let (_, cy) = points[i].y().spectra_disjoint(points[j].y(), threshold)?;
            cert.push(format!("Y[{i}],Y[{j}] disjoint spectra"), cy, threshold);
        }
    }
    Ok(cert)
}

/// Independent check of a claimed solution: apply the program to every
/// source point and measure the canonical distance to its target. When a
/// compared pair sits off the simple-spectrum locus, a throwaway certified
/// diagonalization is applied to both images identically first.
pub fn verify_solution(
    program: &Program,
    source: &[CMPoint],
    target: &[CMPoint],
    tol: f64,
) -> Result<Vec<f64>> {
    if source.len() != target.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} source points vs {} target points",
            source.len(),
            target.len()
        )));
    }
    let tols = Tolerances::default();
    let mut distances = Vec::with_capacity(source.len());
    for (s, t) in source.iter().zip(target) {
        let image = program.apply(s, tols.membership)?;
        let dist = match image.same_point(t, tol) {
            Ok((_, d)) => d,
            Err(Error::NotSimpleSpectrum) => {
                let throwaway = diagonalize::make_all_diagonalizable(
                    &[image.clone(), t.clone()],
                    &GenericityBudget::with_seed(VERIFIER_SEED),
                )?;
                let a = throwaway.apply(&image, tols.membership)?;
                let b = throwaway.apply(t, tols.membership)?;
                a.same_point(&b, tol)?.1
            }
            Err(other) => return Err(other),
        };
        distances.push(dist);
    }
    Ok(distances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::scalar::c;
    use crate::space::ConfigBlock;

    fn c1_point(x: f64, y: f64) -> CMPoint {
        CMPoint::from_matrices(CMatrix::diag(&[c(x, 0.0)]), CMatrix::diag(&[c(y, 0.0)]))
            .unwrap()
    }

    #[test]
    fn size_one_singleton_is_solved_exactly() {
        let budget = GenericityBudget::with_seed(1);
        let report =
            solve_transitivity(&[c1_point(0.0, 0.0)], &[c1_point(1.0, 2.0)], &budget).unwrap();
        assert!(report.passed);
        assert!(report.max_distance() <= 1e-9, "distance {}", report.max_distance());
    }

    #[test]
    fn identical_tuples_solve_with_identity_action() {
        let source = vec![CMPoint::random(2, 201, 1.0), CMPoint::random(2, 202, 1.0)];
        let budget = GenericityBudget::with_seed(2);
        let report = solve_transitivity(&source, &source.clone(), &budget).unwrap();
        assert!(report.passed);
        assert!(report.max_distance() <= 1e-6);
    }

    #[test]
    fn three_points_on_the_size_two_space() {
        let source: Vec<CMPoint> = (0..3).map(|k| CMPoint::random(2, 310 + k, 1.0)).collect();
        let target: Vec<CMPoint> = (0..3).map(|k| CMPoint::random(2, 320 + k, 1.0)).collect();
        let budget = GenericityBudget::with_seed(3);
        let report = solve_transitivity(&source, &target, &budget).unwrap();
        assert!(report.passed);
        assert!(report.max_distance() <= 1e-6, "distance {}", report.max_distance());
    }

    #[test]
    fn duplicate_source_points_are_rejected() {
        let p = CMPoint::random(2, 400, 1.0);
        let q = CMPoint::random(2, 401, 1.0);
        let budget = GenericityBudget::with_seed(4);
        let err = solve_transitivity(&[p.clone(), p.clone()], &[q.clone(), q], &budget);
        assert!(matches!(err, Err(Error::DuplicatePoints(0, 1))));
    }

    #[test]
    fn collective_empty_configuration_is_trivial() {
        let budget = GenericityBudget::with_seed(5);
        let report = solve_collective(
            &Configuration::default(),
            &Configuration::default(),
            &budget,
        )
        .unwrap();
        assert!(report.passed);
        assert!(report.program.is_empty());
    }

    #[test]
    fn collective_mixed_sizes_solve() {
        let source = Configuration::new(vec![
            ConfigBlock {
                n: 1,
                points: vec![CMPoint::random(1, 500, 1.0)],
            },
            ConfigBlock {
                n: 2,
                points: vec![CMPoint::random(2, 501, 1.0)],
            },
        ]);
        let target = Configuration::new(vec![
            ConfigBlock {
                n: 1,
                points: vec![CMPoint::random(1, 510, 1.0)],
            },
            ConfigBlock {
                n: 2,
                points: vec![CMPoint::random(2, 511, 1.0)],
            },
        ]);
        let budget = GenericityBudget::with_seed(6);
        let report = solve_collective(&source, &target, &budget).unwrap();
        assert!(report.passed);
        assert!(report.max_distance() <= 1e-6);
    }

    #[test]
    fn equal_block_sizes_are_rejected() {
        let mk = |seed| ConfigBlock {
            n: 2,
            points: vec![CMPoint::random(2, seed, 1.0)],
        };
        let source = Configuration::new(vec![mk(600), mk(601)]);
        let target = Configuration::new(vec![mk(610), mk(611)]);
        let budget = GenericityBudget::with_seed(7);
        assert!(matches!(
            solve_collective(&source, &target, &budget),
            Err(Error::DuplicateSpaceSizes(0, 1, 2))
        ));
    }

    #[test]
    fn verifier_catches_a_deleted_move() {
        let source = vec![CMPoint::random(2, 700, 1.0)];
        let target = vec![CMPoint::random(2, 701, 1.0)];
        let budget = GenericityBudget::with_seed(8);
        let report = solve_transitivity(&source, &target, &budget).unwrap();
        assert!(report.passed);

        let mut mutated = Program::new();
        for (k, mv) in report.program.moves().iter().enumerate() {
            if k != report.program.len() / 2 {
                mutated.push(mv.clone());
            }
        }
        let distances = verify_solution(&mutated, &source, &target, 1e-6).unwrap();
        assert!(
            distances.iter().any(|&d| d > 1e-6),
            "deleting a move must break at least one point"
        );
    }

    #[test]
    fn identity_program_on_equal_tuples_verifies_at_zero() {
        let p = CMPoint::random(2, 800, 1.0);
        let distances =
            verify_solution(&Program::new(), &[p.clone()], &[p], 1e-12).unwrap();
        assert!(distances[0] <= 1e-12);
    }
}
