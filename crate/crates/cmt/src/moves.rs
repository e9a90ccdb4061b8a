//! Words in the triangular generators.
//!
//! A [`Move`] is one generator: `(X, Y) -> (X + p(Y), Y)` or
//! `(X, Y) -> (X, Y + q(X))`. A [`Program`] is an ordered word of moves,
//! applied left to right; it acts diagonally on every point of every block
//! of a configuration. Programs are stored as generator words, never as
//! matrix transformations — the word itself is the artifact's deliverable.
//! Both transformations leave the commutator unchanged, so membership is
//! preserved exactly in principle; every application still re-verifies the
//! rank-one condition and reports `MembershipLost` if numerical damage
//! accumulated.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::space::{verify_membership, CMPoint, ConfigBlock, Configuration};

/// Which matrix receives the polynomial of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    /// `(X, Y) -> (X + p(Y), Y)`
    AddPolyOfYToX,
    /// `(X, Y) -> (X, Y + q(X))`
    AddPolyOfXToY,
}

impl MoveKind {
    /// Serialized label, frozen in the program file format.
    pub fn label(self) -> &'static str {
        match self {
            MoveKind::AddPolyOfYToX => "X+=p(Y)",
            MoveKind::AddPolyOfXToY => "Y+=q(X)",
        }
    }

    pub fn parse(label: &str) -> Result<MoveKind> {
        match label {
            "X+=p(Y)" => Ok(MoveKind::AddPolyOfYToX),
            "Y+=q(X)" => Ok(MoveKind::AddPolyOfXToY),
            other => Err(Error::Format(format!("unknown move kind {other:?}"))),
        }
    }

    pub fn opposite(self) -> MoveKind {
        match self {
            MoveKind::AddPolyOfYToX => MoveKind::AddPolyOfXToY,
            MoveKind::AddPolyOfXToY => MoveKind::AddPolyOfYToX,
        }
    }
}

/// One triangular automorphism.
#[derive(Clone, Debug)]
pub struct Move {
    pub kind: MoveKind,
    pub poly: Poly,
}

impl Move {
    pub fn new(kind: MoveKind, poly: Poly) -> Move {
        Move { kind, poly }
    }

    pub fn is_identity(&self) -> bool {
        self.poly.is_zero()
    }

    /// The inverse generator: the same kind with the polynomial negated.
    pub fn inverse(&self) -> Move {
        Move {
            kind: self.kind,
            poly: -&self.poly,
        }
    }

    /// Applies the move and re-verifies membership at tolerance `tol`.
    pub fn apply(&self, point: &CMPoint, tol: f64) -> Result<CMPoint> {
        let (x, y) = match self.kind {
            MoveKind::AddPolyOfYToX => {
                (point.x().add(&self.poly.eval_matrix(point.y())), point.y().clone())
            }
            MoveKind::AddPolyOfXToY => {
                (point.x().clone(), point.y().add(&self.poly.eval_matrix(point.x())))
            }
        };
        let (ok, residual) = verify_membership(&x, &y, tol)?;
        if !ok {
            return Err(Error::MembershipLost {
                move_index: 0,
                residual,
            });
        }
        CMPoint::from_matrices(x, y)
    }
}

/// A composable, invertible word in the generators, applied left to right.
#[derive(Clone, Debug, Default)]
pub struct Program {
    moves: Vec<Move>,
}

impl Program {
    pub fn new() -> Program {
        Program { moves: Vec::new() }
    }

    pub fn from_moves(moves: Vec<Move>) -> Program {
        Program { moves }
    }

    pub fn push(&mut self, mv: Move) {
        self.moves.push(mv);
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Largest polynomial degree appearing in the word.
    pub fn max_degree(&self) -> Option<usize> {
        self.moves.iter().filter_map(|m| m.poly.degree()).max()
    }

    /// Left-to-right fold of the moves over one point.
    pub fn apply(&self, point: &CMPoint, tol: f64) -> Result<CMPoint> {
        let mut current = point.clone();
        for (idx, mv) in self.moves.iter().enumerate() {
            current = mv.apply(&current, tol).map_err(|e| match e {
                Error::MembershipLost { residual, .. } => Error::MembershipLost {
                    move_index: idx,
                    residual,
                },
                other => other,
            })?;
        }
        Ok(current)
    }

    /// Blockwise, pointwise application: the word acts diagonally.
    pub fn apply_to_configuration(&self, cfg: &Configuration, tol: f64) -> Result<Configuration> {
        let mut blocks = Vec::with_capacity(cfg.blocks.len());
        for (bi, block) in cfg.blocks.iter().enumerate() {
            let mut points = Vec::with_capacity(block.points.len());
            for (pi, point) in block.points.iter().enumerate() {
                let image = self.apply(point, tol).map_err(|e| match e {
                    Error::MembershipLost {
                        move_index,
                        residual,
                    } => Error::ConfigurationMembershipLost {
                        block: bi,
                        point: pi,
                        move_index,
                        residual,
                    },
                    other => other,
                })?;
                points.push(image);
            }
            blocks.push(ConfigBlock {
                n: block.n,
                points,
            });
        }
        Ok(Configuration { blocks })
    }

    /// The inverse word: reversed order, each polynomial negated.
    pub fn invert(&self) -> Program {
        Program {
            moves: self.moves.iter().rev().map(Move::inverse).collect(),
        }
    }

    /// Concatenation in application order: `self` acts first.
    pub fn then(&self, later: &Program) -> Program {
        let mut moves = self.moves.clone();
        moves.extend(later.moves.iter().cloned());
        Program { moves }
    }
}

/// Concatenation in application order.
pub fn compose(first: &Program, then: &Program) -> Program {
    first.then(then)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_poly, rng_from_seed};
    use crate::scalar::c;

    #[test]
    fn zero_polynomial_leaves_the_point_alone() {
        let p = CMPoint::random(2, 5, 1.0);
        let mv = Move::new(MoveKind::AddPolyOfYToX, Poly::zero());
        let q = mv.apply(&p, 1e-8).unwrap();
        assert_eq!(p.x().dist_max(q.x()), 0.0);
        assert_eq!(p.y().dist_max(q.y()), 0.0);
    }

    #[test]
    fn diagonal_shift_matches_scalar_evaluation() {
        // on an X-diagonal point, Y += q(X) shifts the diagonal of Y by
        // q(x_i) and leaves the off-diagonal entries untouched
        let lambdas = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.5)];
        let diag = [c(0.2, 0.0), c(-0.4, 0.1), c(0.0, 0.0)];
        let p = CMPoint::with_x_spectrum(&lambdas, &diag).unwrap();
        let q = Poly::from_real(&[0.5, -1.0, 2.0]);
        let mv = Move::new(MoveKind::AddPolyOfXToY, q.clone());
        let image = mv.apply(&p, 1e-8).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j {
                    diag[i] + q.eval_scalar(lambdas[i])
                } else {
                    p.y().get(i, j)
                };
                assert!((image.y().get(i, j) - expected).norm() < 1e-12);
            }
        }
        assert_eq!(image.x().dist_max(p.x()), 0.0, "X untouched");
    }

    #[test]
    fn moves_never_touch_the_other_matrix() {
        let p = CMPoint::random(3, 9, 1.0);
        let mut rng = rng_from_seed(1);
        let poly = random_poly(&mut rng, 3, 1.0);
        let mx = Move::new(MoveKind::AddPolyOfYToX, poly.clone());
        let my = Move::new(MoveKind::AddPolyOfXToY, poly);
        assert_eq!(mx.apply(&p, 1e-7).unwrap().y().dist_max(p.y()), 0.0);
        assert_eq!(my.apply(&p, 1e-7).unwrap().x().dist_max(p.x()), 0.0);
    }

    #[test]
    fn random_moves_preserve_membership() {
        let mut rng = rng_from_seed(77);
        for case in 0..40 {
            let n = 1 + case % 4;
            let p = CMPoint::random(n, 1000 + case as u64, 1.0);
            let deg = 1 + (case % 4);
            let poly = random_poly(&mut rng, deg, 1.0);
            let kind = if case % 2 == 0 {
                MoveKind::AddPolyOfYToX
            } else {
                MoveKind::AddPolyOfXToY
            };
            let image = Move::new(kind, poly).apply(&p, 1e-8).unwrap();
            let (ok, residual) = image.membership(1e-8).unwrap();
            assert!(ok, "case {case}: residual {residual}");
        }
    }

    #[test]
    fn empty_program_is_identity() {
        let p = CMPoint::random(2, 3, 1.0);
        let prog = Program::new();
        let q = prog.apply(&p, 1e-8).unwrap();
        assert_eq!(p.x().dist_max(q.x()), 0.0);
    }

    #[test]
    fn invert_reverses_and_negates() {
        let a = Move::new(MoveKind::AddPolyOfYToX, Poly::from_real(&[1.0, 2.0]));
        let b = Move::new(MoveKind::AddPolyOfXToY, Poly::from_real(&[0.0, -3.0]));
        let prog = Program::from_moves(vec![a, b]);
        let inv = prog.invert();
        assert_eq!(inv.moves()[0].kind, MoveKind::AddPolyOfXToY);
        assert_eq!(inv.moves()[0].poly, Poly::from_real(&[0.0, 3.0]));
        assert_eq!(inv.moves()[1].kind, MoveKind::AddPolyOfYToX);
        assert_eq!(inv.moves()[1].poly, Poly::from_real(&[-1.0, -2.0]));

        let double = inv.invert();
        for (m1, m2) in prog.moves().iter().zip(double.moves()) {
            assert_eq!(m1.kind, m2.kind);
            assert_eq!(m1.poly, m2.poly);
        }
        assert!(Program::new().invert().is_empty());
    }

    #[test]
    fn program_and_inverse_round_trip_to_the_same_point() {
        let mut rng = rng_from_seed(13);
        let p = CMPoint::random(2, 21, 1.0);
        let prog = Program::from_moves(vec![
            Move::new(MoveKind::AddPolyOfYToX, random_poly(&mut rng, 2, 0.7)),
            Move::new(MoveKind::AddPolyOfXToY, random_poly(&mut rng, 3, 0.7)),
            Move::new(MoveKind::AddPolyOfYToX, random_poly(&mut rng, 1, 0.7)),
        ]);
        let there = prog.apply(&p, 1e-7).unwrap();
        let back = prog.invert().apply(&there, 1e-7).unwrap();
        let (same, dist) = p.same_point(&back, 1e-7).unwrap();
        assert!(same, "distance {dist}");
    }

    #[test]
    fn composition_is_concatenation() {
        let mut rng = rng_from_seed(31);
        let a = Program::from_moves(vec![Move::new(
            MoveKind::AddPolyOfYToX,
            random_poly(&mut rng, 2, 0.5),
        )]);
        let b = Program::from_moves(vec![Move::new(
            MoveKind::AddPolyOfXToY,
            random_poly(&mut rng, 2, 0.5),
        )]);
        assert_eq!(compose(&a, &Program::new()).len(), 1);

        let p = CMPoint::random(2, 8, 1.0);
        let via_compose = compose(&a, &b).apply(&p, 1e-7).unwrap();
        let via_steps = b.apply(&a.apply(&p, 1e-7).unwrap(), 1e-7).unwrap();
        let (same, dist) = via_compose.same_point(&via_steps, 1e-9).unwrap();
        assert!(same, "distance {dist}");
    }

    #[test]
    fn adding_a_char_poly_multiple_acts_identically() {
        // the action only sees the polynomial modulo the characteristic
        // polynomial of the matrix it is evaluated on (simple spectrum makes
        // minimal = characteristic)
        let p = CMPoint::random(3, 55, 1.0);
        let mut rng = rng_from_seed(2);
        let base = random_poly(&mut rng, 2, 1.0);
        let multiplier = random_poly(&mut rng, 1, 1.0);
        let chi = p.y().char_poly().unwrap();
        let shifted = &base + &(&multiplier * &chi);

        let img_a = Move::new(MoveKind::AddPolyOfYToX, base).apply(&p, 1e-7).unwrap();
        let img_b = Move::new(MoveKind::AddPolyOfYToX, shifted).apply(&p, 1e-7).unwrap();
        let (same, dist) = img_a.same_point(&img_b, 1e-7).unwrap();
        assert!(same, "distance {dist}");
    }

    #[test]
    fn configuration_application_matches_pointwise() {
        let p = CMPoint::random(2, 61, 1.0);
        let cfg = Configuration::new(vec![ConfigBlock {
            n: 2,
            points: vec![p.clone()],
        }]);
        let mut rng = rng_from_seed(4);
        let prog = Program::from_moves(vec![Move::new(
            MoveKind::AddPolyOfXToY,
            random_poly(&mut rng, 2, 0.8),
        )]);
        let image_cfg = prog.apply_to_configuration(&cfg, 1e-7).unwrap();
        let image_pt = prog.apply(&p, 1e-7).unwrap();
        assert_eq!(
            image_cfg.blocks[0].points[0].x().dist_max(image_pt.x()),
            0.0
        );

        let empty = Program::new().apply_to_configuration(&cfg, 1e-7).unwrap();
        assert_eq!(empty.blocks[0].points[0].y().dist_max(p.y()), 0.0);
    }
}
