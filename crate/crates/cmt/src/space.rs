//! The domain model of Calogero-Moser spaces.
//!
//! A point of `C_n` is a matrix pair `(X, Y)` with `rank([X, Y] + I) = 1`,
//! up to simultaneous conjugation. On the locus where `X` has simple
//! spectrum, a point has a normalized representative: `X` diagonal with
//! entries in canonical order and the rank-one factor of `[X, Y] + I`
//! rescaled to all-ones, which forces the off-diagonal entries of `Y` to
//! `1 / (x_i - x_j)`. The remaining data — the pairs `(x_i, y_ii)` — is the
//! [`CanonicalForm`] and decides equality of points.

use crate::config::{EPS_CANON, EPS_SPEC};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::random::{distinct_values, random_conjugator, rng_from_seed};
use crate::scalar::canonical_cmp;
use num_complex::Complex64;

/// A representative of a point of `C_n`.
#[derive(Clone, Debug)]
pub struct CMPoint {
    n: usize,
    x: CMatrix,
    y: CMatrix,
}

/// Torus-and-permutation-normalized invariant of a point with simple
/// `X`-spectrum: the pairs `(x_i, y_ii)` in canonical order.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub n: usize,
    pub pairs: Vec<(Complex64, Complex64)>,
}

/// An ordered collection of tuples of points, one tuple per space size.
#[derive(Clone, Debug, Default)]
pub struct Configuration {
    pub blocks: Vec<ConfigBlock>,
}

/// Points of a single `C_n`.
#[derive(Clone, Debug)]
pub struct ConfigBlock {
    pub n: usize,
    pub points: Vec<CMPoint>,
}

/// Rank-one membership test: true iff `rank([X, Y] + I) = 1`. The residual
/// is the second-largest elimination pivot of `[X, Y] + I`, normalized by
/// `max(1, norm)`; for a genuine member it sits at roundoff level.
pub fn verify_membership(x: &CMatrix, y: &CMatrix, tol: f64) -> Result<(bool, f64)> {
    if x.size() != y.size() {
        return Err(Error::SizeMismatch(x.size(), y.size()));
    }
    let n = x.size();
    let r = x.commutator(y)?.add(&CMatrix::identity(n));
    let pivots = r.pivot_magnitudes();
    let scale = r.norm_max().max(1.0);
    let residual = if n >= 2 { pivots[1] / scale } else { 0.0 };
    let ok = pivots[0] / scale > tol && residual <= tol;
    Ok((ok, residual))
}

impl CMPoint {
    /// Wraps a matrix pair, checking sizes and finiteness but not
    /// membership; use [`verify_membership`] or [`CMPoint::membership`]
    /// when the rank-one condition needs certifying.
    pub fn from_matrices(x: CMatrix, y: CMatrix) -> Result<CMPoint> {
        if x.size() != y.size() {
            return Err(Error::SizeMismatch(x.size(), y.size()));
        }
        if x.size() == 0 {
            return Err(Error::ShapeMismatch("points must have size >= 1".into()));
        }
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Format("matrix entries must be finite".into()));
        }
        Ok(CMPoint {
            n: x.size(),
            x,
            y,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &CMatrix {
        &self.x
    }

    pub fn y(&self) -> &CMatrix {
        &self.y
    }

    pub fn membership(&self, tol: f64) -> Result<(bool, f64)> {
        verify_membership(&self.x, &self.y, tol)
    }

    /// Builds the normalized-form point with `X = diag(lambdas)`, the given
    /// `Y`-diagonal, and the forced off-diagonal entries `1 / (l_i - l_j)`.
    /// Membership holds by construction.
    pub fn with_x_spectrum(lambdas: &[Complex64], diag_y: &[Complex64]) -> Result<CMPoint> {
        if lambdas.len() != diag_y.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} eigenvalues vs {} diagonal entries",
                lambdas.len(),
                diag_y.len()
            )));
        }
        let n = lambdas.len();
        for i in 0..n {
            for j in i + 1..n {
                if (lambdas[i] - lambdas[j]).norm() <= EPS_SPEC {
                    return Err(Error::RepeatedEigenvalue(i, j));
                }
            }
        }
        let x = CMatrix::diag(lambdas);
        let y = CMatrix::from_fn(n, |i, j| {
            if i == j {
                diag_y[i]
            } else {
                Complex64::new(1.0, 0.0) / (lambdas[i] - lambdas[j])
            }
        });
        CMPoint::from_matrices(x, y)
    }

    /// Deterministic random member of `C_n`: a normalized-form point with
    /// random spectrum and diagonal, conjugated by a random well-conditioned
    /// matrix so callers never see pre-normalized inputs.
    pub fn random(n: usize, seed: u64, scale: f64) -> CMPoint {
        let mut rng = rng_from_seed(seed);
        let sep = 0.25 * scale / n as f64;
        let lambdas = distinct_values(&mut rng, n, scale, sep);
        let diag_y: Vec<Complex64> = (0..n)
            .map(|_| crate::random::complex_in_square(&mut rng, scale))
            .collect();
        let base = CMPoint::with_x_spectrum(&lambdas, &diag_y)
            .expect("separated eigenvalues by construction");
        let (a, a_inv) = random_conjugator(&mut rng, n);
        base.conjugated(&a, &a_inv)
            .expect("conjugator carries its exact inverse")
    }

    /// Simultaneous conjugation of both matrices: the same point of `C_n`
    /// in a different frame.
    pub fn conjugated(&self, a: &CMatrix, a_inv: &CMatrix) -> Result<CMPoint> {
        Ok(CMPoint {
            n: self.n,
            x: self.x.conjugate(a, a_inv)?,
            y: self.y.conjugate(a, a_inv)?,
        })
    }

    /// Exchanges the roles of `X` and `Y` via `(X, Y) -> (Y^T, X^T)`, an
    /// exact involution that preserves membership since
    /// `[Y^T, X^T] = [X, Y]^T`.
    pub fn transpose_swap(&self) -> CMPoint {
        CMPoint {
            n: self.n,
            x: self.y.transpose(),
            y: self.x.transpose(),
        }
    }

    /// The normalized frame on the simple-`X`-spectrum locus: eigenvalues of
    /// `X` in canonical order together with `Y` written in the conjugated,
    /// torus-normalized basis, where its off-diagonal entries must equal
    /// `1 / (x_i - x_j)` up to `tol` (relative to the frame's scale).
    pub fn wilson_frame(&self, tol: f64) -> Result<(Vec<Complex64>, CMatrix)> {
        let n = self.n;
        if n == 1 {
            return Ok((vec![self.x.get(0, 0)], self.y.clone()));
        }
        let decomp = self.x.eigen_decompose(EPS_SPEC).map_err(|e| match e {
            Error::DefectiveOrClustered(_) => Error::NotSimpleSpectrum,
            other => other,
        })?;
        let lambdas = decomp.eigenvalues.clone();
        let y_frame = decomp.basis_inverse.mul(&self.y).mul(&decomp.basis);

        // rank-one factor of [diag(lambda), Y'] + I from its largest column
        let r = CMatrix::diag(&lambdas)
            .commutator(&y_frame)?
            .add(&CMatrix::identity(n));
        let mut jstar = 0;
        let mut best = -1.0;
        for j in 0..n {
            let colnorm: f64 = (0..n).map(|i| r.get(i, j).norm()).sum();
            if colnorm > best {
                best = colnorm;
                jstar = j;
            }
        }
        let v: Vec<Complex64> = (0..n).map(|i| r.get(i, jstar)).collect();
        let v_min = v.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min);
        if v_min < 1e-10 {
            return Err(Error::WilsonFormViolation(v_min));
        }
        // diag(1/v) . Y' . diag(v) turns the rank-one factor into all-ones
        let y_normal = CMatrix::from_fn(n, |i, j| y_frame.get(i, j) * v[j] / v[i]);

        let scale = y_normal.norm_max().max(1.0);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let forced = Complex64::new(1.0, 0.0) / (lambdas[i] - lambdas[j]);
                    worst = worst.max((y_normal.get(i, j) - forced).norm());
                }
            }
        }
        if worst > tol * scale {
            return Err(Error::WilsonFormViolation(worst));
        }
        Ok((lambdas, y_normal))
    }

    /// Canonical form: the pairs `(x_i, y_ii)` of the normalized frame in
    /// canonical order.
    pub fn canonicalize(&self, tol: f64) -> Result<CanonicalForm> {
        let (lambdas, y_normal) = self.wilson_frame(tol)?;
        let mut pairs: Vec<(Complex64, Complex64)> = lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, y_normal.get(i, i)))
            .collect();
        pairs.sort_by(|a, b| canonical_cmp(a.0, b.0, EPS_SPEC));
        Ok(CanonicalForm { n: self.n, pairs })
    }

    /// Orbit equality on the simple-`X`-spectrum locus: canonical forms
    /// match pairwise within `tol`. Returns the matching distance.
    pub fn same_point(&self, other: &CMPoint, tol: f64) -> Result<(bool, f64)> {
        if self.n != other.n {
            return Ok((false, f64::INFINITY));
        }
        let a = self.canonicalize(1e-5)?;
        let b = other.canonicalize(1e-5)?;
        let dist = a.distance(&b);
        Ok((dist <= tol, dist))
    }
}

impl CanonicalForm {
    /// Distance between two forms: the maximum over matched pairs of
    /// `max(|dx|, |dd|)`, matching index-wise after canonical sorting and
    /// falling back to greedy nearest matching when the sort order is
    /// tolerance-ambiguous.
    pub fn distance(&self, other: &CanonicalForm) -> f64 {
        if self.n != other.n || self.pairs.len() != other.pairs.len() {
            return f64::INFINITY;
        }
        let pair_dist = |a: (Complex64, Complex64), b: (Complex64, Complex64)| -> f64 {
            (a.0 - b.0).norm().max((a.1 - b.1).norm())
        };
        let indexwise = self
            .pairs
            .iter()
            .zip(&other.pairs)
            .map(|(&a, &b)| pair_dist(a, b))
            .fold(0.0, f64::max);

        // greedy nearest matching as a fallback for ambiguous orderings
        let mut used = vec![false; other.pairs.len()];
        let mut greedy = 0.0f64;
        for &a in &self.pairs {
            let mut best = f64::INFINITY;
            let mut best_j = None;
            for (j, &b) in other.pairs.iter().enumerate() {
                if !used[j] {
                    let d = pair_dist(a, b);
                    if d < best {
                        best = d;
                        best_j = Some(j);
                    }
                }
            }
            match best_j {
                Some(j) => {
                    used[j] = true;
                    greedy = greedy.max(best);
                }
                None => return f64::INFINITY,
            }
        }
        indexwise.min(greedy)
    }

    /// True iff the forms match within `tol`.
    pub fn matches(&self, other: &CanonicalForm, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

impl Configuration {
    pub fn new(blocks: Vec<ConfigBlock>) -> Configuration {
        Configuration { blocks }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|b| b.points.is_empty())
    }

    pub fn total_points(&self) -> usize {
        self.blocks.iter().map(|b| b.points.len()).sum()
    }

    /// All points in block order.
    pub fn flatten(&self) -> Vec<CMPoint> {
        self.blocks
            .iter()
            .flat_map(|b| b.points.iter().cloned())
            .collect()
    }

    /// Checks that every point matches its block size and is a member.
    pub fn validate(&self, tol: f64) -> Result<()> {
        for (bi, block) in self.blocks.iter().enumerate() {
            for (pi, point) in block.points.iter().enumerate() {
                if point.size() != block.n {
                    return Err(Error::ShapeMismatch(format!(
                        "block {bi} has size {} but point {pi} has size {}",
                        block.n,
                        point.size()
                    )));
                }
                let (ok, residual) = point.membership(tol)?;
                if !ok {
                    return Err(Error::ConfigurationMembershipLost {
                        block: bi,
                        point: pi,
                        move_index: 0,
                        residual,
                    });
                }
            }
        }
        Ok(())
    }

    /// Within-block distinctness at tolerance `10 * EPS_CANON`; valid on
    /// the simple-spectrum locus only, so callers diagonalize first.
    pub fn check_distinct(&self) -> Result<()> {
        for block in &self.blocks {
            for i in 0..block.points.len() {
                for j in i + 1..block.points.len() {
                    let (same, _) =
                        block.points[i].same_point(&block.points[j], 10.0 * EPS_CANON)?;
                    if same {
                        return Err(Error::DuplicatePoints(i, j));
                    }
                }
            }
        }
        Ok(())
    }
}
