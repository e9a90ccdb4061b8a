//! Univariate polynomials over the complex numbers.
//!
//! Coefficients are stored lowest degree first; trailing coefficients of
//! magnitude at most [`EPS_COEFF`](crate::config::EPS_COEFF) are stripped,
//! so the zero polynomial has an empty coefficient vector. Everything here
//! is plain value arithmetic: evaluation (scalar and matrix), derivatives,
//! resultants, interpolation, combined interpolation over unions of
//! disjoint spectra, and simultaneous root finding.

use crate::config::{EPS_COEFF, EPS_SPEC};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::{canonical_cmp, sort_canonical};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// A univariate polynomial with complex coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

/// Interpolation data: pairwise distinct nodes with prescribed values.
#[derive(Clone, Debug)]
pub struct SpectrumTargets {
    nodes: Vec<(Complex64, Complex64)>,
}

impl SpectrumTargets {
    /// Builds the target set, rejecting nodes that coincide within `EPS_SPEC`.
    pub fn new(nodes: Vec<(Complex64, Complex64)>) -> Result<Self> {
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if (nodes[i].0 - nodes[j].0).norm() <= EPS_SPEC {
                    return Err(Error::DuplicateNodes(i, j));
                }
            }
        }
        Ok(SpectrumTargets { nodes })
    }

    pub fn nodes(&self) -> &[(Complex64, Complex64)] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl Poly {
    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim(EPS_COEFF);
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    /// Convenience constructor from real coefficients, lowest degree first.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= r * a;
            }
            coeffs = next;
        }
        Poly::new(coeffs)
    }

    fn trim(&mut self, eps: f64) {
        while let Some(&c) = self.coeffs.last() {
            if c.norm() <= eps {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients, lowest degree first (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> Complex64 {
        self.coeffs
            .last()
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Largest coefficient magnitude.
    pub fn norm_max(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Horner evaluation at a complex scalar.
    pub fn eval_scalar(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluates the polynomial and its derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Horner evaluation at a square matrix; the constant term contributes
    /// `c_0 * I`.
    pub fn eval_matrix(&self, m: &CMatrix) -> CMatrix {
        let n = m.size();
        let mut acc = CMatrix::zeros(n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let d = acc.get(i, i) + c;
                acc.set(i, i, d);
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * Complex64::new(k as f64, 0.0))
            .collect();
        Poly::new(coeffs)
    }

    /// Synthetic division by the linear factor `(x - r)`, discarding the
    /// remainder. Used for Lagrange basis construction.
    fn deflate(&self, r: Complex64) -> Poly {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Poly::zero(),
        };
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        let mut carry = self.coeffs[d];
        for k in (0..d).rev() {
            out[k] = carry;
            carry = self.coeffs[k] + carry * r;
        }
        Poly::new(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

/// Resultant of two nonzero polynomials as the Sylvester determinant,
/// under the convention `Res(p, q) = lc(p)^{deg q} * prod q(alpha_i)` over
/// the roots `alpha_i` of `p`.
pub fn resultant(p: &Poly, q: &Poly) -> Result<Complex64> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    let size = m + n;
    if size == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut s = CMatrix::zeros(size);
    // n shifted rows of p's coefficients, highest degree first
    for row in 0..n {
        for k in 0..=m {
            s.set(row, row + k, p.coeff(m - k));
        }
    }
    // m shifted rows of q's coefficients
    for row in 0..m {
        for k in 0..=n {
            s.set(n + row, row + k, q.coeff(n - k));
        }
    }
    Ok(s.det())
}

/// Simple-root certificate: true iff `|Res(p, p')|` exceeds `tol` after
/// normalizing by `|lc(p)|^{2 deg p - 1}`. Returns the certificate value.
pub fn has_simple_roots(p: &Poly, tol: f64) -> Result<(bool, f64)> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Err(Error::ZeroPolynomial);
    }
    let dp = p.derivative();
    if dp.is_zero() {
        // cannot happen over characteristic zero with m >= 1
        return Ok((false, 0.0));
    }
    let res = resultant(p, &dp)?;
    let scale = p.leading().norm().powi(2 * m as i32 - 1);
    let cert = res.norm() / scale;
    Ok((cert > tol, cert))
}

/// Unique interpolating polynomial of degree `< #nodes`.
///
/// Built in the Lagrange form with barycentric weights: the node polynomial
/// is expanded once, each basis factor is recovered by synthetic division,
/// and one residual-correction pass guards against mild ill-conditioning.
pub fn interpolate(targets: &SpectrumTargets) -> Result<Poly> {
    let nodes = targets.nodes();
    if nodes.is_empty() {
        return Ok(Poly::zero());
    }
    let xs: Vec<Complex64> = nodes.iter().map(|&(x, _)| x).collect();
    let vs: Vec<Complex64> = nodes.iter().map(|&(_, v)| v).collect();
    let mut p = interpolate_raw(&xs, &vs);
    // one Newton-style correction pass on the residuals
    let residuals: Vec<Complex64> = xs
        .iter()
        .zip(&vs)
        .map(|(&x, &v)| v - p.eval_scalar(x))
        .collect();
    let max_res = residuals.iter().map(|r| r.norm()).fold(0.0, f64::max);
    if max_res > 0.0 {
        let corr = interpolate_raw(&xs, &residuals);
        p = &p + &corr;
    }
    Ok(p)
}

fn interpolate_raw(xs: &[Complex64], vs: &[Complex64]) -> Poly {
    let master = Poly::from_roots(xs);
    let mut acc = Poly::zero();
    for (j, (&xj, &vj)) in xs.iter().zip(vs).enumerate() {
        let _ = j;
        let basis = master.deflate(xj); // master / (x - xj)
        let denom = basis.eval_scalar(xj); // prod_{k != j} (xj - xk)
        acc = &acc + &basis.scale(vj / denom);
    }
    acc
}

/// Combines per-block polynomials into a single polynomial agreeing with
/// each `p_i` on its spectrum. Valid because every spectrum in scope is
/// simple, so congruence modulo the minimal polynomials reduces to
/// interpolation over the union of the nodes.
pub fn crt_combine(blocks: &[(Vec<Complex64>, Poly)]) -> Result<Poly> {
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            for &a in &blocks[i].0 {
                for &b in &blocks[j].0 {
                    if (a - b).norm() <= EPS_SPEC {
                        return Err(Error::SpectraCollide(i, j));
                    }
                }
            }
        }
    }
    let mut nodes = Vec::new();
    for (spectrum, p) in blocks {
        for &x in spectrum {
            nodes.push((x, p.eval_scalar(x)));
        }
    }
    interpolate(&SpectrumTargets::new(nodes)?)
}

/// All roots of a nonzero polynomial by the Aberth-Ehrlich simultaneous
/// iteration, returned in canonical order. Each root satisfies
/// `|p(r)| <= tol * max|c_k|` on success.
pub fn roots(p: &Poly, tol: f64, max_iter: usize) -> Result<Vec<Complex64>> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = p.leading();
    if d == 1 {
        return Ok(vec![-p.coeff(0) / lead]);
    }

    let norm = p.norm_max();
    // Cauchy bound on root magnitudes
    let radius = 1.0
        + p.coeffs[..d]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let r0 = (radius * 0.5).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::new(r0 * theta.cos(), r0 * theta.sin())
        })
        .collect();

    for _ in 0..max_iter {
        let mut converged = true;
        for i in 0..d {
            let (pv, dpv) = p.eval_with_derivative(z[i]);
            if pv.norm() > tol * norm {
                converged = false;
            }
            if pv.norm() == 0.0 {
                continue;
            }
            let w = if dpv.norm() > 0.0 {
                pv / dpv
            } else {
                // flat spot: nudge off it
                Complex64::new(tol.max(1e-12), 0.0)
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let diff = z[i] - zj;
                    if diff.norm() > 1e-300 {
                        repulsion += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            let next = z[i] - step;
            if next.is_finite() {
                z[i] = next;
            }
        }
        if converged {
            sort_canonical(&mut z, EPS_SPEC);
            return Ok(z);
        }
    }
    Err(Error::NonConvergence(max_iter))
}

/// Multiset comparison of two root lists after canonical sorting.
pub fn roots_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    sort_canonical(&mut a, EPS_SPEC);
    sort_canonical(&mut b, EPS_SPEC);
    a.iter()
        .zip(&b)
        .all(|(&x, &y)| (x - y).norm() <= tol || canonical_cmp(x, y, tol) == std::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn assert_close(a: Complex64, b: Complex64, tol: f64) {
        assert!(
            (a - b).norm() <= tol,
            "expected {b}, got {a} (|diff| = {:.3e})",
            (a - b).norm()
        );
    }

    #[test]
    fn eval_scalar_examples() {
        let p = Poly::from_real(&[2.0, 1.0]); // x + 2
        assert_close(p.eval_scalar(c(1.0, 0.0)), c(3.0, 0.0), 0.0);
        assert_close(Poly::zero().eval_scalar(c(5.0, -7.0)), c(0.0, 0.0), 0.0);
        let q = Poly::from_real(&[1.0, 0.0, 1.0]); // x^2 + 1
        assert_close(q.eval_scalar(c(0.0, 1.0)), c(0.0, 0.0), 1e-15);
    }

    #[test]
    fn zero_polynomial_has_no_degree_and_strips_trailing_noise() {
        let p = Poly::new(vec![c(0.0, 0.0), c(1e-15, 0.0)]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn degree_is_additive_under_multiplication() {
        let p = Poly::from_real(&[1.0, 2.0, 3.0]);
        let q = Poly::from_real(&[-4.0, 0.0, 0.0, 5.0]);
        let pq = &p * &q;
        assert_eq!(pq.degree(), Some(5));
    }

    #[test]
    fn derivative_examples() {
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]); // x^2 - 1
        assert_eq!(p.derivative(), Poly::from_real(&[0.0, 2.0]));
        assert!(Poly::constant(c(3.0, 1.0)).derivative().is_zero());
        let q = Poly::from_real(&[0.0, 1.0, 0.0, 1.0]); // x^3 + x
        assert_eq!(q.derivative(), Poly::from_real(&[1.0, 0.0, 3.0]));
    }

    #[test]
    fn resultant_of_two_linear_factors_is_root_difference() {
        let a = c(3.0, 2.0);
        let b = c(1.0, -1.0);
        let p = Poly::new(vec![-a, c(1.0, 0.0)]);
        let q = Poly::new(vec![-b, c(1.0, 0.0)]);
        assert_close(resultant(&p, &q).unwrap(), a - b, 1e-14);
    }

    #[test]
    fn resultant_detects_shared_root() {
        let p = Poly::from_real(&[0.0, 0.0, 1.0]); // x^2
        let q = Poly::from_real(&[0.0, 2.0]); // 2x
        assert_close(resultant(&p, &q).unwrap(), c(0.0, 0.0), 1e-14);
    }

    #[test]
    fn resultant_matches_hand_sylvester_determinant() {
        // p = x^2 - 1, q = 2x: det [[1,0,-1],[2,0,0],[0,2,0]] = -4,
        // in agreement with lc(p)^2 * q(1) * q(-1) = -4.
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]);
        let q = Poly::from_real(&[0.0, 2.0]);
        assert_close(resultant(&p, &q).unwrap(), c(-4.0, 0.0), 1e-13);
    }

    #[test]
    fn resultant_of_zero_polynomial_is_rejected() {
        let p = Poly::zero();
        let q = Poly::x();
        assert!(matches!(resultant(&p, &q), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn simple_root_certificate() {
        let (ok, cert) = has_simple_roots(&Poly::from_real(&[-1.0, 0.0, 1.0]), 1e-8).unwrap();
        assert!(ok);
        assert!((cert - 4.0).abs() < 1e-12, "certificate {cert}");

        let (ok, cert) = has_simple_roots(&Poly::from_real(&[0.0, 0.0, 1.0]), 1e-8).unwrap();
        assert!(!ok);
        assert!(cert < 1e-12);

        // (x - 1)(x - 2): distinct roots at unit separation
        let (ok, _) = has_simple_roots(&Poly::from_real(&[2.0, -3.0, 1.0]), 1e-8).unwrap();
        assert!(ok);
    }

    #[test]
    fn interpolation_examples() {
        let t = SpectrumTargets::new(vec![
            (c(0.0, 0.0), c(2.0, 0.0)),
            (c(1.0, 0.0), c(3.0, 0.0)),
        ])
        .unwrap();
        let p = interpolate(&t).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert_close(p.coeff(0), c(2.0, 0.0), 1e-12);
        assert_close(p.coeff(1), c(1.0, 0.0), 1e-12);

        let t = SpectrumTargets::new(vec![(c(2.0, -1.0), c(0.5, 3.0))]).unwrap();
        let p = interpolate(&t).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert_close(p.coeff(0), c(0.5, 3.0), 1e-14);
    }

    #[test]
    fn interpolation_recovers_square_through_vandermonde_oracle() {
        // Independent oracle: solve the 3x3 Vandermonde system by hand.
        // Nodes 0, 1, 2 with values 0, 1, 4:
        //   a0            = 0
        //   a0 + a1 + a2  = 1
        //   a0 + 2a1 + 4a2 = 4   =>  a1 = 0, a2 = 1.
        let t = SpectrumTargets::new(vec![
            (c(0.0, 0.0), c(0.0, 0.0)),
            (c(1.0, 0.0), c(1.0, 0.0)),
            (c(2.0, 0.0), c(4.0, 0.0)),
        ])
        .unwrap();
        let p = interpolate(&t).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_close(p.coeff(0), c(0.0, 0.0), 1e-12);
        assert_close(p.coeff(1), c(0.0, 0.0), 1e-12);
        assert_close(p.coeff(2), c(1.0, 0.0), 1e-12);
    }

    #[test]
    fn duplicate_nodes_are_rejected() {
        let err = SpectrumTargets::new(vec![
            (c(1.0, 0.0), c(0.0, 0.0)),
            (c(1.0, 1e-12), c(5.0, 0.0)),
        ]);
        assert!(matches!(err, Err(Error::DuplicateNodes(0, 1))));
    }

    #[test]
    fn crt_combines_two_singleton_blocks_into_a_line() {
        let blocks = vec![
            (vec![c(0.0, 0.0)], Poly::constant(c(5.0, 0.0))),
            (vec![c(1.0, 0.0)], Poly::constant(c(7.0, 0.0))),
        ];
        let p = crt_combine(&blocks).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert_close(p.coeff(0), c(5.0, 0.0), 1e-12);
        assert_close(p.coeff(1), c(2.0, 0.0), 1e-12);
    }

    #[test]
    fn crt_fixes_nothing_when_all_blocks_already_agree() {
        let p = Poly::from_real(&[1.0, -2.0, 0.5]);
        let blocks = vec![
            (vec![c(0.0, 0.0), c(1.0, 0.0)], p.clone()),
            (vec![c(2.0, 0.0), c(-1.0, 0.5)], p.clone()),
        ];
        let combined = crt_combine(&blocks).unwrap();
        for &x in &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.5)] {
            assert_close(combined.eval_scalar(x), p.eval_scalar(x), 1e-10);
        }
    }

    #[test]
    fn crt_single_block_agrees_on_its_spectrum() {
        let p = Poly::from_real(&[3.0, 1.0, 2.0]);
        let blocks = vec![(vec![c(0.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)], p.clone())];
        let combined = crt_combine(&blocks).unwrap();
        for &x in &blocks[0].0 {
            assert_close(combined.eval_scalar(x), p.eval_scalar(x), 1e-10);
        }
    }

    #[test]
    fn crt_rejects_colliding_spectra() {
        let blocks = vec![
            (vec![c(0.0, 0.0)], Poly::constant(c(1.0, 0.0))),
            (vec![c(1e-12, 0.0)], Poly::constant(c(2.0, 0.0))),
        ];
        assert!(matches!(crt_combine(&blocks), Err(Error::SpectraCollide(0, 1))));
    }

    #[test]
    fn roots_of_quadratic_with_imaginary_pair() {
        let p = Poly::from_real(&[1.0, 0.0, 1.0]); // x^2 + 1
        let rs = roots(&p, 1e-12, 100).unwrap();
        assert!(roots_match(&rs, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-10));
    }

    #[test]
    fn triple_root_clusters_within_cube_root_of_tol() {
        let p = Poly::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let rs = roots(&p, 1e-12, 500).unwrap();
        for r in rs {
            assert!((r - c(1.0, 0.0)).norm() < 1e-3);
        }
    }

    #[test]
    fn planted_quintic_roots_are_recovered() {
        // Oracle: plant roots and expand via an independent convolution.
        let planted = [
            c(1.0, 0.0),
            c(-2.0, 0.5),
            c(0.3, -1.1),
            c(2.2, 2.0),
            c(-0.7, -0.4),
        ];
        let mut coeffs = vec![c(1.0, 0.0)];
        for &r in &planted {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= r * a;
            }
            coeffs = next;
        }
        let p = Poly::new(coeffs);
        let rs = roots(&p, 1e-12, 200).unwrap();
        assert!(roots_match(&rs, &planted, 1e-8));
    }
}
