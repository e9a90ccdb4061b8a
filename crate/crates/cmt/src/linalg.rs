//! Dense complex matrices at desk scale.
//!
//! Everything the domain needs from linear algebra lives here: commutators,
//! tolerance-based rank via scaled-pivot elimination, characteristic
//! polynomials by the Faddeev-LeVerrier recursion, eigendecomposition with
//! eigenvectors recovered from null spaces, and similarity conjugation.
//! Eigenvalues are characteristic-polynomial roots on purpose: the sizes in
//! scope are small, and the certificates used elsewhere are resultants of
//! exactly those polynomials.

use crate::config::{EPS_SPEC, ROOT_MAX_ITER, ROOT_TOL, SIZE_CAP};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use crate::scalar::sort_canonical;
use num_complex::Complex64;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

/// Result of diagonalizing a simple-spectrum matrix: `basis * diag(eigenvalues)
/// * basis_inverse` reconstructs the input.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub basis: CMatrix,
    pub basis_inverse: CMatrix,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = CMatrix::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Builds from nested rows; every row must have length `n`.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::SizeMismatch(n, row.len()));
            }
            data.extend_from_slice(row);
        }
        Ok(CMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest entry magnitude.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|&a| a * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.get(i, j) * x[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise distance to another matrix.
    pub fn dist_max(&self, rhs: &CMatrix) -> f64 {
        self.sub(rhs).norm_max()
    }

    /// Principal submatrix with row and column `k` removed.
    pub fn minor(&self, k: usize) -> CMatrix {
        let n = self.n - 1;
        CMatrix::from_fn(n, |i, j| {
            let ii = if i < k { i } else { i + 1 };
            let jj = if j < k { j } else { j + 1 };
            self.get(ii, jj)
        })
    }

    /// In-place LU with partial pivoting. Returns (permuted factors, sign).
    /// Near-zero pivots are kept, not repaired; callers that need a solve
    /// against a singular matrix use [`LuFactors::regularize`].
    fn lu_factor(&self) -> LuFactors {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_mag = lu[col * n + col].norm();
            for row in col + 1..n {
                let mag = lu[row * n + col].norm();
                if mag > pivot_mag {
                    pivot_mag = mag;
                    pivot_row = row;
                }
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
                sign = -sign;
            }
            let pivot = lu[col * n + col];
            if pivot.norm() == 0.0 {
                continue;
            }
            for row in col + 1..n {
                let factor = lu[row * n + col] / pivot;
                lu[row * n + col] = factor;
                for j in col + 1..n {
                    let sub = factor * lu[col * n + j];
                    lu[row * n + j] -= sub;
                }
            }
        }
        LuFactors { n, lu, perm, sign }
    }

    pub fn det(&self) -> Complex64 {
        let f = self.lu_factor();
        let mut det = Complex64::new(f.sign, 0.0);
        for i in 0..self.n {
            det *= f.lu[i * self.n + i];
        }
        det
    }

    /// Magnitudes of the elimination pivots, descending.
    pub fn pivot_magnitudes(&self) -> Vec<f64> {
        let f = self.lu_factor();
        let mut mags: Vec<f64> = (0..self.n).map(|i| f.lu[i * self.n + i].norm()).collect();
        mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        mags
    }

    /// Number of pivots above `tol * norm_max` under partial-pivoting
    /// elimination.
    pub fn rank(&self, tol: f64) -> usize {
        let scale = self.norm_max();
        if scale == 0.0 {
            return 0;
        }
        self.pivot_magnitudes()
            .iter()
            .filter(|&&m| m > tol * scale)
            .count()
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.n;
        let f = self.lu_factor();
        let (_, min_pivot, max_pivot) = f.pivot_extremes();
        if min_pivot <= 1e-14 * max_pivot.max(1e-300) {
            return Err(Error::ConditioningFailure(min_pivot / max_pivot.max(1e-300)));
        }
        let mut out = CMatrix::zeros(n);
        for col in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[col] = Complex64::new(1.0, 0.0);
            let x = f.solve(&e);
            for row in 0..n {
                out.set(row, col, x[row]);
            }
        }
        Ok(out)
    }

    /// Solves `self * x = b` by the LU factors.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let f = self.lu_factor();
        let (_, min_pivot, max_pivot) = f.pivot_extremes();
        if min_pivot <= 1e-14 * max_pivot.max(1e-300) {
            return Err(Error::ConditioningFailure(min_pivot / max_pivot.max(1e-300)));
        }
        Ok(f.solve(b))
    }

    /// `XY - YX`.
    pub fn commutator(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        Ok(self.mul(rhs).sub(&rhs.mul(self)))
    }

    /// Monic characteristic polynomial `det(xI - M)` by the
    /// Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Result<Poly> {
        let n = self.n;
        if n > SIZE_CAP {
            return Err(Error::SizeCap(n, SIZE_CAP));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        let mut b = self.clone();
        for k in 1..=n {
            if k > 1 {
                // B_k = A * (B_{k-1} + c_{n-k+1} I)
                let mut shifted = b;
                let c = coeffs[n - k + 1];
                for i in 0..n {
                    let d = shifted.get(i, i) + c;
                    shifted.set(i, i, d);
                }
                b = self.mul(&shifted);
            }
            coeffs[n - k] = -b.trace() / Complex64::new(k as f64, 0.0);
        }
        Ok(Poly::new(coeffs))
    }

    /// Eigenvalues as characteristic-polynomial roots, canonical order.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<Complex64>> {
        let p = self.char_poly()?;
        let mut evs = poly::roots(&p, tol, ROOT_MAX_ITER)?;
        sort_canonical(&mut evs, EPS_SPEC);
        Ok(evs)
    }

    /// Diagonalizes a matrix whose eigenvalues are pairwise separated by
    /// more than `gap_tol`. Eigenvectors come from null spaces of
    /// `M - lambda I`, polished by two inverse-iteration steps.
    ///
    /// Clusters are detected against each root's own error bound
    /// `|p(r)| / |p'(r)|`, since a defective eigenvalue computes as a
    /// cluster of roots whose spacing can far exceed `gap_tol`.
    pub fn eigen_decompose(&self, gap_tol: f64) -> Result<EigenDecomposition> {
        let n = self.n;
        let p = self.char_poly()?;
        let mut evs = poly::roots(&p, ROOT_TOL, crate::config::ROOT_MAX_ITER)?;
        sort_canonical(&mut evs, EPS_SPEC);
        let errors: Vec<f64> = evs
            .iter()
            .map(|&r| {
                let (pv, dpv) = p.eval_with_derivative(r);
                pv.norm() / dpv.norm().max(1e-300)
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                let gap = (evs[i] - evs[j]).norm();
                if gap <= gap_tol || gap <= 4.0 * (errors[i] + errors[j]) {
                    return Err(Error::DefectiveOrClustered(gap));
                }
            }
        }

        let scale = self.norm_max().max(1.0);
        let mut basis = CMatrix::zeros(n);
        for (col, &lambda) in evs.iter().enumerate() {
            let mut shifted = self.clone();
            for i in 0..n {
                let d = shifted.get(i, i) - lambda;
                shifted.set(i, i, d);
            }
            let f = shifted.lu_factor().regularize(1e-15 * scale);
            let mut v = f.null_vector();
            for _ in 0..2 {
                let w = f.solve(&v);
                let norm = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                if norm.is_finite() && norm > 0.0 {
                    v = w.iter().map(|&c| c / norm).collect();
                }
            }
            // deterministic gauge: the largest entry becomes 1
            let (k, _) = v
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
                .unwrap();
            let anchor = v[k];
            for entry in &mut v {
                *entry /= anchor;
            }
            for row in 0..n {
                basis.set(row, col, v[row]);
            }
        }
        let basis_inverse = basis.inverse()?;
        let recon = basis
            .mul(&CMatrix::diag(&evs))
            .mul(&basis_inverse);
        let err = recon.dist_max(self);
        if err > crate::config::EPS_RECON * scale {
            return Err(Error::ConditioningFailure(err / scale));
        }
        Ok(EigenDecomposition {
            eigenvalues: evs,
            basis,
            basis_inverse,
        })
    }

    /// Certificate that the spectrum is simple: magnitude of
    /// `Res(char_poly, char_poly')` after leading-coefficient normalization.
    pub fn is_simple_spectrum(&self, tol: f64) -> Result<(bool, f64)> {
        let p = self.char_poly()?;
        poly::has_simple_roots(&p, tol)
    }

    /// Certificate that two matrices share no eigenvalue: the geometric mean
    /// `|Res(char_M, char_N)|^(1/(m n))` of all pairwise eigenvalue
    /// differences, compared against `tol`.
    pub fn spectra_disjoint(&self, rhs: &CMatrix, tol: f64) -> Result<(bool, f64)> {
        let p = self.char_poly()?;
        let q = rhs.char_poly()?;
        let res = poly::resultant(&p, &q)?;
        let exponent = 1.0 / (self.n as f64 * rhs.n as f64);
        let cert = res.norm().powf(exponent);
        Ok((cert > tol, cert))
    }

    /// `A M A^{-1}`, verifying that the claimed inverse is one.
    pub fn conjugate(&self, a: &CMatrix, a_inv: &CMatrix) -> Result<CMatrix> {
        if a.n != self.n || a_inv.n != self.n {
            return Err(Error::SizeMismatch(a.n, self.n));
        }
        let residual = a.mul(a_inv).dist_max(&CMatrix::identity(self.n));
        let scale = (a.norm_max() * a_inv.norm_max()).max(1.0);
        if residual > 1e-8 * scale {
            return Err(Error::NotInverse(residual));
        }
        Ok(a.mul(self).mul(a_inv))
    }
}

struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
}

impl LuFactors {
    /// (index of smallest pivot, smallest pivot, largest pivot)
    fn pivot_extremes(&self) -> (usize, f64, f64) {
        let mut min_idx = 0;
        let mut min = f64::INFINITY;
        let mut max: f64 = 0.0;
        for i in 0..self.n {
            let m = self.lu[i * self.n + i].norm();
            if m < min {
                min = m;
                min_idx = i;
            }
            max = max.max(m);
        }
        (min_idx, min, max)
    }

    /// Replaces pivots below `floor` so solves against (near-)singular
    /// matrices stay finite; the blow-up direction is exactly what inverse
    /// iteration wants.
    fn regularize(mut self, floor: f64) -> Self {
        for i in 0..self.n {
            let idx = i * self.n + i;
            if self.lu[idx].norm() < floor {
                self.lu[idx] = Complex64::new(floor, 0.0);
            }
        }
        self
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 1..n {
            for j in 0..i {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = self.lu[i * n + j] * x[j];
                x[i] -= sub;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// Unit-scaled null vector of `U`: sets the variable of the smallest
    /// pivot to 1 and back-substitutes above it.
    fn null_vector(&self) -> Vec<Complex64> {
        let n = self.n;
        let (k, _, _) = self.pivot_extremes();
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        x[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in i + 1..=k {
                acc += self.lu[i * n + j] * x[j];
            }
            let pivot = self.lu[i * n + i];
            x[i] = if pivot.norm() > 0.0 { -acc / pivot } else { Complex64::new(0.0, 0.0) };
        }
        x
    }

    #[allow(dead_code)]
    fn sign(&self) -> f64 {
        self.sign
    }
}
