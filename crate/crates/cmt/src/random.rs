//! Seeded randomness: scalars, polynomials, and well-conditioned
//! conjugators. Everything is deterministic per seed; the solver threads a
//! single ChaCha stream through its stages so reruns are bit-identical.

use crate::linalg::CMatrix;
use crate::poly::Poly;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Uniform complex number in the centered square of half-width `scale`.
pub fn complex_in_square(rng: &mut impl Rng, scale: f64) -> Complex64 {
    Complex64::new(
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
    )
}

/// Uniform-modulus complex number in the annulus `r_min <= |t| <= r_max`.
/// Keeps the genericity parameter `t` away from both 0 and coefficient
/// blow-up.
pub fn complex_in_annulus(rng: &mut impl Rng, r_min: f64, r_max: f64) -> Complex64 {
    let r = rng.gen_range(r_min..=r_max);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Random polynomial of exactly the requested degree.
pub fn random_poly(rng: &mut impl Rng, degree: usize, scale: f64) -> Poly {
    let mut coeffs: Vec<Complex64> = (0..=degree)
        .map(|_| complex_in_square(rng, scale))
        .collect();
    // keep the leading coefficient honest so the degree is what we asked for
    while coeffs[degree].norm() < 0.1 * scale {
        coeffs[degree] = complex_in_square(rng, scale);
    }
    Poly::new(coeffs)
}

/// `n` random complex numbers with pairwise separation at least `min_sep`.
pub fn distinct_values(
    rng: &mut impl Rng,
    n: usize,
    scale: f64,
    min_sep: f64,
) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    while out.len() < n {
        let cand = complex_in_square(rng, scale);
        if out.iter().all(|&v| (v - cand).norm() > min_sep) {
            out.push(cand);
        }
    }
    out
}

/// Random unitary matrix via modified Gram-Schmidt with re-orthogonalization.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    loop {
        let raw = CMatrix::from_fn(n, |_, _| complex_in_square(rng, 1.0));
        if let Some(q) = gram_schmidt(&raw) {
            return q;
        }
    }
}

fn gram_schmidt(m: &CMatrix) -> Option<CMatrix> {
    let n = m.size();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| m.get(i, j)).collect())
        .collect();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
                for i in 0..n {
                    let sub = proj * cols[k][i];
                    cols[j][i] -= sub;
                }
            }
        }
        let norm = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            return None;
        }
        for entry in &mut cols[j] {
            *entry /= norm;
        }
    }
    Some(CMatrix::from_fn(n, |i, j| cols[j][i]))
}

/// Random well-conditioned conjugator and its inverse: a unitary times a
/// diagonal with moduli in `[0.7, 1.4]`, so the exact inverse is available
/// by construction.
pub fn random_conjugator(rng: &mut impl Rng, n: usize) -> (CMatrix, CMatrix) {
    let q = random_unitary(rng, n);
    let q_h = CMatrix::from_fn(n, |i, j| q.get(j, i).conj());
    let d: Vec<Complex64> = (0..n)
        .map(|_| {
            let r = rng.gen_range(0.7..=1.4);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::new(r * theta.cos(), r * theta.sin())
        })
        .collect();
    let d_inv: Vec<Complex64> = d.iter().map(|&v| Complex64::new(1.0, 0.0) / v).collect();
    let a = q.mul(&CMatrix::diag(&d));
    let a_inv = CMatrix::diag(&d_inv).mul(&q_h);
    (a, a_inv)
}
