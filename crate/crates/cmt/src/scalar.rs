//! Complex scalar helpers: the canonical order and small utilities.

use num_complex::Complex64;
use std::cmp::Ordering;

/// Canonical order on complex numbers: lexicographic by (real, imaginary)
/// with an `eps`-tolerant comparison on each part. Used everywhere a
/// deterministic arrangement of spectra is needed.
pub fn canonical_cmp(a: Complex64, b: Complex64, eps: f64) -> Ordering {
    if (a.re - b.re).abs() > eps {
        return a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal);
    }
    if (a.im - b.im).abs() > eps {
        return a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal);
    }
    Ordering::Equal
}

/// Sorts a slice of complex numbers into canonical order.
pub fn sort_canonical(values: &mut [Complex64], eps: f64) {
    values.sort_by(|&a, &b| canonical_cmp(a, b, eps));
}

/// Minimal pairwise distance within a set of complex numbers.
/// Returns `f64::INFINITY` for fewer than two values.
pub fn min_pairwise_distance(values: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            best = best.min((values[i] - values[j]).norm());
        }
    }
    best
}

/// Minimal distance between two sets of complex numbers.
pub fn min_cross_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for &x in a {
        for &y in b {
            best = best.min((x - y).norm());
        }
    }
    best
}

/// Shorthand complex constructor.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
