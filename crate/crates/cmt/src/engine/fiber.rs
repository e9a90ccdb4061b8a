//! Solving for a point with both spectra prescribed.
//!
//! In the normalized frame the off-diagonal entries of `Y` are forced to
//! `1 / (x_i - x_j)`, so a point with `X = diag(x)` is determined by the
//! free diagonal `d` of `Y(d)`. Prescribing the `Y`-spectrum means matching
//! the characteristic polynomial of `Y(d)` to a target, a square polynomial
//! system in `d`. The trace equation is linear and eliminates one unknown;
//! the rest is damped Newton with seeded random restarts. The Jacobian is
//! exact: differentiating `det(tI - Y)` by a diagonal entry yields minus
//! the characteristic polynomial of the corresponding principal minor.

use super::GenericityBudget;
use crate::config::EPS_SPEC;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::poly::Poly;
use crate::random::{complex_in_square, rng_from_seed};
use crate::scalar::sort_canonical;
use num_complex::Complex64;
use rand_chacha::ChaCha12Rng;

/// Coefficientwise residual the Newton solve must reach (or `budget.tol`
/// when that is tighter).
const FIBER_TOL: f64 = 1e-9;

/// The normalized-frame `Y` with prescribed diagonal.
pub(crate) fn wilson_y(xs: &[Complex64], d: &[Complex64]) -> CMatrix {
    let n = xs.len();
    CMatrix::from_fn(n, |i, j| {
        if i == j {
            d[i]
        } else {
            Complex64::new(1.0, 0.0) / (xs[i] - xs[j])
        }
    })
}

/// Diagonal `d` such that `Y(d)` built over `x_spectrum` has spectrum
/// `target_y_spectrum`, certified by a coefficientwise characteristic-
/// polynomial residual at most `budget.tol`.
pub fn fiber_solve(
    x_spectrum: &[Complex64],
    target_y_spectrum: &[Complex64],
    budget: &GenericityBudget,
) -> Result<Vec<Complex64>> {
    let mut rng = rng_from_seed(budget.seed);
    solve(x_spectrum, target_y_spectrum, budget, &mut rng).map(|(d, _)| d)
}

/// Like [`fiber_solve`], also reporting the number of restarts consumed.
pub(crate) fn solve(
    x_spectrum: &[Complex64],
    target_y_spectrum: &[Complex64],
    budget: &GenericityBudget,
    rng: &mut ChaCha12Rng,
) -> Result<(Vec<Complex64>, usize)> {
    let n = x_spectrum.len();
    if n != target_y_spectrum.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} X-eigenvalues vs {} target Y-eigenvalues",
            n,
            target_y_spectrum.len()
        )));
    }
    for vals in [x_spectrum, target_y_spectrum] {
        for i in 0..n {
            for j in i + 1..n {
                if (vals[i] - vals[j]).norm() <= EPS_SPEC {
                    return Err(Error::RepeatedEigenvalue(i, j));
                }
            }
        }
    }
    if n == 1 {
        return Ok((vec![target_y_spectrum[0]], 0));
    }

    let mut mu = target_y_spectrum.to_vec();
    sort_canonical(&mut mu, EPS_SPEC);
    let trace_sum: Complex64 = mu.iter().sum();
    let target = Poly::from_roots(&mu);
    let spread = mu
        .iter()
        .flat_map(|a| mu.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max)
        .max(1.0);

    let restarts = budget.max_retries.max(1);
    let mut sweeps = 0usize;
    for restart in 0..restarts {
        let mut u: Vec<Complex64> = mu[..n - 1].to_vec();
        if restart > 0 {
            let kick = 0.2 * spread * restart as f64 / restarts as f64 + 0.05 * spread;
            for entry in &mut u {
                *entry += complex_in_square(rng, kick);
            }
        }
        if let Some(d) = newton(x_spectrum, &u, trace_sum, &target, budget.tol.min(FIBER_TOL), 120) {
            return Ok((d, restart));
        }
        sweeps += 120;
    }
    Err(Error::NonConvergence(sweeps))
}

fn assemble(u: &[Complex64], trace_sum: Complex64) -> Vec<Complex64> {
    let mut d = u.to_vec();
    let partial: Complex64 = u.iter().sum();
    d.push(trace_sum - partial);
    d
}

fn residual(xs: &[Complex64], d: &[Complex64], target: &Poly) -> Vec<Complex64> {
    let y = wilson_y(xs, d);
    let chi = y.char_poly().expect("size within cap");
    (0..xs.len() - 1)
        .map(|k| chi.coeff(k) - target.coeff(k))
        .collect()
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn newton(
    xs: &[Complex64],
    u0: &[Complex64],
    trace_sum: Complex64,
    target: &Poly,
    tol: f64,
    max_iter: usize,
) -> Option<Vec<Complex64>> {
    let n = xs.len();
    let mut u = u0.to_vec();
    let mut f = residual(xs, &assemble(&u, trace_sum), target);
    for _ in 0..max_iter {
        if max_norm(&f) <= tol {
            return Some(assemble(&u, trace_sum));
        }
        let d = assemble(&u, trace_sum);
        let y = wilson_y(xs, &d);
        // column i of the Jacobian: d/du_i of the non-leading coefficients,
        // which is -chi(minor_i) + chi(minor_{n-1}) through the trace
        // elimination d_n = trace - sum(u)
        let minors: Vec<Poly> = (0..n)
            .map(|k| y.minor(k).char_poly().expect("size within cap"))
            .collect();
        let mut jac = CMatrix::zeros(n - 1);
        for i in 0..n - 1 {
            for k in 0..n - 1 {
                jac.set(k, i, -minors[i].coeff(k) + minors[n - 1].coeff(k));
            }
        }
        let rhs: Vec<Complex64> = f.iter().map(|&c| -c).collect();
        let step = jac.solve(&rhs).ok()?;

        let current = max_norm(&f);
        let mut alpha = 1.0f64;
        let mut advanced = false;
        for _ in 0..9 {
            let trial: Vec<Complex64> = u
                .iter()
                .zip(&step)
                .map(|(&ui, &si)| ui + si * Complex64::new(alpha, 0.0))
                .collect();
            let trial_f = residual(xs, &assemble(&trial, trace_sum), target);
            if max_norm(&trial_f) < current {
                u = trial;
                f = trial_f;
                advanced = true;
                break;
            }
            alpha *= 0.5;
        }
        if !advanced {
            return None;
        }
    }
    if max_norm(&f) <= tol {
        Some(assemble(&u, trace_sum))
    } else {
        None
    }
}
