//! Command surface: generate, check, canonicalize, solve, apply, verify.
//!
//! Everything is reproducible from seeds and flat files; the `cmt` binary
//! is a thin argument parser over the functions here. Exit-code contract:
//! 0 ok, 1 verification or membership failure, 2 usage, 3 malformed input,
//! 4 budget exhausted, 5 theorem precondition violated.

pub mod files;

use crate::config::{Tolerances, SIZE_CAP};
use crate::engine::{solve_collective, verify_solution, GenericityBudget};
use crate::error::{Error, Result};
use crate::space::{CMPoint, ConfigBlock, Configuration};
use std::path::Path;

/// Run-wide knobs; every field maps to a flag and a `CMT_`-prefixed
/// environment variable, flags winning.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: f64,
    pub max_retries: usize,
    pub t_samples: usize,
    pub size_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            tol: 1e-6,
            max_retries: 48,
            t_samples: 4,
            size_cap: SIZE_CAP,
        }
    }
}

impl RunConfig {
    pub fn budget(&self) -> GenericityBudget {
        GenericityBudget {
            seed: self.seed,
            max_retries: self.max_retries,
            coeff_scale: 1.0,
            t_samples: self.t_samples,
            tol: self.tol,
        }
    }
}

fn mix(state: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn derive_seed(seed: u64, block: u64, index: u64, attempt: u64) -> u64 {
    mix(mix(mix(mix(seed) ^ block) ^ index.wrapping_shl(1)) ^ attempt.wrapping_shl(2))
}

/// Generates a configuration of random members, blockwise distinct; points
/// that collide with an earlier one are regenerated deterministically.
pub fn generate_configuration(
    spaces: &[usize],
    points: &[usize],
    seed: u64,
    size_cap: usize,
) -> Result<Configuration> {
    if spaces.len() != points.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} space sizes vs {} point counts",
            spaces.len(),
            points.len()
        )));
    }
    if spaces.is_empty() {
        return Err(Error::ShapeMismatch("at least one space is required".into()));
    }
    for &n in spaces {
        if n == 0 {
            return Err(Error::ShapeMismatch("space sizes must be positive".into()));
        }
        if n > size_cap {
            return Err(Error::SizeCap(n, size_cap));
        }
    }
    if points.iter().any(|&m| m == 0) {
        return Err(Error::ShapeMismatch("point counts must be >= 1".into()));
    }

    let tols = Tolerances::default();
    let mut blocks = Vec::with_capacity(spaces.len());
    for (bi, (&n, &m)) in spaces.iter().zip(points).enumerate() {
        let mut pts: Vec<CMPoint> = Vec::with_capacity(m);
        for k in 0..m {
            let mut attempt = 0u64;
            loop {
                let candidate =
                    CMPoint::random(n, derive_seed(seed, bi as u64, k as u64, attempt), 1.0);
                let collides = pts
                    .iter()
                    .map(|p| candidate.same_point(p, 10.0 * tols.canon))
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .any(|&(same, _)| same);
                if !collides {
                    pts.push(candidate);
                    break;
                }
                attempt += 1;
            }
        }
        blocks.push(ConfigBlock { n, points: pts });
    }
    let cfg = Configuration::new(blocks);
    cfg.validate(tols.membership)?;
    Ok(cfg)
}

pub fn cmd_gen(
    spaces: &[usize],
    points: &[usize],
    seed: u64,
    size_cap: usize,
    out: &Path,
) -> Result<i32> {
    let cfg = generate_configuration(spaces, points, seed, size_cap)?;
    files::write_instance(out, &cfg)?;
    println!(
        "wrote {} block(s), {} point(s) to {}",
        cfg.blocks.len(),
        cfg.total_points(),
        out.display()
    );
    Ok(0)
}

pub fn cmd_check(instance: &Path, tol: f64) -> Result<i32> {
    let cfg = files::read_instance(instance)?;
    let mut all_ok = true;
    for (bi, block) in cfg.blocks.iter().enumerate() {
        for (pi, point) in block.points.iter().enumerate() {
            if point.size() != block.n {
                println!("block {bi} point {pi}: FAIL (size {} != block size {})", point.size(), block.n);
                all_ok = false;
                continue;
            }
            let (ok, residual) = point.membership(tol)?;
            println!(
                "block {bi} point {pi}: {} (residual {residual:.3e})",
                if ok { "ok" } else { "FAIL" }
            );
            all_ok &= ok;
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}

pub fn cmd_canon(instance: &Path, tol: f64) -> Result<i32> {
    let cfg = files::read_instance(instance)?;
    for (bi, block) in cfg.blocks.iter().enumerate() {
        for (pi, point) in block.points.iter().enumerate() {
            let form = point.canonicalize(tol)?;
            print!("block {bi} point {pi}:");
            for (x, d) in &form.pairs {
                print!(" (x {:.12e}{:+.12e}i, y {:.12e}{:+.12e}i)", x.re, x.im, d.re, d.im);
            }
            println!();
        }
    }
    Ok(0)
}

pub fn cmd_solve(
    source: &Path,
    target: &Path,
    cfg: &RunConfig,
    out_program: &Path,
    out_report: &Path,
) -> Result<i32> {
    let src = files::read_instance(source)?;
    let tgt = files::read_instance(target)?;
    match solve_collective(&src, &tgt, &cfg.budget()) {
        Ok(report) => {
            files::write_program(out_program, &report.program)?;
            files::write_report(out_report, &report)?;
            println!(
                "solved: {} move(s), max distance {:.3e} (tol {:.1e})",
                report.program.len(),
                report.max_distance(),
                report.tol
            );
            Ok(0)
        }
        Err(Error::VerificationFailed {
            max_distance,
            report,
        }) => {
            files::write_program(out_program, &report.program)?;
            files::write_report(out_report, &report)?;
            println!(
                "verification failed: max distance {max_distance:.3e} exceeds tol {:.1e}; \
                 program and report written anyway",
                report.tol
            );
            Ok(1)
        }
        Err(other) => Err(other),
    }
}

pub fn cmd_apply(program: &Path, instance: &Path, out: &Path) -> Result<i32> {
    let prog = files::read_program(program)?;
    let cfg = files::read_instance(instance)?;
    let tols = Tolerances::default();
    let image = prog.apply_to_configuration(&cfg, tols.membership)?;
    files::write_instance(out, &image)?;
    println!(
        "applied {} move(s) to {} point(s); wrote {}",
        prog.len(),
        image.total_points(),
        out.display()
    );
    Ok(0)
}

pub fn cmd_verify(program: &Path, source: &Path, target: &Path, cfg: &RunConfig) -> Result<i32> {
    let prog = files::read_program(program)?;
    let src = files::read_instance(source)?;
    let tgt = files::read_instance(target)?;
    if src.blocks.len() != tgt.blocks.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} source blocks vs {} target blocks",
            src.blocks.len(),
            tgt.blocks.len()
        )));
    }
    for (k, (sb, tb)) in src.blocks.iter().zip(&tgt.blocks).enumerate() {
        if sb.n != tb.n || sb.points.len() != tb.points.len() {
            return Err(Error::ShapeMismatch(format!(
                "block {k}: source {}x{} vs target {}x{}",
                sb.points.len(),
                sb.n,
                tb.points.len(),
                tb.n
            )));
        }
    }
    let distances = verify_solution(&prog, &src.flatten(), &tgt.flatten(), cfg.tol)?;
    let mut all_ok = true;
    for (k, d) in distances.iter().enumerate() {
        let ok = *d <= cfg.tol;
        println!("point {k}: distance {d:.3e} {}", if ok { "ok" } else { "FAIL" });
        all_ok &= ok;
    }
    Ok(if all_ok { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic_and_blockwise_distinct() {
        let a = generate_configuration(&[1, 2, 3], &[2, 2, 1], 7, SIZE_CAP).unwrap();
        let b = generate_configuration(&[1, 2, 3], &[2, 2, 1], 7, SIZE_CAP).unwrap();
        assert_eq!(files::instance_to_bytes(&a).unwrap(), files::instance_to_bytes(&b).unwrap());
        a.check_distinct().unwrap();
        a.validate(1e-9).unwrap();
    }

    #[test]
    fn invalid_generation_arguments_are_usage_errors() {
        assert!(matches!(
            generate_configuration(&[0], &[1], 1, SIZE_CAP),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            generate_configuration(&[2], &[0], 1, SIZE_CAP),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            generate_configuration(&[2, 3], &[1], 1, SIZE_CAP),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            generate_configuration(&[SIZE_CAP + 1], &[1], 1, SIZE_CAP),
            Err(Error::SizeCap(_, _))
        ));
    }
}
