//! Thin command-line front end; all logic lives in the library.

use clap::{Args, Parser, Subcommand};
use cmt::cli::{self, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cmt",
    version,
    about = "Calogero-Moser spaces: membership, canonical forms, and explicit \
             automorphism sequences between point tuples"
)]
struct CmtCli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Seed of the deterministic randomness stream
    #[arg(long, env = "CMT_SEED", default_value_t = 0)]
    seed: u64,
    /// Verification tolerance for solved instances
    #[arg(long, env = "CMT_TOL", default_value_t = 1e-6)]
    tol: f64,
    /// Retry budget for the certified random searches
    #[arg(long, env = "CMT_MAX_RETRIES", default_value_t = 48)]
    max_retries: usize,
    /// Scaling parameters tried per random polynomial draw
    #[arg(long, env = "CMT_T_SAMPLES", default_value_t = 4)]
    t_samples: usize,
    /// Largest admissible matrix size
    #[arg(long, env = "CMT_SIZE_CAP", default_value_t = 16)]
    size_cap: usize,
}

impl RunArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            tol: self.tol,
            max_retries: self.max_retries,
            t_samples: self.t_samples,
            size_cap: self.size_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance of random points, blockwise distinct
    Gen {
        /// Comma-separated space sizes, one per block (e.g. 1,2,3)
        #[arg(long, value_delimiter = ',', required = true, env = "CMT_SPACES")]
        spaces: Vec<i64>,
        /// Comma-separated point counts, one per block (defaults to 1 each)
        #[arg(long, value_delimiter = ',', env = "CMT_POINTS")]
        points: Vec<i64>,
        /// Output instance file
        #[arg(long, env = "CMT_OUT", default_value = "instance.json")]
        out: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the rank-one membership of every point in an instance
    Check {
        instance: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the canonical form of every point (simple X-spectrum required)
    Canon {
        instance: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Construct a program mapping the source instance to the target
    Solve {
        source: PathBuf,
        target: PathBuf,
        /// Output program file
        #[arg(long, env = "CMT_OUT", default_value = "program.json")]
        out: PathBuf,
        /// Output report file (defaults next to the program file)
        #[arg(long, env = "CMT_REPORT")]
        report: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Apply a program file to an instance
    Apply {
        program: PathBuf,
        instance: PathBuf,
        /// Output instance file
        #[arg(long, env = "CMT_OUT", default_value = "image.json")]
        out: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Independently verify a program against a source and a target
    Verify {
        program: PathBuf,
        source: PathBuf,
        target: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn to_sizes(raw: &[i64], what: &str) -> Result<Vec<usize>, cmt::Error> {
    raw.iter()
        .map(|&v| {
            usize::try_from(v).map_err(|_| {
                cmt::Error::ShapeMismatch(format!("{what} must be non-negative, got {v}"))
            })
        })
        .collect()
}

fn report_path_for(program: &std::path::Path) -> PathBuf {
    match program.extension().and_then(|e| e.to_str()) {
        Some("json") => program.with_extension("report.json"),
        _ => {
            let mut os = program.as_os_str().to_owned();
            os.push(".report.json");
            PathBuf::from(os)
        }
    }
}

fn run(cli: CmtCli) -> Result<i32, cmt::Error> {
    match cli.command {
        Command::Gen {
            spaces,
            points,
            out,
            run,
        } => {
            let spaces = to_sizes(&spaces, "space sizes")?;
            let points = if points.is_empty() {
                vec![1; spaces.len()]
            } else {
                to_sizes(&points, "point counts")?
            };
            cli::cmd_gen(&spaces, &points, run.seed, run.size_cap, &out)
        }
        Command::Check { instance, run } => cli::cmd_check(&instance, run.tol),
        Command::Canon { instance, run } => cli::cmd_canon(&instance, run.tol.max(1e-12)),
        Command::Solve {
            source,
            target,
            out,
            report,
            run,
        } => {
            let report = report.unwrap_or_else(|| report_path_for(&out));
            cli::cmd_solve(&source, &target, &run.config(), &out, &report)
        }
        Command::Apply {
            program,
            instance,
            out,
            run: _,
        } => cli::cmd_apply(&program, &instance, &out),
        Command::Verify {
            program,
            source,
            target,
            run,
        } => cli::cmd_verify(&program, &source, &target, &run.config()),
    }
}

fn main() -> ExitCode {
    let cli = CmtCli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
