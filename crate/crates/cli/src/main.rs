//! `cfrac`: evaluate continued fractions over the extended complex plane
//! and certify the disk value regions of their even convergents, odd
//! reverse sequences, and even tails.

mod commands;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cfrac_core::{CertificateTarget, ExtendedComplex, Theorem};

use commands::EvalMode;

/// Command failures carrying the process exit code class.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input (exit code 2).
    Parse(String),
    /// Domain error or invalid certificate request (exit code 3).
    Domain(String),
}

impl From<cfrac_core::Error> for CliError {
    fn from(e: cfrac_core::Error) -> Self {
        match &e {
            cfrac_core::Error::SectorTooWide { .. } => CliError::Domain(format!(
                "{e}; run `cfrac counterexample` to reproduce the boundary-ray witness"
            )),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cfrac",
    version,
    about = "Continued fraction evaluation and disk value-region certificates"
)]
struct Cli {
    /// Membership slack used by certificates and sweeps; overrides the
    /// CFRAC_DEFAULT_TOL environment variable (default 1e-9).
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointArgs {
    /// Real part of the seed w.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w_re: f64,

    /// Imaginary part of the seed w.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    w_im: f64,

    /// Use the point at infinity as the seed.
    #[arg(long, conflicts_with_all = ["w_re", "w_im"])]
    w_inf: bool,
}

impl PointArgs {
    fn point(&self) -> ExtendedComplex {
        if self.w_inf {
            ExtendedComplex::infinity()
        } else {
            ExtendedComplex::finite(cfrac_core::Complex64::new(self.w_re, self.w_im))
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Origin,
    Shifted,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Self {
        match t {
            TheoremArg::Origin => Theorem::OriginDisk,
            TheoremArg::Shifted => Theorem::ShiftedDisk,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Convergents,
    Reverse,
    Tails,
}

impl From<TargetArg> for CertificateTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Convergents => CertificateTarget::EvenConvergents,
            TargetArg::Reverse => CertificateTarget::OddReverse,
            TargetArg::Tails => CertificateTarget::EvenTails,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ModeArg {
    #[default]
    Convergent,
    Tail,
    Reverse,
}

impl From<ModeArg> for EvalMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Convergent => EvalMode::Convergent,
            ModeArg::Tail => EvalMode::Tail,
            ModeArg::Reverse => EvalMode::Reverse,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a convergent f_n(w), tail run t_n..t_0, or reverse value
    /// r_{n+1}(w) for a sequence spec.
    Eval {
        /// Path to the JSON sequence spec.
        #[arg(long)]
        spec: PathBuf,

        /// Evaluation depth n.
        #[arg(long)]
        n: usize,

        #[command(flatten)]
        point: PointArgs,

        /// What to evaluate at depth n.
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
    },

    /// Certify that even convergents, odd reverse values, or even tails
    /// stay in an admissible disk.
    Certify {
        /// Path to the JSON sequence spec.
        #[arg(long)]
        spec: PathBuf,

        /// Which disk family to certify against.
        #[arg(long, value_enum)]
        theorem: TheoremArg,

        /// Which value family to check.
        #[arg(long, value_enum)]
        target: TargetArg,

        #[command(flatten)]
        point: PointArgs,

        /// Disk radius; defaults to the minimal admissible constant, which
        /// is always reported.
        #[arg(long = "C")]
        c: Option<f64>,

        /// Tail pair count N (tails target only; the seed is t_{2N});
        /// defaults to half the sequence length.
        #[arg(long)]
        n: Option<usize>,
    },

    /// Sweep the pi/4 boundary-ray configuration where origin-centered
    /// disks provably fail, writing one row per parameter value.
    Counterexample {
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        t_min: f64,

        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        t_max: f64,

        #[arg(long, default_value_t = 50)]
        steps: usize,

        /// Write t, lhs_squared, threshold, violates rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },

    /// Evaluate the deepest even convergent over a grid of admissible
    /// seeds and record disk membership for plotting.
    RegionGrid {
        /// Path to the JSON sequence spec.
        #[arg(long)]
        spec: PathBuf,

        #[arg(long, value_enum)]
        theorem: TheoremArg,

        /// Half-width of the square grid around the disk center; defaults
        /// to the disk radius.
        #[arg(long)]
        grid_radius: Option<f64>,

        /// Grid points per axis (at least 2).
        #[arg(long, default_value_t = 32)]
        resolution: usize,

        /// Write w_re, w_im, val_re, val_im, in_disk rows here.
        #[arg(long)]
        csv: PathBuf,
    },

    /// Run the fixed-seed randomized theorem sweep; zero violations is the
    /// expected outcome.
    Sweep {
        #[arg(long, value_enum)]
        theorem: TheoremArg,

        #[arg(long, default_value_t = 10_000)]
        samples: usize,

        #[arg(long, default_value_t = cfrac_core::DEFAULT_SWEEP_SEED)]
        seed: u64,

        /// Largest sector half-angle sampled; defaults just below the
        /// theorem's limit (pi/4 for origin, pi/2 for shifted).
        #[arg(long, allow_negative_numbers = true)]
        theta_max: Option<f64>,

        #[arg(long, default_value_t = 10)]
        max_pairs: usize,
    },
}

fn resolve_slack(tol: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = tol {
        return Ok(t);
    }
    match std::env::var("CFRAC_DEFAULT_TOL") {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("CFRAC_DEFAULT_TOL is not a number: {raw}"))),
        Err(_) => Ok(cfrac_core::DEFAULT_SLACK),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let slack = resolve_slack(cli.tol)?;
    match cli.command {
        Command::Eval {
            spec,
            n,
            point,
            mode,
        } => commands::cmd_eval(&spec, n, point.point(), mode.into(), slack),
        Command::Certify {
            spec,
            theorem,
            target,
            point,
            c,
            n,
        } => commands::cmd_certify(
            &spec,
            theorem.into(),
            target.into(),
            point.point(),
            c,
            n,
            slack,
        ),
        Command::Counterexample {
            t_min,
            t_max,
            steps,
            csv,
        } => commands::cmd_counterexample(t_min, t_max, steps, csv.as_deref(), slack),
        Command::RegionGrid {
            spec,
            theorem,
            grid_radius,
            resolution,
            csv,
        } => commands::cmd_region_grid(&spec, theorem.into(), grid_radius, resolution, &csv, slack),
        Command::Sweep {
            theorem,
            samples,
            seed,
            theta_max,
            max_pairs,
        } => commands::cmd_sweep(theorem.into(), samples, seed, theta_max, max_pairs, slack),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
