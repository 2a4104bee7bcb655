//! `hyperspace`: Hausdorff distances, hyperspace verifiers and quotient
//! approximations from the command line.
//!
//! Exit status is 0 when every check passed, 1 when a check failed and 2
//! on usage or input errors.

mod commands;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "hyperspace", version, about = "Hausdorff distances and hyperspace checks")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command. Unset options take per-command defaults.
#[derive(Debug, Clone, Args, Serialize)]
pub struct RunConfig {
    /// euclid-cutoff, disk-pullback or matrix:<path>
    #[arg(long, global = true, default_value = "euclid-cutoff")]
    pub metric: String,
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long = "cluster-tol", global = true)]
    pub cluster_tol: Option<f64>,
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true)]
    pub snap: Option<f64>,
    /// Neighbourhood radius of the stability probe.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Jump factor of the stability probe.
    #[arg(long, global = true)]
    pub scale: Option<f64>,
    #[arg(long, global = true, default_value_t = hyperspace::battery::DEFAULT_SEED)]
    pub seed: u64,
    /// Also run the indexed kernel and require bitwise agreement.
    #[arg(long, global = true)]
    pub fast: bool,
    /// Write the full JSON report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Write quotient plot data (CSV) here.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Morse demo: constant height function.
    #[arg(long, global = true)]
    pub degenerate: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Directed and symmetric Hausdorff distances between two point clouds.
    Dist { a: PathBuf, b: PathBuf },
    /// Run a verification battery.
    Verify { suite: Suite },
    /// Approximate Hausdorff quotient of a sampled space under an action.
    Quotient {
        /// Sample points; optional with a matrix metric (all points).
        points: Option<PathBuf>,
        #[arg(long)]
        action: PathBuf,
    },
    /// Run a built-in demonstration.
    Example { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Metric,
    Universal,
    Continuity,
    Compactness,
}

/// Outcome of a command before the report is written.
pub enum Failure {
    /// Bad input or usage; exit 2.
    Usage(String),
    /// The computation ran but a check failed; exit 1.
    Check(String),
}

impl From<hyperspace::Error> for Failure {
    fn from(e: hyperspace::Error) -> Self {
        match e {
            hyperspace::Error::DegenerateQuotient(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        for (name, v) in [
            ("eps", self.eps),
            ("tol", self.tol),
            ("cluster-tol", self.cluster_tol),
            ("delta", self.delta),
            ("scale", self.scale),
        ] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Failure::Usage(format!("--{name} must be positive, got {v}")));
                }
            }
        }
        if let Some(s) = self.snap {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Failure::Usage(format!("--snap must be non-negative, got {s}")));
            }
        }
        if self.budget == Some(0) {
            return Err(Failure::Usage("--budget must be at least 1".into()));
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.config.validate().and_then(|()| match &cli.command {
        Command::Dist { a, b } => commands::dist(&cli.config, a, b),
        Command::Verify { suite } => suites::verify(&cli.config, *suite),
        Command::Quotient { points, action } => commands::quotient(&cli.config, points.as_deref(), action),
        Command::Example { name } => commands::example(&cli.config, name),
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
