use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const CSV_HELP: &str = "\
CSV columns:
  campaign reports: kind,name,value,bound,relation,trials,violations,passed,detail
    (kind is extremum, check, warning or summary)
  bounds:           k,rho_closed,rho_recursion,rho_sq_exact,prior_rho,prior_rho_sq_exact,radius_ratio,squared_ratio

Exit codes: 0 pass, 1 violation found, 2 usage or input error.
SEPCTL_THREADS caps the worker count.";

#[derive(Debug, Parser)]
#[command(name = "sepctl", version, about = "Separable-ball bound tables and numerical certification campaigns", after_help = CSV_HELP)]
pub struct Cli {
    /// Worker threads for trial fan-out.
    #[arg(long, env = "SEPCTL_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of the k-qubit ball radii, closed form against recursion and the prior sequence.
    #[command(after_help = CSV_HELP)]
    Bounds {
        #[arg(long, default_value_t = 12)]
        k_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Polar inner-radius search, dual-cone inequality campaign and pencil spot checks.
    ///
    /// `--trials` random polar candidates and as many calibrated dual elements (default 1000).
    #[command(after_help = CSV_HELP)]
    Certify {
        #[command(flatten)]
        run: RunArgs,
        /// Adds `s·w*` as an unnormalized polar candidate (negative control).
        #[arg(long, hide = true)]
        inject_scale: Option<f64>,
    },
    /// Necessary-condition report for a three-qubit state file.
    ///
    /// `--trials` witness elements, the first being the embedded extremal one (default 100).
    #[command(after_help = CSV_HELP)]
    CheckState {
        /// JSON `{"m": 3, "re": [...], "im": [...]}`, row-major, flat or nested.
        path: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Monte Carlo suites for the matrix lemmas.
    ///
    /// `--trials` per suite, ten times that for the trace-pairing suite (default 1000).
    #[command(after_help = CSV_HELP)]
    Lemmas {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Trial count; each command documents how it is used.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Random restarts for the sphere optimizers (per-operation defaults when omitted).
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Overrides every pinned tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub restarts: Option<usize>,
    pub tol: Option<f64>,
}

impl RunArgs {
    pub fn config(&self, default_trials: usize) -> Result<RunConfig, String> {
        let trials = self.trials.unwrap_or(default_trials);
        if trials == 0 {
            return Err("--trials must be at least 1".into());
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(format!("--tol must be positive and finite, got {t}"));
            }
        }
        if self.restarts == Some(0) {
            return Err("--restarts must be at least 1".into());
        }
        Ok(RunConfig { seed: self.seed, trials, restarts: self.restarts, tol: self.tol })
    }
}

impl RunConfig {
    /// The pinned tolerance unless `--tol` overrides it.
    pub fn tol_or(&self, pinned: f64) -> f64 {
        self.tol.unwrap_or(pinned)
    }
}
