//! The `pu-verify` command line: flag and config-file parsing, dispatch and
//! JSON reports.

mod commands;
mod config;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{
    dispatch, pythagorean_pairs, ANCHORS, DENSITY_REFERENCE_CUTOFF, EQUAL_FREQUENCY_LEVELS, SUBCOMMANDS,
};
pub use config::{Mode, Params, RunConfig};
pub use report::{num, Check, Report};

use crate::error::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "pu-verify",
    version,
    about = "Verify spectral, algebraic and dynamical claims about the Pais-Uhlenbeck oscillator"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Group,
    /// JSON file with default parameters; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Where to write the JSON report (it is always printed to stdout).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// Symbolic checks of eigenfunctions, maps, charges and identities.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Truncation convergence of the equal-frequency continuum series.
    Continuum {
        #[command(subcommand)]
        what: ContinuumCmd,
    },
    /// Spectral scans over the ghost energy levels.
    Spectrum {
        #[command(subcommand)]
        what: SpectrumCmd,
    },
    /// Norm growth of the 2×2 Jordan toy model.
    Jordan {
        #[command(subcommand)]
        what: JordanCmd,
    },
    /// Degeneration of eigenfunctions as the two frequencies merge.
    Gram {
        #[command(subcommand)]
        what: GramCmd,
    },
    /// Classical trajectories, stability scans and envelopes.
    Classical {
        #[command(subcommand)]
        what: ClassicalCmd,
    },
    /// Gaussian ansatz energies and the unboundedness certificate.
    Variational {
        #[command(subcommand)]
        what: VariationalCmd,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum VerifyCmd {
    /// Ghost eigenfunction residuals up to `--nmax`.
    Eigen,
    /// Positive-energy family residuals and the equal-frequency level check.
    Positive,
    /// Hermite sum and exponential identities in exact arithmetic.
    Identities,
    /// Commutators of the conserved charge with the Hamiltonian.
    Commutator,
    /// Symplecticity of the canonical maps on random Pythagorean frequency pairs.
    Maps,
    /// Time-dependent descendants of the equal-frequency ground state.
    Descendants,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum ContinuumCmd {
    /// Residual ratios across `--truncations`.
    Residual,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum SpectrumCmd {
    /// Closest ghost level to `--target` with both indices up to `--nmax`.
    Density,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum JordanCmd {
    /// Euclidean and degenerate norms of ψ(t) at `--times`.
    Demo,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum GramCmd {
    /// Smallest Gram singular value per level and Δ.
    Limit,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum ClassicalCmd {
    /// Integrate one trajectory; for the free system compare with the analytic solution.
    Run,
    /// Grid scan of initial states for boundedness and collapse.
    Scan,
    /// Windowed amplitude envelope and its linear fit.
    Envelope,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum VariationalCmd {
    /// Closed-form energy against the symbolic oracle and gradient.
    Check,
    /// Build and verify the descent certificate down to `--threshold`.
    Descend,
}

impl Group {
    pub fn name(&self) -> &'static str {
        match self {
            Group::Verify { what } => match what {
                VerifyCmd::Eigen => "verify eigen",
                VerifyCmd::Positive => "verify positive",
                VerifyCmd::Identities => "verify identities",
                VerifyCmd::Commutator => "verify commutator",
                VerifyCmd::Maps => "verify maps",
                VerifyCmd::Descendants => "verify descendants",
            },
            Group::Continuum { .. } => "continuum residual",
            Group::Spectrum { .. } => "spectrum density",
            Group::Jordan { .. } => "jordan demo",
            Group::Gram { .. } => "gram limit",
            Group::Classical { what } => match what {
                ClassicalCmd::Run => "classical run",
                ClassicalCmd::Scan => "classical scan",
                ClassicalCmd::Envelope => "classical envelope",
            },
            Group::Variational { what } => match what {
                VariationalCmd::Check => "variational check",
                VariationalCmd::Descend => "variational descend",
            },
        }
    }
}

impl Cli {
    /// Merges the optional config file under the flags.
    pub fn resolve(&self) -> crate::Result<RunConfig> {
        let params = match &self.config {
            Some(path) => self.params.overlay(&Params::from_file(path)?),
            None => self.params.clone(),
        };
        Ok(RunConfig {
            subcommand: self.command.name().to_string(),
            params,
            report: self.report.clone(),
        })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Trajectory(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Runs a resolved configuration: prints the report, writes it if asked and
/// returns the exit code.
pub fn execute(cfg: &RunConfig) -> i32 {
    let report = match dispatch(&cfg.subcommand, &cfg.params) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = report.to_json();
    print!("{text}");
    if let Some(path) = &cfg.report {
        if let Err(e) = report.write(path) {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Full entry point over raw arguments.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match cli.resolve() {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
