//! `qcluster`: build quivers from reduced words, mutate seeds, construct and
//! verify flip operators, polarize, and run the verification suites.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use qcluster::mutation_engine::PhiKind;
use qcluster::polarization::PolarizationMode;
use qcluster::relations_suite::golden::GOLDEN_ENV;
use qcluster::relations_suite::{CheckContext, ReportFormat};

use commands::{FormStyle, PolarizeOptions, VerifyOptions};
use input::{QuiverMode, WordArgs};

#[derive(Parser, Debug)]
#[command(name = "qcluster", version, about = "Quantum cluster realization of Borel subalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build quivers and list their F/E paths.
    Quiver {
        #[command(subcommand)]
        action: QuiverAction,
    },
    /// Mutate a seed along a sequence of node labels.
    Mutate {
        #[command(flatten)]
        words: WordArgs,
        /// Seed file written by `quiver build`, or a bare seed.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "doubled")]
        mode: QuiverMode,
        /// Comma-separated node labels, applied left to right (1b or 1̄, 2p or 2′).
        #[arg(long)]
        at: String,
        #[arg(long)]
        emit_dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build Φ₁ or Φ₃, derive its mutation sequence and verify the flip.
    Flip {
        #[command(flatten)]
        words: WordArgs,
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long, default_value = "phi1", value_parser = parse_phi)]
        which: PhiKind,
        #[arg(long, default_value = "text", value_parser = parse_report)]
        report: ReportFormat,
        /// Include the glued quiver and the mutated quiver as DOT.
        #[arg(long)]
        emit_dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: golden-A1, golden-A3, golden-B3, relations,
    /// oracle, acceptance, all, or a single check by name.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// List suites and checks instead of running them.
        #[arg(long)]
        list: bool,
    },
    /// Symbolic polarization of a quiver in positions, momenta and λ.
    Polarize {
        #[command(flatten)]
        words: WordArgs,
        #[arg(long)]
        seed: Option<PathBuf>,
        /// single, feigin, doubled or tensor.
        #[arg(long, value_parser = parse_polarization)]
        mode: Option<PolarizationMode>,
        /// symbolic keeps the λ parameters, zero drops them.
        #[arg(long, default_value = "symbolic", value_parser = ["symbolic", "zero"])]
        lambda: String,
        /// Render the factors of a flip operator as exponentials.
        #[arg(long, value_parser = parse_phi)]
        render_phi: Option<PhiKind>,
        /// Print the affine shift normalizing K' and the first-copy monomials.
        #[arg(long)]
        shift: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: FormStyle,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check dilogarithm identities against the truncated series.
    Oracle {
        /// guv, g12, gdouble, gcon, closed-form or all.
        #[arg(long, default_value = "all")]
        identity: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverAction {
    /// Build a basic, doubled or tensor-square quiver as JSON or DOT.
    Build {
        #[command(flatten)]
        words: WordArgs,
        #[arg(long, value_enum, default_value = "doubled")]
        mode: QuiverMode,
        #[arg(long)]
        emit_dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print F/E paths and path polynomials of the basic quiver.
    Paths {
        #[command(flatten)]
        words: WordArgs,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    #[arg(long, default_value = "text", value_parser = parse_report)]
    report: ReportFormat,
    /// Worker threads; the report keeps registry order.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Truncation order of the dilogarithm series.
    #[arg(long, default_value_t = qcluster::dilog_series::DEFAULT_ORDER)]
    order: usize,
    /// Samples for the randomized checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 2024)]
    rng_seed: u64,
    /// Directory with a1.json, a3.json, b3.json replacing the bundled data.
    #[arg(long, env = GOLDEN_ENV)]
    golden_dir: Option<PathBuf>,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self, suite: &str, list: bool) -> VerifyOptions {
        VerifyOptions {
            suite: suite.to_string(),
            format: self.report,
            jobs: self.jobs.max(1),
            context: CheckContext {
                order: self.order,
                seed: self.rng_seed,
                samples: self.samples,
                golden_dir: self.golden_dir.clone(),
            },
            timings: self.timings,
            list,
        }
    }
}

fn parse_phi(s: &str) -> Result<PhiKind, String> {
    s.parse().map_err(|e: qcluster::Error| e.to_string())
}

fn parse_report(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: qcluster::Error| e.to_string())
}

fn parse_polarization(s: &str) -> Result<PolarizationMode, String> {
    s.parse().map_err(|e: qcluster::Error| e.to_string())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Quiver { action: QuiverAction::Build { words, mode, emit_dot, out } } => {
            commands::quiver_build(&words, mode, emit_dot, out.as_ref())
        }
        Command::Quiver { action: QuiverAction::Paths { words, root, out } } => {
            commands::quiver_paths(&words, root, out.as_ref())
        }
        Command::Mutate { words, seed, mode, at, emit_dot, out } => {
            commands::mutate(&words, seed.as_ref(), mode, &at, emit_dot, out.as_ref())
        }
        Command::Flip { words, seed, which, report, emit_dot, out } => {
            commands::flip(&words, seed.as_ref(), which, report, emit_dot, out.as_ref())
        }
        Command::Verify { suite, run, list } => commands::verify(&run.options(&suite, list), run.out.as_ref()),
        Command::Polarize { words, seed, mode, lambda, render_phi, shift, format, out } => {
            let opts = PolarizeOptions { mode, lambda: lambda == "symbolic", render_phi, shift, style: format };
            commands::polarize_cmd(&words, seed.as_ref(), &opts, out.as_ref())
        }
        Command::Oracle { identity, run } => commands::oracle(&identity, run.options("oracle", false), run.out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
