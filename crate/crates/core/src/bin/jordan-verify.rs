use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use jordan_spheres::algebra::{AlgebraDescriptor, Tolerances};
use jordan_spheres::cli;
use jordan_spheres::error::{JordanError, Result};
use jordan_spheres::report::VerificationReport;
use jordan_spheres::suites::{run_suite, Suite, SuiteConfig};
use jordan_spheres::tingley::Perturbation;

/// Property checks for finite-dimensional Jordan *-algebras.
///
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on usage errors.
#[derive(Parser)]
#[command(name = "jordan-verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol_eq: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_residual: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock duration in the report (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn tolerances(&self) -> Result<Tolerances> {
        Tolerances::new(
            self.tol_eq,
            self.tol_residual,
            Tolerances::default().spectral_tol,
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite: axioms, spectral, projections, spheres, two-proj, spin, glennie, tingley or all.
    Run {
        suite: String,
        #[arg(long, default_value = "mat:3")]
        algebra: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Structure of the subalgebra generated by two projections.
    TwoProj {
        #[arg(long, default_value = "mat:3")]
        algebra: String,
        /// JSON file holding {"p": [...], "q": [...]}; coordinates are numbers or [re, im].
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Draw both projections from the seed.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Order isomorphism between spin:3 and spin:4 projections that no Jordan map induces.
    SpinCounterexample {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized search for a violation of the Glennie identity.
    Glennie {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 1e-3)]
        threshold: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Extend an isometry of positive spheres to a Jordan *-isomorphism.
    Tingley {
        #[arg(long)]
        algebra: String,
        /// Replace the isometry by a non-isometric map that agrees on projections: square or sqrt.
        #[arg(long)]
        perturb: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn descriptor(text: &str) -> Result<AlgebraDescriptor> {
    text.parse()
}

fn execute(command: &Command) -> Result<VerificationReport> {
    match command {
        Command::Run {
            suite,
            algebra,
            samples,
            common,
        } => {
            let suite: Suite = suite.parse()?;
            let config = SuiteConfig {
                algebra: descriptor(algebra)?,
                seed: common.seed,
                tolerances: common.tolerances()?,
                samples: *samples,
            };
            run_suite(suite, &config)
        }
        Command::TwoProj {
            algebra,
            input,
            random: _,
            samples,
            common,
        } => {
            let algebra = descriptor(algebra)?;
            let tol = common.tolerances()?;
            let (p, q) = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        JordanError::Precondition(format!("{}: {e}", path.display()))
                    })?;
                    cli::parse_projection_pair(&algebra, &text, &tol)?
                }
                None => cli::random_projection_pair(&algebra, common.seed),
            };
            cli::two_proj_report(&p, &q, common.seed, &tol, *samples)
        }
        Command::SpinCounterexample { samples, common } => {
            cli::spin_counterexample_report(common.seed, *samples, &common.tolerances()?)
        }
        Command::Glennie {
            algebra,
            trials,
            threshold,
            common,
        } => cli::glennie_report(
            &descriptor(algebra)?,
            *trials,
            common.seed,
            *threshold,
            &common.tolerances()?,
        ),
        Command::Tingley {
            algebra,
            perturb,
            samples,
            common,
        } => {
            let kind = perturb
                .as_deref()
                .map(str::parse::<Perturbation>)
                .transpose()?;
            cli::tingley_report(
                &descriptor(algebra)?,
                common.seed,
                kind,
                *samples,
                &common.tolerances()?,
            )
        }
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Run { common, .. }
        | Command::TwoProj { common, .. }
        | Command::SpinCounterexample { common, .. }
        | Command::Glennie { common, .. }
        | Command::Tingley { common, .. } => common,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = common(&cli.command);
    let start = Instant::now();
    let mut report = match execute(&cli.command) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("jordan-verify: {e}");
            return ExitCode::from(2);
        }
    };
    if options.timing {
        report.duration_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = report.to_json();
    match &options.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("jordan-verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    for check in report.failures() {
        eprintln!("FAIL {}: {}", check.name, check.anchor);
    }
    ExitCode::from(report.exit_code() as u8)
}
