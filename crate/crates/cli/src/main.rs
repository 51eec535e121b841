use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use torelli_cli::pipeline::{self, Runner};
use torelli_cli::report::{PipelineResult, Report, Timing};
use torelli_cli::scenario::{default_hard_cap, default_registry, Scenario, DEFAULT_MODEL_CLASS};
use torelli_cli::verify::verify_suite;
use torelli_cli::{CliError, EXIT_INTERNAL};
use torelli_core::Surface;

#[derive(Parser)]
#[command(name = "torelli", version, about = "Depth, minimal models and formality of Torelli mapping tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest class any computation may reach.
    #[arg(long, global = true)]
    hard_cap: Option<usize>,
    /// Leave wall-clock timings out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    genus: usize,
    /// Mapping class expression over the twists `t` (and `t1`, `t2` in genus 4).
    #[arg(long, default_value = "t")]
    word: String,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of a mapping class on the lower central series.
    Depth {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 5)]
        class: usize,
    },
    /// Minimal model of the surface, or of a mapping torus with --word.
    Model {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MODEL_CLASS)]
        class: usize,
        /// Include the derivation and the full differential.
        #[arg(long)]
        full: bool,
    },
    /// Survey of triple Massey products of 1-classes of a mapping torus.
    Massey {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_MODEL_CLASS)]
        class: usize,
    },
    /// Depth, obstruction, cohomology and Massey data combined.
    Verdict {
        #[command(flatten)]
        target: Target,
        /// Class up to which the depth is searched.
        #[arg(long, default_value_t = 5)]
        class: usize,
        #[arg(long, default_value_t = DEFAULT_MODEL_CLASS)]
        model_class: usize,
    },
    /// Graded dimensions of the Lie algebra and the envelope.
    Dims {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 6)]
        class: usize,
    },
    /// Runs the self-check suite.
    Verify {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 5)]
        class: usize,
        /// Perturb a structure constant first; the Jacobi check must then fail.
        #[arg(long)]
        corrupt: bool,
    },
    /// Runs a scenario file.
    Run { scenario: PathBuf },
}

fn single(genus: usize, hard_cap: usize, command: &str, f: impl FnOnce(&mut Runner) -> Result<PipelineResult, CliError>) -> Result<Report, CliError> {
    let surface = Surface::with_class_cap(genus, hard_cap)?;
    let registry = default_registry(genus)?;
    let mut runner = Runner::new(&surface, &registry, true);
    let mut report = Report::new(command);
    report.results.push(f(&mut runner)?);
    report.stats = runner.stats();
    Ok(report)
}

fn execute(cli: &Cli) -> Result<(Report, bool), CliError> {
    let cap = cli.common.hard_cap.unwrap_or_else(default_hard_cap);
    let start = Instant::now();
    let mut ok = true;
    let mut report = match &cli.command {
        Command::Depth { target, class } => single(target.genus, cap, "depth", |r| {
            let m = default_registry(target.genus)?.parse(&target.word)?;
            r.depth(&m, *class)
        })?,
        Command::Model { genus, word, class, full } => single(*genus, cap, "model", |r| {
            let registry = default_registry(*genus)?;
            let m = word.as_deref().map(|w| registry.parse(w)).transpose()?;
            let result = r.model(m.as_ref(), *class)?;
            Ok(match result {
                PipelineResult::Model(mut s) if !full => {
                    s.derivation = None;
                    s.export = None;
                    PipelineResult::Model(s)
                }
                other => other,
            })
        })?,
        Command::Massey { target, class } => single(target.genus, cap, "massey", |r| {
            let m = default_registry(target.genus)?.parse(&target.word)?;
            r.massey(&m, *class)
        })?,
        Command::Verdict { target, class, model_class } => single(target.genus, cap, "verdict", |r| {
            let m = default_registry(target.genus)?.parse(&target.word)?;
            r.verdict(&m, *class, *model_class)
        })?,
        Command::Dims { genus, class } => {
            let surface = Surface::with_class_cap(*genus, cap)?;
            let mut report = Report::new("dims");
            report.results.push(pipeline::dims(&surface, *class)?);
            report
        }
        Command::Verify { genus, class, corrupt } => {
            let v = verify_suite(*genus, *class, *corrupt, cap)?;
            ok = v.passed;
            let mut report = Report::new("verify");
            report.results.push(PipelineResult::Verify(v));
            report
        }
        Command::Run { scenario } => {
            let resolved = Scenario::load(scenario)?.resolve(cap)?;
            let mut report = pipeline::run_scenario(resolved, false)?;
            report.command = format!("run {}", scenario.display());
            report
        }
    };
    if !cli.common.no_timing {
        report.timing = Some(Timing {
            total_ms: start.elapsed().as_millis(),
            steps_ms: Vec::new(),
        });
    }
    Ok((report, ok))
}

fn configure_workers() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("TORELLI_WORKERS") {
        let n: usize = v.parse().map_err(|_| CliError::validation(format!("TORELLI_WORKERS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(CliError::validation("TORELLI_WORKERS must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::internal(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_workers().and_then(|_| execute(&cli)).and_then(|(report, ok)| {
        let text = match cli.common.format {
            Format::Json => report.to_json(),
            Format::Text => report.to_text(),
        };
        match &cli.common.output {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(ok)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed");
            ExitCode::from(EXIT_INTERNAL as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
