use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod job;
mod report;

use commands::InputError;
use report::Format;

/// Batch checks of normal and composition series.
#[derive(Debug, Parser)]
#[command(name = "transfinite", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Seed for sampled checks of tower series.
    #[arg(long, global = true, default_value_t = transfinite::series::CHECK_SEED)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Check every series in the job.
    Validate { job: PathBuf },
    /// Schreier-refine the first two series against each other.
    Refine { job: PathBuf },
    /// Compare the butterfly factors of the [zassenhaus] subgroups.
    Zassenhaus { job: PathBuf },
    /// List the factors of every series.
    Factors { job: PathBuf },
    /// Jordan–Hölder check of the first two series.
    #[command(name = "jh-check")]
    JhCheck { job: PathBuf },
    /// Two composition series of lengths w+1 and w+2 of one tower group.
    #[command(name = "demo-transfinite")]
    DemoTransfinite,
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Validate { .. } => "validate",
            Verb::Refine { .. } => "refine",
            Verb::Zassenhaus { .. } => "zassenhaus",
            Verb::Factors { .. } => "factors",
            Verb::JhCheck { .. } => "jh-check",
            Verb::DemoTransfinite => "demo-transfinite",
        }
    }
}

fn load(path: &Path, verb: &str) -> Result<job::Job, InputError> {
    let source = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let job = job::parse(&source).map_err(|e| InputError(format!("{}:{e}", path.display())))?;
    if let Some(command) = &job.command {
        if command != verb {
            return Err(InputError(format!(
                "{}: job is for `{command}`, not `{verb}`",
                path.display()
            )));
        }
    }
    Ok(job)
}

fn run(cli: &Cli) -> Result<report::Report, InputError> {
    let verb = cli.verb.name();
    match &cli.verb {
        Verb::Validate { job } => commands::validate(&load(job, verb)?, cli.seed),
        Verb::Refine { job } => commands::refine(&load(job, verb)?),
        Verb::Zassenhaus { job } => commands::zassenhaus_verb(&load(job, verb)?),
        Verb::Factors { job } => commands::factors(&load(job, verb)?, cli.seed),
        Verb::JhCheck { job } => commands::jh_check(&load(job, verb)?),
        Verb::DemoTransfinite => commands::demo(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(if report.holds { 0 } else { 1 })
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
