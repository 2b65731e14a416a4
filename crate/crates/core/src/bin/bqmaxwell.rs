use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use bqmaxwell::cli::{load_config, run, Subcommand};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    Solve,
    VerifyInverse,
    KernelCheck,
    Oracle,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Solve => Subcommand::Solve,
            Command::VerifyInverse => Subcommand::VerifyInverse,
            Command::KernelCheck => Subcommand::KernelCheck,
            Command::Oracle => Subcommand::Oracle,
        }
    }
}

/// Biquaternionic Maxwell solver and verification suites.
#[derive(Debug, Parser)]
#[command(name = "bqmaxwell", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output.directory`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; falls back to `threads` in the config, then BQMAXWELL_THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

fn env_threads() -> Option<usize> {
    std::env::var("BQMAXWELL_THREADS").ok()?.trim().parse().ok()
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match load_config(&args.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("bqmaxwell: {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    if let Some(n) = args.threads.or(cfg.threads).or_else(env_threads).filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("bqmaxwell: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(args.command.into(), &cfg, args.out.as_deref()) {
        Ok(report) => {
            print!("{}", report.render());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("bqmaxwell: {e}");
            ExitCode::from(2)
        }
    }
}
