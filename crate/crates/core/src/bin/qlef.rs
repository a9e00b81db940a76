use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qlefschetz::config::{run, Command, RunConfig, RunOptions};

#[derive(Parser)]
#[command(name = "qlef", version, about = "Invariants of quaternionic congruence subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Tolerance for numeric zeta values.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Run all parallel work on one thread.
    #[arg(long, global = true)]
    single_thread: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Splitting data for the primes of the ideal.
    Classify,
    /// Local and global indices with the index estimate.
    Index,
    /// Lefschetz number of the Galois involution.
    Lefschetz,
    /// Lower bound for the first Betti number.
    Betti,
    /// Bianchi group invariants.
    Bianchi,
    /// Brute-force check of the local counting results.
    Oracle,
    /// Betti bounds along a decreasing chain of ideals.
    Growth,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qlef: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> qlefschetz::Result<()> {
    let command = match cli.command {
        Cmd::Classify => Command::Classify,
        Cmd::Index => Command::Index,
        Cmd::Lefschetz => Command::Lefschetz,
        Cmd::Betti => Command::Betti,
        Cmd::Bianchi => Command::Bianchi,
        Cmd::Oracle => Command::Oracle,
        Cmd::Growth => Command::Growth,
    };
    let config = match &cli.config {
        Some(path) => RunConfig::from_path(path)?,
        None => return Err(qlefschetz::Error::Invalid("--config <path> is required".into())),
    };
    if cli.single_thread {
        // Fails only if the pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
    }
    let opts = RunOptions { tol: cli.tol, single_thread: cli.single_thread };
    let output = run(command, &config, &opts)?;
    let mut text = match cli.format {
        Format::Json => output.to_json()?,
        Format::Csv => output.to_csv()?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| qlefschetz::Error::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
