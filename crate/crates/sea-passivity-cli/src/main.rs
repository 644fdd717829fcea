//! Passivity analysis for velocity-sourced series elastic actuators from
//! the command line: verdicts, design bounds, Bode CSV export, guideline
//! comparison, and scripted reproduction of the reference scenarios.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};

use config::AnalysisConfig;
use report::Format;

#[derive(Parser)]
#[command(name = "sea-passivity", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run both passivity routes and report verdict, margins, and witness.
    Check {
        /// Analysis config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output style.
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Evaluate the closed-form design bounds for the configured target.
    Bounds {
        /// Analysis config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output style.
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Write the frequency response as CSV with regime labels.
    Bode {
        /// Analysis config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Destination CSV file.
        #[arg(long)]
        output: PathBuf,
    },
    /// Compare the published design guidelines against the exact bounds.
    Compare {
        /// Analysis config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Output style.
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Regenerate a reference scenario into a directory of data files.
    Reproduce {
        /// One of: null-gain-sweeps, spring-gain-sweeps,
        /// damping-counterexample, bounds-tables.
        #[arg(long)]
        scenario: String,
        /// Destination directory.
        #[arg(long)]
        output: PathBuf,
    },
}

fn main() {
    // Usage problems exit with 1 like config problems; --help and
    // --version are not errors.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };

    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            process::exit(1);
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Check { config, format } => {
            commands::check(&AnalysisConfig::load(&config)?, format)
        }
        Command::Bounds { config, format } => {
            commands::bounds(&AnalysisConfig::load(&config)?, format)
        }
        Command::Bode { config, output } => {
            commands::bode_csv(&AnalysisConfig::load(&config)?, &output)
        }
        Command::Compare { config, format } => {
            commands::compare(&AnalysisConfig::load(&config)?, format)
        }
        Command::Reproduce { scenario, output } => commands::reproduce(&scenario, &output),
    }
}
