//! `rbmsum`: summarize a document, dump its sentence features, or evaluate
//! a corpus against reference extracts.

mod commands;
mod settings;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rbmsum_core::Error;

use settings::Settings;

#[derive(Debug, Parser)]
#[command(
    name = "rbmsum",
    version,
    about = "Extractive summarization with RBM-enhanced sentence features"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// JSON file with default settings; keys are the flag names
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the main output here instead of standard output
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print an extractive summary
    Summarize {
        /// Input text file; standard input when absent or `-`
        input: Option<PathBuf>,
        /// Write the trained RBM parameters as JSON
        #[arg(long, value_name = "PATH")]
        dump_rbm: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Dump raw, normalized and enhanced features as JSON
    Features {
        input: Option<PathBuf>,
        /// Skip RBM training and omit the enhanced values
        #[arg(long)]
        no_enhance: bool,
        /// Write the trained RBM parameters as JSON
        #[arg(long, value_name = "PATH", conflicts_with = "no_enhance")]
        dump_rbm: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Score summaries of every `<id>.txt` against `<id>.ref` in a directory
    Evaluate {
        corpus: PathBuf,
        /// Also run one- and two-layer modes and write their mean scores side by side
        #[arg(long)]
        compare: bool,
        /// Where the comparison CSV goes; standard output after the metrics when absent
        #[arg(long, value_name = "PATH", requires = "compare")]
        compare_output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    pub fn input(err: Error) -> Self {
        Failure {
            code: 2,
            message: err.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Io { .. } => 2,
            Error::EmptyDocument | Error::DegenerateDocument => 3,
            Error::MissingReference(_) | Error::InvalidReference { .. } | Error::EmptyReference => {
                4
            }
            _ => 1,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Common {
    fn settings(&self) -> Result<Settings, Failure> {
        let base = match &self.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        Ok(Settings::default().overlay(&base).overlay(&self.settings))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Summarize {
            input,
            dump_rbm,
            common,
        } => commands::summarize(
            input.as_deref(),
            &common.settings()?,
            common.output.as_deref(),
            dump_rbm.as_deref(),
        ),
        Command::Features {
            input,
            no_enhance,
            dump_rbm,
            common,
        } => commands::features(
            input.as_deref(),
            &common.settings()?,
            !no_enhance,
            common.output.as_deref(),
            dump_rbm.as_deref(),
        ),
        Command::Evaluate {
            corpus,
            compare,
            compare_output,
            common,
        } => commands::evaluate(
            &corpus,
            &common.settings()?,
            compare.then_some(compare_output.as_deref()),
            common.output.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("rbmsum: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
