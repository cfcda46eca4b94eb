mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcorr_core::Error;

#[derive(Parser, Debug)]
#[command(name = "qcorr", version, about = "Correlation witnesses, randomness bounds and hidden-variable model search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate witnesses on one scenario
    Witness {
        #[command(flatten)]
        source: Source,
        /// Comma-separated subset of q,w,wl,pb,pmin,chsh,hmin,f_q [default: all that apply]
        #[arg(long)]
        metrics: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate every witness over a parameter grid
    Sweep {
        /// Parametric family: werner or wn-bb84
        #[arg(long)]
        family: String,
        /// start:stop:steps
        #[arg(long)]
        range: String,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Local-polytope membership and bounded model search
    Certify {
        #[arg(value_enum)]
        kind: CertifyKind,
        #[command(flatten)]
        source: Source,
        /// Hidden-variable dimension (2, 3 or 4)
        #[arg(long)]
        dlambda: Option<usize>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Named families
    Family {
        #[arg(value_enum)]
        action: FamilyAction,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Named family, e.g. bb84, wn-bb84:0.7, pr
    #[arg(long)]
    family: Option<String>,
    /// JSON scenario document
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CertifyKind {
    Local,
    Superlocal,
    Unsteerable,
    Superunsteerable,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyAction {
    List,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ParseError(_) | Error::ConfigError(_) | Error::DomainError { .. } | Error::UnsupportedN(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qcorr: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
