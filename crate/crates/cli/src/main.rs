//! `containerkit`: generate application hypergraphs, run the container
//! algorithm and the verification suites, and emit JSON reports.

mod analyze;
mod experiment;
mod gen;
mod input;
mod manifest;
mod run;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit statuses: ok, property failure, input error, resource limit.
pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "containerkit", version, about = "Hypergraph containers and their oracles")]
struct Cli {
    /// Write the output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a hypergraph file.
    #[command(subcommand)]
    Gen(gen::GenCommand),
    /// Degrees, co-degree profiles, m(H) and m_F(A).
    #[command(subcommand)]
    Analyze(analyze::AnalyzeCommand),
    /// Run the container algorithm on an input hypergraph.
    #[command(subcommand)]
    Run(run::RunCommand),
    /// Run a verification suite; exits 1 on any exact property failure.
    Verify(verify::VerifyArgs),
    /// Extremal numbers, Sidon counts and sparse experiments.
    #[command(subcommand)]
    Experiment(experiment::ExperimentCommand),
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Resource(String),
    /// A violated internal contract: reported like a property failure.
    Internal(String),
}

impl From<containerkit::Error> for CliError {
    fn from(e: containerkit::Error) -> Self {
        use containerkit::Error as E;
        match e {
            E::ResourceLimit(_) => CliError::Resource(e.to_string()),
            E::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a finished command reports back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFailure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.as_deref();
    let result = match cli.command {
        Command::Gen(cmd) => gen::run(cmd, output),
        Command::Analyze(cmd) => analyze::run(cmd, output),
        Command::Run(cmd) => run::run(cmd, output),
        Command::Verify(args) => verify::run(args, output),
        Command::Experiment(cmd) => experiment::run(cmd, output),
    };
    match result {
        Ok(Status::Ok) => ExitCode::from(EXIT_OK),
        Ok(Status::PropertyFailure) => ExitCode::from(EXIT_PROPERTY),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PROPERTY)
        }
    }
}
