use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

use commands::{CliError, Options, Output};

/// Classify points of the symmetrized polydisc, tetrablock and pentablock,
/// apply their automorphisms, decompose boundary points into orbits, and
/// estimate structured singular values. Requests and results are JSON.
#[derive(Debug, Parser)]
#[command(name = "dbound", version)]
struct Cli {
    /// Classification tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for sampling and interpolation restarts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of points for `sample`, scale of `selftest`.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Bracket width for structured singular values.
    #[arg(long, global = true, default_value_t = 1e-4)]
    resolution: f64,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write `sample`, `classify` and `selftest` results as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stratum, region and defect of one point or a list of points.
    Classify { input: Option<PathBuf> },
    /// Apply an automorphism (or its inverse) to a point.
    Aut { input: Option<PathBuf> },
    /// Orbit decomposition of distinguished-boundary points.
    Decompose { input: Option<PathBuf> },
    /// Structured singular value bracket of a 2×2 matrix.
    Mu { input: Option<PathBuf> },
    /// Random points from a named stratum.
    Sample { input: Option<PathBuf> },
    /// Blaschke product with prescribed values at the roots of unity.
    Interp { input: Option<PathBuf> },
    /// Run the built-in property checks.
    Selftest,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        _ => std::io::read_to_string(std::io::stdin())
            .map_err(|e| CliError::Input(format!("stdin: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = Options::new(cli.tol, cli.seed, cli.samples, cli.resolution, cli.csv)?;
    match &cli.command {
        Command::Selftest => commands::selftest(&opts),
        Command::Classify { input } => commands::classify(&read_input(input.as_ref())?, &opts),
        Command::Aut { input } => commands::aut(&read_input(input.as_ref())?, &opts),
        Command::Decompose { input } => commands::decompose(&read_input(input.as_ref())?, &opts),
        Command::Mu { input } => commands::mu(&read_input(input.as_ref())?, &opts),
        Command::Sample { input } => commands::sample(&read_input(input.as_ref())?, &opts),
        Command::Interp { input } => commands::interp(&read_input(input.as_ref())?, &opts),
    }
}

fn emit(output: &Output, pretty: bool) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match output {
        Output::Json(v) => {
            let text = if pretty {
                serde_json::to_string_pretty(v)
            } else {
                serde_json::to_string(v)
            };
            writeln!(out, "{}", text.expect("values serialize"))
        }
        Output::Csv(text) => out.write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (output, code) = match run(&cli) {
        Ok(output) => (output, 0),
        Err(CliError::SelftestFailed(output)) => (output, 4),
        Err(e) => {
            eprintln!("dbound: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = emit(&output, cli.pretty) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::from(code);
        }
        eprintln!("dbound: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
