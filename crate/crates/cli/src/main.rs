//! `fracpseudo`: densities, characteristic functions, walk convergence,
//! Monte Carlo, PDE residuals, sojourn laws and special functions as CSV or
//! JSON tables.
//!
//! Exit codes: 0 on success, 2 on invalid parameters, 3 when a numerical
//! method fails to converge, 1 on I/O failure.

mod commands;
mod defaults;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{
    CfArgs, ConvergeArgs, DensityArgs, McArgs, ResidualArgs, SojournArgs, SpecfunArgs, SymbolsArgs,
};
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "fracpseudo", version, about = "Fractional pseudoprocess numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signed density v(x, t) on a grid.
    Density(DensityArgs),
    /// Limit characteristic function, optionally with the walk CF.
    Cf(CfArgs),
    /// Weyl, Riesz and Feller symbols on a ξ grid.
    Symbols(SymbolsArgs),
    /// Sup-norm distance between walk and limit CFs along a scale sequence.
    Converge(ConvergeArgs),
    /// Monte Carlo estimates of the walk CF.
    Mc(McArgs),
    /// Residual of the space-fractional equation on a grid.
    Residual(ResidualArgs),
    /// Sojourn-time density on the positive half-line.
    Sojourn(SojournArgs),
    /// Mittag-Leffler, Airy and stable subordinator densities.
    Specfun(SpecfunArgs),
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<fracpseudo::Error> for Failure {
    fn from(e: fracpseudo::Error) -> Self {
        let code = if e.is_domain() { 2 } else { 3 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("FRACPSEUDO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::invalid(format!("FRACPSEUDO_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::invalid(e.to_string()))
}

fn run(mut cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    // open the sink first so an unwritable path fails before any computation
    let sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Failure::invalid(format!("output path {} is not writable: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let (name, table, params) = match &mut cli.command {
        Command::Density(a) => ("density", a.run()?, serde_json::to_value(&*a)),
        Command::Cf(a) => ("cf", a.run()?, serde_json::to_value(&*a)),
        Command::Symbols(a) => ("symbols", a.run()?, serde_json::to_value(&*a)),
        Command::Converge(a) => ("converge", a.run()?, serde_json::to_value(&*a)),
        Command::Mc(a) => ("mc", a.run()?, serde_json::to_value(&*a)),
        Command::Residual(a) => ("residual", a.run()?, serde_json::to_value(&*a)),
        Command::Sojourn(a) => ("sojourn", a.run()?, serde_json::to_value(&*a)),
        Command::Specfun(a) => ("specfun", a.run()?, serde_json::to_value(&*a)),
    };
    let params = params.map_err(|e| Failure::invalid(e.to_string()))?;
    match cli.format {
        Format::Csv => output::write_csv(&table, sink)?,
        Format::Json => output::write_json(&table, name, params, sink)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
