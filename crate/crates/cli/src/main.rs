//! `qmsa`: studies and oracle checks for CP Toeplitz/circulant maps and their
//! GKSL generators.
//!
//! Exit status: 0 when every verdict passes, 1 when a verdict fails, 2 on a
//! usage or configuration error.

mod checks;
mod equiv;
mod moments;
mod oracle;
mod spectrum;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qmsa", version, about = "Asymptotic equivalence studies for CP Toeplitz maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Toeplitz-side versus circulant-side distance study over a grid of orders.
    Equiv(equiv::EquivArgs),
    /// Dense oracle, Choi and identity checks on a single small instance.
    Oracle(oracle::OracleArgs),
    /// Block spectra with union, guaranteed-eigenvalue and DFT checks.
    Spectrum(spectrum::SpectrumArgs),
    /// Eigenvalue moments of Toeplitz and circulant matrices against the symbol.
    Moments(moments::MomentsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Toeplitz,
    Circulant,
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Directory for JSON and CSV reports (created if missing).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArgs {
    fn write(&self, name: &str, contents: &[u8]) -> Result<(), Failure> {
        let Some(dir) = &self.out else { return Ok(()) };
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| Failure::io(&path, e))?;
        log::info!("wrote {}", path.display());
        Ok(())
    }
}

/// Anything that should end the process with status 2.
#[derive(Debug)]
pub struct Failure(String);

impl Failure {
    fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<qmsa::Error> for Failure {
    fn from(e: qmsa::Error) -> Self {
        Self(e.to_string())
    }
}

/// `Ok(true)` when all verdicts pass.
type Outcome = Result<bool, Failure>;

/// Inline JSON, a shorthand, or the path of a file holding either.
fn read_spec(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim();
    if trimmed.starts_with('{') {
        return Ok(trimmed.to_owned());
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        return fs::read_to_string(path).map_err(|e| Failure::io(path, e));
    }
    Ok(trimmed.to_owned())
}

fn parse_symbol(arg: &str) -> Result<qmsa::symbols::SymbolSequence, Failure> {
    qmsa::symbols::SymbolSequence::parse(&read_spec(arg)?)
        .map_err(|e| Failure::new(format!("--symbol: {e}")))
}

fn parse_coeffs(arg: &str) -> Result<qmsa::symbols::WcltCoefficients, Failure> {
    qmsa::symbols::WcltCoefficients::parse(&read_spec(arg)?)
        .map_err(|e| Failure::new(format!("--coeffs: {e}")))
}

/// Comma-separated orders, strictly increasing, each at least 2.
fn parse_grid(arg: Option<&str>) -> Result<Vec<usize>, Failure> {
    let grid = match arg {
        None => qmsa::asymptotics::DEFAULT_GRID.to_vec(),
        Some(s) => s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Failure::new(format!("--grid: '{}': {e}", p.trim())))
            })
            .collect::<Result<_, _>>()?,
    };
    if let Some(n) = grid.iter().find(|&&n| n < 2) {
        return Err(Failure::new(format!("--grid: orders must be at least 2, got {n}")));
    }
    qmsa::asymptotics::validate_grid(&grid).map_err(|e| Failure::new(format!("--grid: {e}")))?;
    Ok(grid)
}

fn positive(name: &str, v: f64) -> Result<f64, Failure> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Failure::new(format!("{name} must be a positive number, got {v}")))
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s.into_bytes()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QMSA_LOG", "warn"))
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Equiv(a) => equiv::run(a),
        Command::Oracle(a) => oracle::run(a),
        Command::Spectrum(a) => spectrum::run(a),
        Command::Moments(a) => moments::run(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
