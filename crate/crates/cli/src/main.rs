mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "calogero", version, about = "Exact Calogero–Sutherland eigenfunctions and checks")]
pub struct Cli {
    /// Output format (only `json` is supported).
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Working precision of numerical checks, in bits.
    #[arg(long = "precision-bits", default_value_t = 256, global = true)]
    pub precision_bits: usize,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed of the evaluation-point sampler.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Singular coefficients and the regular (Jack) eigenfunction for a partition.
    Compute(ComputeArgs),
    /// Reference Jack or Schur polynomial from an independent method.
    Oracle(OracleArgs),
    /// Numerical and exact checks with a pass/fail verdict.
    Verify(VerifyArgs),
    /// Convergence predicates on a list of contour radii.
    Conditions(ConditionsArgs),
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long = "N")]
    pub n: usize,
    /// Coupling as an exact rational, e.g. `1/2`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Comma-separated parts; padded with zeros to length N.
    #[arg(long)]
    pub partition: String,
    #[arg(long, default_value_t = 8)]
    pub depth: u64,
    /// Total-degree cutoff of the transform (default |n|).
    #[arg(long)]
    pub zdeg: Option<i64>,
    #[arg(long, value_enum, default_value_t = Emit::Both)]
    pub emit: Emit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Singular,
    Regular,
    Both,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub partition: String,
    /// Jacobi–Trudi determinant instead of the operator solve.
    #[arg(long)]
    pub schur: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Groundstate,
    Kernel,
    Eigen,
    Gap,
    Conditions,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub check: Check,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Comma-separated masses (default all 1).
    #[arg(long)]
    pub masses: Option<String>,
    /// Total momentum of the kernel function.
    #[arg(long = "P", default_value = "0", allow_hyphen_values = true)]
    pub p: String,
    #[arg(long)]
    pub partition: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub depth: u64,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Contour radius for `conditions` (default the reference radius).
    #[arg(long)]
    pub radius: Option<String>,
}

#[derive(Args, Debug)]
pub struct ConditionsArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub masses: Option<String>,
    /// Comma-separated radii `R > 1`.
    #[arg(long, default_value = "2,3,5,10")]
    pub radius: String,
    /// Gap bound to compare against (default 2λ).
    #[arg(long)]
    pub delta: Option<String>,
}

fn emit(out: &Option<PathBuf>, json: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n"))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}").map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let run = commands::run(&cli).and_then(|report| {
        emit(&cli.out, &report.json)?;
        match report.failure {
            Some(msg) => Err(CliError::Residual(msg)),
            None => Ok(()),
        }
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
