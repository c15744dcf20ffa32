use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cli::{Command, DeltaPreference, Format, RunConfig};
use isomonodromy::Branch;

/// Instanton profiles, twistor-line traces and Painlevé VI verification.
///
/// Logging is controlled by PAINLEVE_INSTANTON_LOG (error, info, debug).
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Bundle label n (positive odd integer).
    #[arg(long, global = true, default_value_t = 3)]
    n: i32,
    #[arg(long, global = true, default_value_t = 0.05)]
    t_min: f64,
    #[arg(long, global = true, default_value_t = 0.95)]
    t_max: f64,
    /// Number of sample points (at least 5).
    #[arg(long, global = true, default_value_t = 101)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Replace every verification threshold by this value.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = DeltaArg::Auto)]
    delta_variant: DeltaArg,
    /// Eigenvalue branch of A_inf for pvi-integrate.
    #[arg(long, global = true, value_enum, default_value_t = BranchArg::Plus)]
    branch: BranchArg,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Write the profile functions a1, a2, a3.
    Profile,
    /// Write the twistor-line trace and, with --out, the PVI traces.
    Trace,
    /// Run the verification suite and write the report.
    Verify,
    /// Integrate PVI from the first interior sample across the grid.
    PviIntegrate,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DeltaArg {
    Auto,
    Intro,
    Theorem,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum BranchArg {
    Plus,
    Minus,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PAINLEVE_INSTANTON_LOG", "error")).init();
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let command = match args.command {
        Cmd::Profile => Command::Profile,
        Cmd::Trace => Command::Trace,
        Cmd::Verify => Command::Verify,
        Cmd::PviIntegrate => Command::PviIntegrate,
    };
    let cfg = RunConfig {
        command,
        n: args.n,
        t_min: args.t_min,
        t_max: args.t_max,
        samples: args.samples,
        tol: args.tol,
        output_path: args.out,
        format: match args.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        delta_variant: match args.delta_variant {
            DeltaArg::Auto => DeltaPreference::Auto,
            DeltaArg::Intro => DeltaPreference::Intro,
            DeltaArg::Theorem => DeltaPreference::Theorem,
        },
        branch: match args.branch {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        },
    };
    ExitCode::from(cli::run(&cfg) as u8)
}
