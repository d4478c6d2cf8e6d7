use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use toric_hj_cli::{cmd_cone, cmd_hj, cmd_sweep, cmd_wps, CliError, Options, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Hirzebruch-Jung continued fractions and minimal resolutions of toric
/// surfaces.
#[derive(Debug, Parser)]
#[command(name = "toric-hj", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Show the r-sequence, β-sequence and companion vectors.
    #[arg(long, global = true)]
    trace: bool,
    /// Append the verification report.
    #[arg(long, global = true)]
    verify: bool,
    /// Write a figure to PATH (`cone` and `wps`).
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Replace non-primitive cone generators by their primitive parts.
    #[arg(long, global = true)]
    primitivize: bool,
    /// Largest |det| for which the hull oracle is run.
    #[arg(long, global = true, value_name = "N", default_value = "200")]
    max_det: BigInt,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expansion of a/b, arguments in either order.
    Hj { a: BigInt, b: BigInt },
    /// Resolve the cone spanned by (v1x, v1y) and (v2x, v2y).
    #[command(allow_negative_numbers = true)]
    Cone {
        v1x: BigInt,
        v1y: BigInt,
        v2x: BigInt,
        v2y: BigInt,
    },
    /// Resolve P(1, m, n), weights in either order.
    Wps { m: BigInt, n: BigInt },
    /// Check every coprime pair 2 <= m < n within the bounds.
    Sweep {
        m_max: u64,
        n_max: u64,
        /// Corrupt one trace per pair; the sweep must then fail.
        #[arg(long)]
        inject_fault: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.max_det < BigInt::from(0) {
        return Err(CliError::Input(format!("--max-det must be non-negative, got {}", cli.max_det)));
    }
    let opts = Options {
        trace: cli.trace,
        verify: cli.verify,
        primitivize: cli.primitivize,
        want_svg: cli.svg.is_some(),
        max_det: cli.max_det.clone(),
    };
    match &cli.command {
        Command::Hj { a, b } => cmd_hj(a, b, &opts),
        Command::Cone { v1x, v1y, v2x, v2y } => cmd_cone([v1x, v1y, v2x, v2y], &opts),
        Command::Wps { m, n } => cmd_wps(m, n, &opts),
        Command::Sweep {
            m_max,
            n_max,
            inject_fault,
            threads,
        } => cmd_sweep(*m_max, *n_max, *inject_fault, *threads, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let (Some(path), Some(svg)) = (&cli.svg, &outcome.svg) {
        if let Err(e) = std::fs::write(path, svg) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match cli.format {
        Format::Text => print!("{}", outcome.text),
        Format::Json => println!("{}", outcome.doc.to_json()),
    }
    ExitCode::from(outcome.exit_code() as u8)
}
