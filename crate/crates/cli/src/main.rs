use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mazer::config::ConfigValues;
use mazer::figure::Figure;
use mazer::output::write_csv;
use mazer::report::{extrema_report, point_report};
use mazer::sweep::{run_sweep, threads_from_env};
use mazer::{CliError, SweepRecord};
use mazer_core::{OracleConfig, SystemParams};

/// Excited-atom tunneling through a cavity mode shared with N-1 ground-state atoms.
#[derive(Debug, Parser)]
#[command(name = "mazer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a (N, u, s) grid described by a config file and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// exact, slow, fast, averaged or oracle.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        u_sigma: Option<String>,
        #[arg(long)]
        quadrature_points: Option<String>,
        #[arg(long)]
        steps: Option<String>,
    },
    /// Write the data behind a standard plot as CSV.
    Figure {
        /// fig2 or fig3.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report every probability and limiting value at one point.
    Point {
        n_atoms: u32,
        u: f64,
        s: f64,
        /// Also run the coupled-channel integrator.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = OracleConfig::DEFAULT_STEPS)]
        steps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Slow-limit transmission maximum, minimum and period for N > 1.
    Extrema {
        n_atoms: u32,
        #[arg(long)]
        json: bool,
    },
}

fn emit_csv(out: Option<&PathBuf>, records: &[SweepRecord]) -> Result<(), CliError> {
    match out {
        Some(path) => write_csv(BufWriter::new(File::create(path)?), records)?,
        None => write_csv(io::stdout().lock(), records)?,
    }
    Ok(())
}

fn print(text: &str) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        stdout.write_all(b"\n")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep { config, out, mode, u_sigma, quadrature_points, steps } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| CliError::usage(format!("config: {}: {e}", config.display())))?;
            let mut values = ConfigValues::parse(&text)?;
            for (key, value) in [
                ("mode", mode),
                ("u_sigma", u_sigma),
                ("quadrature_points", quadrature_points),
                ("steps", steps),
            ] {
                if let Some(v) = value {
                    values.set(key, &v)?;
                }
            }
            let records = run_sweep(&values.to_spec()?)?;
            emit_csv(out.as_ref(), &records)
        }
        Command::Figure { name, out } => {
            let records = name.parse::<Figure>()?.records(threads_from_env()?)?;
            emit_csv(out.as_ref(), &records)
        }
        Command::Point { n_atoms, u, s, oracle, steps, json } => {
            let params = SystemParams::new(n_atoms, u, s)?;
            let config = if oracle { Some(OracleConfig::new(steps)?) } else { None };
            let report = point_report(&params, config.as_ref())?;
            print(&if json { report.to_json() } else { report.to_text() })
        }
        Command::Extrema { n_atoms, json } => {
            let report = extrema_report(n_atoms)?;
            let text = if json {
                serde_json::to_string_pretty(&report).expect("report fields are serializable")
            } else {
                report.to_text()
            };
            print(&text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("mazer: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
