//! Command-line front end for `laplace-contour`: energy tables, wavefunction
//! grids, contour reports, Hankel checks of `1/Γ` and continuum solutions,
//! written as CSV or JSON.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

pub use commands::{cmd_continuum, cmd_contour_report, cmd_energies, cmd_gamma_hankel, cmd_wavefunction, Report};
pub use config::{CommandKind, Grid, OutputFormat, RunConfig, UnitSystem};
pub use output::{Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "laplace-contour",
    version,
    about = "Laplace contour-integral solutions of the hydrogen radial equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Unit system for grid radii and energies
    #[arg(long, value_enum, default_value = "atomic", global = true)]
    pub units: UnitSystem,

    /// Quadrature tolerance, in (1e-14, 1e-2)
    #[arg(long, env = config::TOL_ENV, default_value_t = config::DEFAULT_TOL, global = true)]
    pub tol: f64,

    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: OutputFormat,

    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Radial grid r_min:r_max:points[:log]
    #[arg(long, default_value = "0:20:101", global = true)]
    pub grid: Grid,

    /// Worker threads for grid rows (default: available parallelism)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies E_1 … E_nmax
    Energies { n_max: u32 },
    /// Bound-state χ: Laguerre closed form against residue quadrature
    Wavefunction {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long)]
        l: u32,
    },
    /// Endpoint and finiteness verdicts for each cataloged contour
    ContourReport {
        #[arg(short, long)]
        l: u32,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
    },
    /// 1/Γ(p) from the Hankel contour; p like 2.3, -0.5 or 1+0.7i
    GammaHankel {
        #[arg(allow_hyphen_values = true, value_parser = parse_complex)]
        p: Complex64,
    },
    /// Continuum solution U₅ on the grid
    Continuum {
        #[arg(short, long, allow_negative_numbers = true)]
        energy: f64,
        #[arg(short, long)]
        l: u32,
    },
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Energies { .. } => CommandKind::Energies,
            Command::Wavefunction { .. } => CommandKind::Wavefunction,
            Command::ContourReport { .. } => CommandKind::ContourReport,
            Command::GammaHankel { .. } => CommandKind::GammaHankel,
            Command::Continuum { .. } => CommandKind::Continuum,
        }
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("not a complex number: {s:?}");
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split before the last sign that is not leading or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |p: &str| match p {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => p.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(k) => Ok(Complex64::new(body[..k].parse().map_err(|_| bad())?, imag(&body[k..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            command: self.command.kind(),
            unit_system: self.units,
            tolerance: self.tol,
            output_format: self.format,
            output_path: self.out.clone(),
            grid: self.grid,
            jobs: self.jobs.unwrap_or_else(config::default_jobs),
        }
    }
}

pub fn execute(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    match *command {
        Command::Energies { n_max } => cmd_energies(cfg, n_max),
        Command::Wavefunction { n, l } => cmd_wavefunction(cfg, n, l),
        Command::ContourReport { l, nu } => cmd_contour_report(cfg, l, nu),
        Command::GammaHankel { p } => cmd_gamma_hankel(cfg, p),
        Command::Continuum { energy, l } => cmd_continuum(cfg, energy, l),
    }
}

pub fn write_report(report: &Report, cfg: &RunConfig) -> Result<(), CliError> {
    let mut out: Box<dyn Write> = match &cfg.output_path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match cfg.output_format {
        OutputFormat::Csv => report.table.write_csv(&mut out)?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &report.table.to_json(cfg)).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = cli.config();
    let report = match execute(&cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Err(e) = write_report(&report, &cfg) {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match &report.failure {
        Some(msg) => {
            eprintln!("numerical check failed");
            eprintln!("  command: {}", cfg.command.name());
            eprintln!("  tolerance: {:e}", cfg.tolerance);
            eprintln!("  {msg}");
            1
        }
        None => 0,
    }
}
