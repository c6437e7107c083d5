use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const TOL_ENV: &str = "LAPLACE_CONTOUR_TOL";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Atomic,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `r_min:r_max:points[:log]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            r_min: 0.0,
            r_max: 20.0,
            points: 101,
            spacing: Spacing::Linear,
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected r_min:r_max:points[:log], got {s:?}"));
        }
        let num = |p: &str, what: &str| p.trim().parse::<f64>().map_err(|_| format!("bad {what} {p:?}"));
        let r_min = num(parts[0], "r_min")?;
        let r_max = num(parts[1], "r_max")?;
        let points = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("bad point count {:?}", parts[2]))?;
        let spacing = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(format!("unknown spacing {other:?}")),
        };
        let grid = Grid {
            r_min,
            r_max,
            points,
            spacing,
        };
        grid.validate()?;
        Ok(grid)
    }
}

impl Grid {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.r_min.is_finite() && self.r_max.is_finite()) {
            return Err("grid bounds must be finite".into());
        }
        if self.r_min < 0.0 {
            return Err(format!("r_min must be ≥ 0, got {}", self.r_min));
        }
        if self.points < 2 {
            return Err(format!("a grid needs at least 2 points, got {}", self.points));
        }
        if self.r_max <= self.r_min {
            return Err("r_max must exceed r_min".into());
        }
        if self.spacing == Spacing::Log && self.r_min == 0.0 {
            return Err("log spacing needs r_min > 0".into());
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.r_min + (self.r_max - self.r_min) * t,
                    Spacing::Log => (self.r_min.ln() + (self.r_max / self.r_min).ln() * t).exp(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Energies,
    Wavefunction,
    ContourReport,
    GammaHankel,
    Continuum,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Energies => "energies",
            CommandKind::Wavefunction => "wavefunction",
            CommandKind::ContourReport => "contour-report",
            CommandKind::GammaHankel => "gamma-hankel",
            CommandKind::Continuum => "continuum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub unit_system: UnitSystem,
    pub tolerance: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub grid: Grid,
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            unit_system: UnitSystem::Atomic,
            tolerance: DEFAULT_TOL,
            output_format: OutputFormat::Csv,
            output_path: None,
            grid: Grid::default(),
            jobs: default_jobs(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance > 1e-14 && self.tolerance < 1e-2) {
            return Err(CliError::Usage(format!(
                "tolerance must lie in (1e-14, 1e-2), got {}",
                self.tolerance
            )));
        }
        if self.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        self.grid.validate().map_err(CliError::Usage)
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
