use std::path::PathBuf;
use std::process::ExitCode;

use auxetolam_core::micromech::{GridSpec, ScanFamily};
use auxetolam_core::polar::DEFAULT_SYMMETRY_TOL;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod commands;
mod error;
mod material;
mod report;
mod stack;
mod svg;

/// Auxeticity analysis of anisotropic plies and laminates.
#[derive(Debug, Parser)]
#[command(name = "auxetolam", version, about)]
pub struct Cli {
    /// Relative tolerance for symmetry detection.
    #[arg(long, global = true, default_value_t = DEFAULT_SYMMETRY_TOL)]
    pub tol: f64,

    /// Directions sampled for diagrams and the sampled cross-check (>= 8).
    #[arg(long, global = true, default_value_t = 720)]
    pub samples: usize,

    /// Directory for report, CSV and SVG files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output files to write, comma separated.
    #[arg(long, global = true, value_enum, value_delimiter = ',', default_value = "json")]
    pub format: Vec<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MaxZone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionFamily {
    R1zero,
    R0zero,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polar and dimensionless parameters, symmetry, auxeticity and region of a ply.
    AnalyzePly { material: PathBuf },

    /// Homogenized laminate and its auxeticity.
    AnalyzeLaminate {
        material: PathBuf,
        /// Angle list in degrees, `angleply:<deg>`, `quasiiso` or `xi:(a,b,c,d)`.
        #[arg(long, allow_hyphen_values = true)]
        stack: String,
    },

    /// Stacking parameter maximizing the auxetic zone.
    Optimize {
        material: PathBuf,
        #[arg(long, value_enum, default_value = "max-zone")]
        objective: Objective,
    },

    /// Existence raster over fibre/matrix contrast, Poisson ratio and volume fraction.
    Scan {
        #[arg(value_parser = parse_family)]
        family: ScanFamily,
        #[arg(long, default_value_t = GridSpec::default().e_max)]
        e_max: f64,
        #[arg(long, default_value_t = GridSpec::default().e_points)]
        e_points: usize,
        #[arg(long, default_value_t = GridSpec::default().nu_points)]
        nu_points: usize,
        #[arg(long, default_value_t = GridSpec::default().vf_points)]
        vf_points: usize,
        #[arg(long, default_value_t = GridSpec::default().nu_m)]
        nu_m: f64,
    },

    /// Region of a dimensionless point: `tau rho` (r1zero) or `tau sigma` (r0zero).
    Region {
        #[arg(value_enum)]
        family: RegionFamily,
        #[arg(allow_negative_numbers = true)]
        tau: f64,
        #[arg(allow_negative_numbers = true)]
        second: f64,
    },
}

fn parse_family(s: &str) -> Result<ScanFamily, String> {
    s.parse::<ScanFamily>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
