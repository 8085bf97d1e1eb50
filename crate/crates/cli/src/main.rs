//! `shiftriesz`: Riesz constants, nod functions and their verification from
//! the command line.

mod commands;
mod input;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shiftriesz::Family;

use crate::output::Format;

/// Exit status other than success, with the message for stderr.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Mismatch(String),
    Io(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 2,
            Failure::Io(_) => 3,
            Failure::Input(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Mismatch(m) | Failure::Io(m) | Failure::Input(m) => m,
        }
    }
}

impl From<shiftriesz::Error> for Failure {
    fn from(e: shiftriesz::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "shiftriesz", version, about = "Riesz constants and nod functions of Gaussian and Lorentz shift systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Gauss,
    Lorentz,
    Both,
}

impl FamilyArg {
    pub fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::Gauss => vec![Family::Gauss],
            FamilyArg::Lorentz => vec![Family::Lorentz],
            FamilyArg::Both => vec![Family::Gauss, Family::Lorentz],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    /// `steps + 1` equally spaced points from `start` to `stop`.
    pub fn points(&self) -> Vec<f64> {
        let h = (self.stop - self.start) / self.steps as f64;
        (0..=self.steps)
            .map(|i| if i == self.steps { self.stop } else { self.start + h * i as f64 })
            .collect()
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, steps] = parts[..] else {
        return Err(format!("expected start:stop:steps, got {s:?}"));
    };
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("{x:?} is not a finite number"))
    };
    let steps: usize = steps.trim().parse().map_err(|_| format!("steps {steps:?} is not a positive integer"))?;
    if steps == 0 {
        return Err("steps must be at least 1".into());
    }
    Ok(Grid {
        start: num(start)?,
        stop: num(stop)?,
        steps,
    })
}

/// A nonempty list of widths.
#[derive(Debug, Clone, PartialEq)]
pub struct Sigmas(pub Vec<f64>);

fn parse_sigmas(s: &str) -> Result<Sigmas, String> {
    let sigmas = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| format!("σ {x:?} is not a positive number"))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    Ok(Sigmas(sigmas))
}

fn parse_kmax(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("kmax {s:?} is not a positive integer")),
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite() && *v > 0.0)
        .ok_or_else(|| format!("tolerance {s:?} is not a positive number"))
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format [default: csv, json for verify]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub family: FamilyArg,
    /// Comma-separated widths
    #[arg(long, value_parser = parse_sigmas, default_value = "1")]
    pub sigma: Sigmas,
}

#[derive(Debug, Args)]
pub struct CoefficientArgs {
    /// Coefficients d_k are computed for |k| <= kmax
    #[arg(long, value_parser = parse_kmax, default_value = "40")]
    pub kmax: usize,
    /// Gaussian series tail tolerance, or Lorentz quadrature tolerance
    #[arg(long, value_parser = parse_tol)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Riesz bounds of the generator system, or of the nodal system with --nodal
    Riesz {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        nodal: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Coefficients d_k of the nod function
    NodCoeffs {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        coefficients: CoefficientArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Nod function on a grid
    Eval {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        coefficients: CoefficientArgs,
        /// start:stop:steps, giving steps + 1 points
        #[arg(long, value_parser = parse_grid, default_value = "-3:3:12", allow_hyphen_values = true)]
        grid: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cardinal interpolant of integer samples on a grid
    Interpolate {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        coefficients: CoefficientArgs,
        #[arg(long, value_parser = parse_grid, default_value = "-3:3:12", allow_hyphen_values = true)]
        grid: Grid,
        /// CSV with columns n,f
        #[arg(long)]
        samples: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every cross-check and write a report; exits 2 if any fails
    Verify {
        /// Reference table CSV replacing the built-in published table
        #[arg(long)]
        reference: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute the table of Riesz constants and compare with the reference
    Table2 {
        #[arg(long, value_parser = parse_sigmas)]
        sigma: Option<Sigmas>,
        #[arg(long)]
        reference: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Squared L2 distance between the Lorentz nod function and sinc
    SincDistance {
        #[arg(long, value_parser = parse_sigmas, default_value = "0.5,1,2,5")]
        sigma: Sigmas,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Riesz { system, nodal, output } => commands::riesz(&system, nodal, &output),
        Command::NodCoeffs {
            system,
            coefficients,
            output,
        } => commands::nod_coeffs(&system, &coefficients, &output),
        Command::Eval {
            system,
            coefficients,
            grid,
            output,
        } => commands::eval(&system, &coefficients, &grid, &output),
        Command::Interpolate {
            system,
            coefficients,
            grid,
            samples,
            output,
        } => commands::interpolate(&system, &coefficients, &grid, &samples, &output),
        Command::Verify { reference, output } => commands::verify(reference.as_deref(), &output),
        Command::Table2 {
            sigma,
            reference,
            output,
        } => commands::table2(sigma.as_ref().map(|s| s.0.as_slice()), reference.as_deref(), &output),
        Command::SincDistance { sigma, output } => commands::sinc_distance(&sigma.0, &output),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("shiftriesz: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
