use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use convexlab::Error;

mod args;
mod commands;
mod manifest;
mod report;

use args::*;

/// Numerical experiments on distance sets of symmetric convex bodies.
#[derive(Parser, Debug)]
#[command(name = "convexlab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a body and report its radii, volume and boundary mesh.
    Body(BodyArgs),
    /// Gauge and dual gauge of points.
    Gauge(GaugeArgs),
    /// Distance set of a finite point set and its gaps.
    Distset(DistsetArgs),
    /// Gaps of length at least ε in a distance set.
    Gaps(GapsArgs),
    /// Fourier transform of a measure along rays.
    Ftscan(FtscanArgs),
    /// Projection of a measure onto a line: atoms and binned density.
    Project(ProjectArgs),
    /// Wiener average of |μ̂(tη)|² over [−T, T].
    Wiener(WienerArgs),
    /// Directional decay envelope of a cap piece of the surface measure.
    Decay(DecayArgs),
    /// Build a cap measure on the circle and estimate its goodness.
    Goodness(GoodnessArgs),
    /// Wiener lower bound on the goodness of a measure on a polytope.
    Audit(AuditArgs),
    /// Lacunary search for a scale with positive correlation.
    Bourgain(BourgainArgs),
    /// Zeros of the transform of the indicator along e₁.
    Zeros(ZerosArgs),
    /// Orthogonality residual and dual-distance gaps of a candidate spectrum.
    Spectrum(SpectrumArgs),
    /// Run a command described by a JSON manifest.
    Run {
        #[arg(long)]
        manifest: PathBuf,
    },
}

pub fn exit_status(e: &Error) -> u8 {
    match e {
        Error::InvalidBody(_)
        | Error::InvalidInput(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Csv(_) => 2,
        Error::HypothesisViolation(_) => 3,
        Error::NumericBudget(_) => 4,
        Error::AsymmetricMeasure(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Command::Run { manifest } => match manifest::load(&manifest) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(exit_status(&e));
            }
        },
        other => other,
    };
    match commands::execute(command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}
