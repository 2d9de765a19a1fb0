use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use serde::Serialize;

/// A comma-separated vector such as `1,0` or `-0.5,2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl FromStr for Vector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("`{c}` is not a number"))
            })
            .collect::<Result<Vec<f64>, _>>()
            .map(Vector)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct OutArgs {
    /// Directory for the CSV tables and run.json; without it the main table
    /// goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A measure read from a file, or the normalized surface measure of a body.
#[derive(Args, Debug, Serialize)]
pub struct MeasureSource {
    /// Measure document (JSON).
    #[arg(long, conflicts_with = "body", required_unless_present = "body")]
    pub measure: Option<PathBuf>,
    /// Body whose normalized surface measure is used.
    #[arg(long)]
    pub body: Option<PathBuf>,
    /// Boundary mesh resolution for --body.
    #[arg(long, default_value_t = 1024)]
    pub resolution: usize,
}

/// A point file (CSV, one point per row) or a lattice `spacing·Z^d ∩ [−extent, extent]^d`.
#[derive(Args, Debug, Serialize)]
pub struct PointSource {
    #[arg(long, conflicts_with = "lattice", required_unless_present = "lattice")]
    pub points: Option<PathBuf>,
    /// `Z2`, `Z3`, ...
    #[arg(long)]
    pub lattice: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub spacing: f64,
    #[arg(long, default_value_t = 10.0)]
    pub extent: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct BodyArgs {
    #[arg(long)]
    pub body: PathBuf,
    /// Boundary mesh resolution.
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct GaugeArgs {
    #[arg(long)]
    pub body: PathBuf,
    /// Point file (CSV, one point per row).
    #[arg(long, conflicts_with = "point", required_unless_present = "point")]
    pub points: Option<PathBuf>,
    /// A single point; may be repeated.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Vec<Vector>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct DistsetArgs {
    #[arg(long)]
    pub body: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointSource,
    /// Largest distance kept.
    #[arg(long, default_value_t = f64::INFINITY)]
    pub tmax: f64,
    /// Measure distances with the gauge of the dual body.
    #[arg(long)]
    pub dual: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct GapsArgs {
    #[arg(long)]
    pub body: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointSource,
    /// Minimum gap length.
    #[arg(long)]
    pub eps: f64,
    /// Only gaps starting at or after this distance.
    #[arg(long, default_value_t = 0.0)]
    pub t0: f64,
    #[arg(long, default_value_t = f64::INFINITY)]
    pub tmax: f64,
    #[arg(long)]
    pub dual: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct FtscanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: MeasureSource,
    /// Direction of a ray; may be repeated.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "directions",
        required_unless_present = "directions"
    )]
    pub eta: Vec<Vector>,
    /// Use this many equally spaced directions of the upper half circle.
    #[arg(long)]
    pub directions: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    pub tmin: f64,
    #[arg(long)]
    pub tmax: f64,
    /// Number of intervals between tmin and tmax.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ProjectArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: MeasureSource,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Vector,
    #[arg(long, default_value_t = convexlab::measure::DEFAULT_BINS)]
    pub bins: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct WienerArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub source: MeasureSource,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Vector,
    /// Half-length T of the averaging window.
    #[arg(long, default_value_t = 200.0)]
    pub horizon: f64,
    /// Minimum number of trapezoid samples.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct DecayArgs {
    #[arg(long)]
    pub body: PathBuf,
    #[arg(long, default_value_t = 4096)]
    pub resolution: usize,
    /// Centre of the cap of normals that selects the piece.
    #[arg(long, allow_hyphen_values = true)]
    pub center: Vector,
    /// Geodesic radius of the cap.
    #[arg(long)]
    pub rcap: f64,
    /// Directions closer than δ to ± a normal of the piece are skipped.
    #[arg(long)]
    pub delta: f64,
    /// Scan radii.
    #[arg(long, value_delimiter = ',', required = true)]
    pub t: Vec<f64>,
    /// Direction grid spacing (at most δ/4).
    #[arg(long)]
    pub spacing: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct GoodnessArgs {
    #[arg(long)]
    pub body: PathBuf,
    /// Number of caps.
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long)]
    pub rcap: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 16384)]
    pub resolution: usize,
    /// Evaluate the window at this cutoff instead of searching for a stable one.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct AuditArgs {
    /// A polytope.
    #[arg(long)]
    pub body: PathBuf,
    /// Measure on the boundary; defaults to the normalized surface measure.
    #[arg(long)]
    pub measure: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    #[arg(long, default_value_t = 200.0)]
    pub horizon: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0.02)]
    pub tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct BourgainArgs {
    /// Body whose normalized surface measure is σ, after scaling the body
    /// into the unit ball.
    #[arg(long)]
    pub body: PathBuf,
    /// σ from a measure document instead of the body's surface measure.
    #[arg(long)]
    pub measure: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    /// Set document (JSON); defaults to seeded blobs of measure ε·|B₁|.
    #[arg(long)]
    pub set: Option<PathBuf>,
    #[arg(long, default_value_t = 0.3)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cells per axis of the seeded set; 256 in the plane, 64 in space.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub delta: f64,
    /// Goodness cutoff R; defaults to 1/δ.
    #[arg(long)]
    pub cutoff: Option<f64>,
    /// Number of scales t_j = ratio^j.
    #[arg(long, default_value_t = 12)]
    pub shells: usize,
    #[arg(long, default_value_t = 0.5)]
    pub ratio: f64,
    /// Measured goodness of σ, checked against η(|A|).
    #[arg(long)]
    pub goodness: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ZerosArgs {
    #[arg(long)]
    pub body: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub from: f64,
    #[arg(long, default_value_t = 10.0)]
    pub to: f64,
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    /// Quadrature nodes for bodies without a closed-form transform.
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    /// Number of trailing spacings in the summary.
    #[arg(long, default_value_t = 10)]
    pub tail: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub body: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub points: PointSource,
    /// Sparsification side R.
    #[arg(long)]
    pub side: f64,
    #[arg(long, default_value_t = f64::INFINITY)]
    pub tmax: f64,
    /// Shortest gap reported.
    #[arg(long = "min-gap")]
    pub min_gap: f64,
    #[arg(long, default_value_t = 64)]
    pub resolution: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}
