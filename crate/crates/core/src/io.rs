//! File formats: JSON documents for bodies, measures and grid sets, and
//! CSV for point sets and result tables.
//!
//! Floats in CSV are written with 17 significant digits (`{:.16e}`), which
//! round-trips every `f64` exactly.

use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::body::{BodySpec, ConvexBody};
use crate::bourgain::GridIndicator;
use crate::distance::PointSet;
use crate::error::{invalid_input, Result};
use crate::measure::AtomicMeasure;

/// A `{:.16e}` rendering of `x`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn read_body(path: impl AsRef<Path>) -> Result<ConvexBody> {
    let spec: BodySpec = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    ConvexBody::from_spec(&spec)
}

pub fn parse_body(json: &str) -> Result<ConvexBody> {
    ConvexBody::from_spec(&serde_json::from_str(json)?)
}

pub fn write_body(path: impl AsRef<Path>, body: &ConvexBody) -> Result<()> {
    let mut f = File::create(path)?;
    serde_json::to_writer_pretty(&mut f, &body.to_spec())?;
    writeln!(f)?;
    Ok(())
}

/// JSON form of an [`AtomicMeasure`].
///
/// ```json
/// {"type": "measure", "dim": 2, "points": [[1, 0], [-1, 0]], "weights": [0.5, 0.5]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "measure")]
pub struct MeasureDoc {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<Vec<f64>>>,
}

impl MeasureDoc {
    pub fn from_measure(mu: &AtomicMeasure) -> Self {
        Self {
            dim: mu.dim(),
            points: (0..mu.len()).map(|i| mu.point(i).to_vec()).collect(),
            weights: mu.weights().to_vec(),
            normals: mu.has_normals().then(|| {
                (0..mu.len())
                    .map(|i| mu.normal(i).unwrap().to_vec())
                    .collect()
            }),
        }
    }

    pub fn to_measure(&self) -> Result<AtomicMeasure> {
        if self.points.iter().any(|p| p.len() != self.dim) {
            return Err(invalid_input(
                "measure point with the wrong number of coordinates",
            ));
        }
        let points = self.points.concat();
        match &self.normals {
            Some(n) => {
                AtomicMeasure::with_normals(self.dim, points, self.weights.clone(), n.concat())
            }
            None => AtomicMeasure::new(self.dim, points, self.weights.clone()),
        }
    }
}

pub fn read_measure(path: impl AsRef<Path>) -> Result<AtomicMeasure> {
    let doc: MeasureDoc = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    doc.to_measure()
}

pub fn write_measure(path: impl AsRef<Path>, mu: &AtomicMeasure) -> Result<()> {
    let mut f = File::create(path)?;
    serde_json::to_writer(&mut f, &MeasureDoc::from_measure(mu))?;
    writeln!(f)?;
    Ok(())
}

/// JSON description of a set `A ⊆ B₁(0)` on a grid of `[−1, 1]^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SetSpec {
    /// Explicit cell multi-indices.
    Cells {
        dim: usize,
        cells_per_axis: usize,
        cells: Vec<Vec<usize>>,
    },
    /// Union of balls, clipped to `B₁(0)`.
    Balls {
        dim: usize,
        cells_per_axis: usize,
        centers: Vec<Vec<f64>>,
        radius: f64,
    },
    /// Seeded random blobs covering `fraction · |B₁|`.
    Blobs {
        dim: usize,
        cells_per_axis: usize,
        fraction: f64,
        seed: u64,
    },
}

impl SetSpec {
    pub fn build(&self) -> Result<GridIndicator> {
        match self {
            SetSpec::Cells {
                dim,
                cells_per_axis,
                cells,
            } => GridIndicator::from_cells(*dim, *cells_per_axis, cells),
            SetSpec::Balls {
                dim,
                cells_per_axis,
                centers,
                radius,
            } => {
                let r2 = radius * radius;
                GridIndicator::from_fn(*dim, *cells_per_axis, |x| {
                    x.iter().map(|v| v * v).sum::<f64>() <= 1.0
                        && centers.iter().any(|c| {
                            c.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() <= r2
                        })
                })
            }
            SetSpec::Blobs {
                dim,
                cells_per_axis,
                fraction,
                seed,
            } => GridIndicator::seeded_blobs(*dim, *cells_per_axis, *fraction, *seed),
        }
    }
}

pub fn read_set(path: impl AsRef<Path>) -> Result<GridIndicator> {
    let spec: SetSpec = serde_json::from_reader(BufReader::new(File::open(path)?))?;
    spec.build()
}

/// Points, one per row, no header.
pub fn read_points<R: Read>(reader: R) -> Result<PointSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points: Vec<Vec<f64>> = Vec::new();
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let p = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| invalid_input(format!("row {}: `{s}` is not a number", row + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        points.push(p);
    }
    let dim = points.first().map_or(1, Vec::len);
    PointSet::new(dim, points)
}

pub fn read_points_file(path: impl AsRef<Path>) -> Result<PointSet> {
    read_points(File::open(path)?)
}

pub fn write_points<W: Write>(writer: W, set: &PointSet) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    for p in set.points() {
        w.write_record(p.iter().map(|x| fmt_f64(*x)))?;
    }
    w.flush()?;
    Ok(())
}

/// A CSV table with a header row.
pub fn write_table<W: Write>(writer: W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header)?;
    for r in rows {
        if r.len() != header.len() {
            return Err(invalid_input("table row does not match the header"));
        }
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}
