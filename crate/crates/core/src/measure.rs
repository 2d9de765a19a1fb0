//! Finite measures, their Fourier transforms, and projections onto lines
//!
//! The transform convention is `μ̂(ξ) = ∫ e^{−2πi⟨x,ξ⟩} dμ(x)` throughout.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid_input, Error, Result};
use crate::sphere::{dot, geodesic_distance, norm, normalized, DirectionGrid};

/// Tolerance on `|n ∓ η|` for a surface node to project to an atom.
pub const FLAT_NORMAL_TOL: f64 = 1e-9;
/// Default histogram resolution for projected densities.
pub const DEFAULT_BINS: usize = 512;

/// A finite real-weighted measure `Σ w_j δ_{x_j}` on `ℝ^d`.
///
/// Measures obtained from a boundary mesh keep the node normals: they stand
/// for a surface measure, so only nodes on flat pieces orthogonal to a
/// direction produce atoms when projected onto it. Measures without normals
/// are genuinely discrete.
#[derive(Clone, Debug)]
pub struct AtomicMeasure {
    dim: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
    normals: Option<Vec<f64>>,
    support_radius: f64,
}

impl AtomicMeasure {
    pub fn new(dim: usize, points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        Self::build(dim, points, weights, None)
    }

    pub fn with_normals(
        dim: usize,
        points: Vec<f64>,
        weights: Vec<f64>,
        normals: Vec<f64>,
    ) -> Result<Self> {
        Self::build(dim, points, weights, Some(normals))
    }

    fn build(
        dim: usize,
        points: Vec<f64>,
        weights: Vec<f64>,
        normals: Option<Vec<f64>>,
    ) -> Result<Self> {
        if dim == 0 || points.len() != dim * weights.len() {
            return Err(invalid_input(
                "measure points and weights have inconsistent lengths",
            ));
        }
        if normals.as_ref().is_some_and(|n| n.len() != points.len()) {
            return Err(invalid_input(
                "measure normals and points have inconsistent lengths",
            ));
        }
        if points.iter().chain(&weights).any(|v| !v.is_finite()) {
            return Err(invalid_input("measure contains non-finite values"));
        }
        let support_radius = points.chunks(dim).map(norm).fold(0.0, f64::max);
        Ok(Self {
            dim,
            points,
            weights,
            normals,
            support_radius,
        })
    }

    /// Unit point mass at `x`.
    pub fn dirac(x: &[f64]) -> Self {
        Self::new(x.len(), x.to_vec(), vec![1.0]).expect("finite point")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn normal(&self, i: usize) -> Option<&[f64]> {
        self.normals
            .as_ref()
            .map(|n| &n[i * self.dim..(i + 1) * self.dim])
    }

    pub fn has_normals(&self) -> bool {
        self.normals.is_some()
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Total variation `Σ |w_j|`.
    pub fn variation(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    /// Lipschitz constant of `ξ ↦ μ̂(ξ)`: `2π · Σ|w_j| · max|x_j|`.
    pub fn lipschitz(&self) -> f64 {
        2.0 * PI * self.variation() * self.support_radius
    }

    pub fn scale_weights(&mut self, c: f64) {
        self.weights.iter_mut().for_each(|w| *w *= c);
    }

    /// Sum of two measures on the same space.
    pub fn concat(parts: &[AtomicMeasure]) -> Result<Self> {
        let dim = parts
            .first()
            .map(|p| p.dim)
            .ok_or_else(|| invalid_input("no measures to combine"))?;
        if parts.iter().any(|p| p.dim != dim) {
            return Err(invalid_input(
                "cannot combine measures of different dimension",
            ));
        }
        let keep_normals = parts.iter().all(|p| p.normals.is_some());
        let mut points = Vec::new();
        let mut weights = Vec::new();
        let mut normals = Vec::new();
        for p in parts {
            points.extend_from_slice(&p.points);
            weights.extend_from_slice(&p.weights);
            if keep_normals {
                normals.extend_from_slice(p.normals.as_ref().unwrap());
            }
        }
        Self::build(dim, points, weights, keep_normals.then_some(normals))
    }

    /// `(μ + μ(−·))/2`, whose transform is `Re μ̂`.
    pub fn symmetrized(&self) -> Self {
        let mut points = self.points.clone();
        points.extend(self.points.iter().map(|x| -x));
        let mut weights: Vec<f64> = self.weights.iter().map(|w| 0.5 * w).collect();
        weights.extend(self.weights.iter().map(|w| 0.5 * w));
        let normals = self.normals.as_ref().map(|n| {
            let mut out = n.clone();
            out.extend(n.iter().map(|x| -x));
            out
        });
        Self::build(self.dim, points, weights, normals).expect("finite")
    }

    /// Whether `μ̂` is real up to `tol · Σ|w|` on a fixed probe set.
    ///
    /// A real transform is equivalent to `μ = μ(−·)`; probing the transform
    /// sidesteps matching atoms under floating-point noise.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let probes = [0.37, 1.13, 2.71, 5.3, 11.9];
        let scale = self.variation().max(f64::MIN_POSITIVE);
        for (k, &r) in probes.iter().enumerate() {
            let xi: Vec<f64> = (0..self.dim)
                .map(|i| r * ((k + 1) as f64 * (i as f64 + 0.7)).cos())
                .collect();
            if ft_measure(self, &xi).im.abs() > tol * scale {
                return false;
            }
        }
        true
    }
}

/// `μ̂(ξ) = Σ_j w_j e^{−2πi⟨x_j, ξ⟩}`.
pub fn ft_measure(mu: &AtomicMeasure, xi: &[f64]) -> Complex64 {
    let d = mu.dim;
    let mut re = 0.0;
    let mut im = 0.0;
    for (x, w) in mu.points.chunks_exact(d).zip(&mu.weights) {
        let (s, c) = (-2.0 * PI * dot(x, xi)).sin_cos();
        re += w * c;
        im += w * s;
    }
    Complex64::new(re, im)
}

/// Exact pushforward of `μ` under `x ↦ ⟨x, η⟩`.
pub fn pushforward(mu: &AtomicMeasure, eta: &[f64]) -> AtomicMeasure {
    let c: Vec<f64> = mu
        .points
        .chunks_exact(mu.dim)
        .map(|x| dot(x, eta))
        .collect();
    AtomicMeasure::new(1, c, mu.weights.clone()).expect("finite")
}

/// A sample of `μ̂` at `ξ = t·η_k`.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub t: f64,
    pub eta_index: usize,
    pub value: Complex64,
}

/// Sampled values of a transform together with the certified Lipschitz
/// bound of the measure that produced them.
#[derive(Clone, Debug)]
pub struct FourierScan {
    pub rows: Vec<ScanRow>,
    pub lipschitz: f64,
}

impl FourierScan {
    /// Evaluates `μ̂(t η)` for every `t` in `ts` and every direction.
    pub fn along(mu: &AtomicMeasure, ts: &[f64], directions: &[Vec<f64>]) -> Self {
        let mut rows = Vec::with_capacity(ts.len() * directions.len());
        for &t in ts {
            for (k, eta) in directions.iter().enumerate() {
                let xi: Vec<f64> = eta.iter().map(|e| t * e).collect();
                rows.push(ScanRow {
                    t,
                    eta_index: k,
                    value: ft_measure(mu, &xi),
                });
            }
        }
        Self {
            rows,
            lipschitz: mu.lipschitz(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().map(|r| r.value.norm()).fold(0.0, f64::max)
    }
}

/// A measure on the line: atoms plus a histogram for the diffuse part.
#[derive(Clone, Debug, PartialEq)]
pub struct LineMeasure {
    /// `(location, mass)` sorted by location.
    pub atoms: Vec<(f64, f64)>,
    /// Bin edges, strictly increasing; `len = masses.len() + 1` (or empty).
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
}

impl LineMeasure {
    pub fn atom_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn density_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.atom_mass() + self.density_mass()
    }

    /// `Σ_i |c_i|²` over atoms.
    pub fn atom_energy(&self) -> f64 {
        self.atoms.iter().map(|a| a.1 * a.1).sum()
    }

    /// Transform with atoms exact and each bin a uniform density.
    pub fn ft(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, m) in &self.atoms {
            acc += m * Complex64::from_polar(1.0, -2.0 * PI * t * c);
        }
        for (k, &m) in self.masses.iter().enumerate() {
            let (a, b) = (self.edges[k], self.edges[k + 1]);
            let mid = 0.5 * (a + b);
            let shrink = crate::special::sinc(PI * t * (b - a));
            acc += m * shrink * Complex64::from_polar(1.0, -2.0 * PI * t * mid);
        }
        acc
    }
}

/// Projection measure `μ^η(A) = μ(Aη + η^⊥)` split into atoms and a
/// `bins`-bin histogram.
///
/// Nodes whose normal is within [`FLAT_NORMAL_TOL`] of `±η` (flat pieces
/// orthogonal to `η`), and all nodes of measures without normals, are
/// atoms; atoms closer than `1e-12·max(1,|c|)` are merged. The remaining mass
/// is deposited linearly onto the bin centres, which preserves it exactly.
pub fn project_measure(mu: &AtomicMeasure, eta: &[f64], bins: usize) -> Result<LineMeasure> {
    check_direction(mu.dim, eta)?;
    let eta = normalized(eta);
    let mut atoms = Vec::new();
    let mut diffuse = Vec::new();
    for i in 0..mu.len() {
        let c = dot(mu.point(i), &eta);
        let w = mu.weights[i];
        let flat = match mu.normal(i) {
            None => true,
            Some(n) => {
                let plus = n
                    .iter()
                    .zip(&eta)
                    .map(|(a, b)| (a - b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let minus = n
                    .iter()
                    .zip(&eta)
                    .map(|(a, b)| (a + b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                plus <= FLAT_NORMAL_TOL || minus <= FLAT_NORMAL_TOL
            }
        };
        if flat {
            atoms.push((c, w));
        } else {
            diffuse.push((c, w));
        }
    }
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (c, w) in atoms {
        match merged.last_mut() {
            Some(last) if (c - last.0).abs() <= 1e-12 * c.abs().max(1.0) => last.1 += w,
            _ => merged.push((c, w)),
        }
    }
    let (edges, masses) = if diffuse.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let lo = diffuse.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let hi = diffuse
            .iter()
            .map(|p| p.0)
            .fold(f64::NEG_INFINITY, f64::max);
        histogram(&diffuse, lo, hi, bins.max(1))
    };
    Ok(LineMeasure {
        atoms: merged,
        edges,
        masses,
    })
}

fn check_direction(dim: usize, eta: &[f64]) -> Result<()> {
    if eta.len() != dim {
        return Err(invalid_input(format!(
            "direction has {} coordinates, expected {dim}",
            eta.len()
        )));
    }
    if ((norm(eta)) - 1.0).abs() > 1e-9 {
        return Err(invalid_input("direction must be a unit vector"));
    }
    Ok(())
}

/// Linear (cloud-in-cell) deposit of weighted points onto `bins` equal bins
/// spanning `[lo, hi]`.
fn histogram(points: &[(f64, f64)], lo: f64, hi: f64, bins: usize) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = if hi - lo <= 1e-12 * lo.abs().max(1.0) {
        (lo - 0.5e-6, hi + 0.5e-6)
    } else {
        (lo, hi)
    };
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|k| lo + k as f64 * width).collect();
    let mut masses = vec![0.0; bins];
    for &(c, w) in points {
        let s = (c - lo) / width - 0.5;
        if s <= 0.0 {
            masses[0] += w;
        } else if s >= (bins - 1) as f64 {
            masses[bins - 1] += w;
        } else {
            let k = s.floor() as usize;
            let frac = s - k as f64;
            masses[k] += w * (1.0 - frac);
            masses[k + 1] += w * frac;
        }
    }
    (edges, masses)
}

/// Wiener time average `(1/2T) ∫_{−T}^{T} |μ̂(tη)|² dt`.
///
/// Evaluated on the projected measure through `μ̂(tη) = (μ^η)^(t)`, with the
/// trapezoid rule on at least `max(samples, 40·T·support_radius)` intervals.
/// As `T → ∞` the average tends to the sum of squared atom masses of `μ^η`.
pub fn wiener_atom_mass(
    mu: &AtomicMeasure,
    eta: &[f64],
    horizon: f64,
    samples: usize,
) -> Result<f64> {
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(invalid_input("Wiener horizon T must be positive"));
    }
    if samples == 0 {
        return Err(invalid_input(
            "Wiener quadrature needs a positive sample count",
        ));
    }
    check_direction(mu.dim, eta)?;
    let line = pushforward(mu, &normalized(eta));
    // identical locations contribute coherently; merge them first
    let mut pts: Vec<(f64, f64)> = line
        .points
        .iter()
        .copied()
        .zip(line.weights.iter().copied())
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for (c, w) in pts {
        match merged.last_mut() {
            Some(last) if last.0 == c => last.1 += w,
            _ => merged.push((c, w)),
        }
    }
    let required = (40.0 * horizon * line.support_radius).ceil() as usize;
    let n = samples.max(required).max(2);
    let dt = 2.0 * horizon / n as f64;
    let mut values = vec![Complex64::new(0.0, 0.0); n + 1];
    const RESEED: usize = 64;
    for &(c, w) in &merged {
        let step = Complex64::from_polar(1.0, -2.0 * PI * dt * c);
        let mut k = 0;
        while k <= n {
            let mut z = Complex64::from_polar(w, -2.0 * PI * (-horizon + k as f64 * dt) * c);
            let stop = (k + RESEED).min(n + 1);
            for v in &mut values[k..stop] {
                *v += z;
                z *= step;
            }
            k = stop;
        }
    }
    let mut integral = 0.0;
    for (k, v) in values.iter().enumerate() {
        let f = v.norm_sqr();
        integral += if k == 0 || k == n { 0.5 * f } else { f };
    }
    Ok(integral * dt / (2.0 * horizon))
}

/// One row of a decay table: the sup of `|σ̂_D(tη)|` over admissible `η`.
#[derive(Clone, Debug)]
pub struct DecayRow {
    pub t: f64,
    pub sup: f64,
    pub argmax: usize,
    /// Lipschitz-certified additive error of `sup` from the angular sampling.
    pub cert_err: f64,
}

#[derive(Clone, Debug)]
pub struct DecayTable {
    pub rows: Vec<DecayRow>,
    /// Sampled admissible directions (indexed by `eta_index` in `scan`).
    pub directions: Vec<Vec<f64>>,
    pub scan: FourierScan,
}

/// Directional decay scan of `σ̂_D` over `{η : dist(η, ±Θ) ≥ δ}`.
///
/// Directions come from a uniform grid with covering radius at most
/// `spacing` (`δ/4` when `None`).
pub fn decay_scan(
    piece: &AtomicMeasure,
    theta: &[Vec<f64>],
    delta: f64,
    t_grid: &[f64],
    spacing: Option<f64>,
) -> Result<DecayTable> {
    if !(delta > 0.0) {
        return Err(invalid_input("decay scan needs δ > 0"));
    }
    let spacing = spacing.unwrap_or(delta / 4.0).min(delta / 4.0);
    let grid = DirectionGrid::with_spacing(piece.dim, spacing, false);
    let excluded: Vec<Vec<f64>> = theta
        .iter()
        .flat_map(|t| {
            let t = normalized(t);
            let neg: Vec<f64> = t.iter().map(|x| -x).collect();
            [t, neg]
        })
        .collect();
    let directions: Vec<Vec<f64>> = grid
        .directions
        .into_iter()
        .filter(|eta| excluded.iter().all(|t| geodesic_distance(eta, t) >= delta))
        .collect();
    if directions.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no sampled direction lies at distance ≥ {delta} from Θ"
        )));
    }
    let scan = FourierScan::along(piece, t_grid, &directions);
    let per_t = directions.len();
    let rows = t_grid
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let block = &scan.rows[i * per_t..(i + 1) * per_t];
            let (argmax, sup) = block
                .iter()
                .map(|r| r.value.norm())
                .enumerate()
                .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
            DecayRow {
                t,
                sup,
                argmax,
                cert_err: scan.lipschitz * t.abs() * grid.covering,
            }
        })
        .collect();
    Ok(DecayTable {
        rows,
        directions,
        scan,
    })
}

/// `max_η ‖σ_D^η − σ_P^η‖_{L¹}` with both projections binned on the same
/// `bins` bins spanning the union of their supports.
pub fn polytopal_projection_distance(
    smooth: &AtomicMeasure,
    polytopal: &AtomicMeasure,
    etas: &[Vec<f64>],
    bins: usize,
) -> Result<f64> {
    if smooth.dim != polytopal.dim {
        return Err(invalid_input("measures live in different dimensions"));
    }
    if etas.is_empty() {
        return Err(invalid_input("no projection directions supplied"));
    }
    let mut worst: f64 = 0.0;
    for eta in etas {
        check_direction(smooth.dim, eta)?;
        let a = pushforward(smooth, eta);
        let b = pushforward(polytopal, eta);
        let pa: Vec<(f64, f64)> = a
            .points
            .iter()
            .copied()
            .zip(a.weights.iter().copied())
            .collect();
        let pb: Vec<(f64, f64)> = b
            .points
            .iter()
            .copied()
            .zip(b.weights.iter().copied())
            .collect();
        let lo = pa
            .iter()
            .chain(&pb)
            .map(|p| p.0)
            .fold(f64::INFINITY, f64::min);
        let hi = pa
            .iter()
            .chain(&pb)
            .map(|p| p.0)
            .fold(f64::NEG_INFINITY, f64::max);
        let (_, ma) = histogram(&pa, lo, hi, bins.max(1));
        let (_, mb) = histogram(&pb, lo, hi, bins.max(1));
        let l1: f64 = ma.iter().zip(&mb).map(|(x, y)| (x - y).abs()).sum();
        worst = worst.max(l1);
    }
    Ok(worst)
}
