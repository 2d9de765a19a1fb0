//! Shell-sup estimates of `|μ̂|`, cap-based good measures, and the polytope
//! lower-bound audit.

use std::f64::consts::{PI, SQRT_2};

use crate::body::{facet_of, ConvexBody};
use crate::error::{invalid_input, Error, Result};
use crate::measure::{ft_measure, wiener_atom_mass, AtomicMeasure};
use crate::mesh::{BoundaryMesh, CapFamily};
use crate::sphere::{geodesic_distance, DirectionGrid};

/// Sup of `|μ̂|` over one sampled sphere `|ξ| = radius`.
#[derive(Clone, Debug)]
pub struct ShellEstimate {
    pub radius: f64,
    pub sup: f64,
    /// `L · radius · covering`: the true sup is at most `sup + cert_err`.
    pub cert_err: f64,
    /// Frequency at which the sampled sup was attained.
    pub argmax: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct GoodnessReport {
    pub cutoff: f64,
    pub shells: Vec<ShellEstimate>,
    pub eps_hat: f64,
}

impl GoodnessReport {
    /// Largest certified error over the shells.
    pub fn max_cert_err(&self) -> f64 {
        self.shells.iter().map(|s| s.cert_err).fold(0.0, f64::max)
    }
}

/// Angular grid on one hemisphere (`|μ̂(−ξ)| = |μ̂(ξ)|` for real weights).
///
/// `resolution` counts directions over the half circle in 2-D and is the
/// icosahedral frequency in 3-D.
fn half_grid(dim: usize, resolution: usize) -> Result<DirectionGrid> {
    match dim {
        1 => Ok(DirectionGrid::with_spacing(1, 1.0, true)),
        2 => Ok(DirectionGrid::circle(resolution.max(1), true)),
        3 => Ok(DirectionGrid::icosphere(resolution.max(1), true)),
        _ => Err(invalid_input(format!(
            "angular grids are implemented for d ≤ 3, got d = {dim}"
        ))),
    }
}

/// Smallest angular resolution whose certified error at shell radius `rho`
/// is at most `target`.
pub fn resolution_for_error(mu: &AtomicMeasure, rho: f64, target: f64) -> usize {
    let spacing = target / (mu.lipschitz() * rho).max(f64::MIN_POSITIVE);
    match mu.dim() {
        2 => (PI / (2.0 * spacing)).ceil().min(1e8) as usize,
        // icosahedral edges: covering ≈ 1.1/freq
        _ => (1.1 / spacing).ceil().min(4096.0) as usize,
    }
    .max(1)
}

fn shell(mu: &AtomicMeasure, radius: f64, grid: &DirectionGrid) -> ShellEstimate {
    let (mut sup, mut argmax) = (-1.0, Vec::new());
    for eta in &grid.directions {
        let xi: Vec<f64> = eta.iter().map(|e| radius * e).collect();
        let v = ft_measure(mu, &xi).norm();
        if v > sup {
            sup = v;
            argmax = xi;
        }
    }
    ShellEstimate {
        radius,
        sup,
        cert_err: mu.lipschitz() * radius * grid.covering,
        argmax,
    }
}

/// Sampled sup of `|μ̂|` on each shell `|ξ| = ρ`, `ρ ∈ shells`, all `≥ R`.
pub fn goodness_profile(
    mu: &AtomicMeasure,
    cutoff: f64,
    shells: &[f64],
    angular_resolution: usize,
) -> Result<GoodnessReport> {
    if shells.is_empty() {
        return Err(invalid_input("goodness profile needs at least one shell"));
    }
    if !(cutoff > 0.0) {
        return Err(invalid_input("frequency cutoff R must be positive"));
    }
    if let Some(r) = shells.iter().find(|&&r| !(r >= cutoff)) {
        return Err(invalid_input(format!(
            "shell radius {r} is below the cutoff R = {cutoff}"
        )));
    }
    let grid = half_grid(mu.dim(), angular_resolution)?;
    let shells: Vec<ShellEstimate> = shells.iter().map(|&r| shell(mu, r, &grid)).collect();
    let eps_hat = shells.iter().map(|s| s.sup).fold(0.0, f64::max);
    Ok(GoodnessReport {
        cutoff,
        shells,
        eps_hat,
    })
}

/// Like [`goodness_profile`] but with the angular grid on each shell chosen
/// so its certified error is at most `cert_target`.
pub fn goodness_profile_certified(
    mu: &AtomicMeasure,
    cutoff: f64,
    shells: &[f64],
    cert_target: f64,
) -> Result<GoodnessReport> {
    if !(cert_target > 0.0) {
        return Err(invalid_input("certified error target must be positive"));
    }
    let mut out = Vec::with_capacity(shells.len());
    for &r in shells {
        let res = resolution_for_error(mu, r, cert_target);
        out.extend(goodness_profile(mu, cutoff, &[r], res)?.shells);
    }
    let eps_hat = out.iter().map(|s| s.sup).fold(0.0, f64::max);
    if out.is_empty() {
        return Err(invalid_input("goodness profile needs at least one shell"));
    }
    Ok(GoodnessReport {
        cutoff,
        shells: out,
        eps_hat,
    })
}

/// `μ = Σ μ_i` with each `μ_i` the surface measure on `D_i = n⁻¹(N_i)`
/// rescaled to mass `1/N`.
#[derive(Clone, Debug)]
pub struct GoodMeasure {
    pub measure: AtomicMeasure,
    pub pieces: Vec<AtomicMeasure>,
}

pub fn construct_good_measure(
    body: &ConvexBody,
    mesh: &BoundaryMesh,
    caps: &CapFamily,
) -> Result<GoodMeasure> {
    if mesh.dim() != body.dim() || caps.directions()[0].len() != body.dim() {
        return Err(invalid_input(
            "body, mesh and caps disagree on the dimension",
        ));
    }
    let n = caps.len();
    let mut pieces = Vec::with_capacity(n);
    for (i, theta) in caps.directions().iter().enumerate() {
        let piece = mesh.restrict(|j| geodesic_distance(mesh.normal(j), theta) < caps.r_cap());
        let mass = piece.total_mass();
        if !(mass > 0.0) {
            return Err(Error::HypothesisViolation(format!(
                "cap {i} around {theta:?} carries no surface mass; the direction is outside the support of the area measure"
            )));
        }
        let mut m = piece.to_measure();
        m.scale_weights(1.0 / (n as f64 * mass));
        pieces.push(m);
    }
    let measure = AtomicMeasure::concat(&pieces)?;
    Ok(GoodMeasure { measure, pieces })
}

/// Settings for the doubling search of a cutoff `R` with `ε̂(R) ≤ target`.
#[derive(Clone, Debug)]
pub struct StableSearch {
    pub start: f64,
    pub target: f64,
    pub cert_target: f64,
    pub max_doublings: u32,
}

impl StableSearch {
    /// Start at `10/r_cap`, aim for `1/N + δ`, certify sups to within `δ`.
    pub fn for_caps(caps: &CapFamily, delta: f64) -> Self {
        Self {
            start: 10.0 / caps.r_cap(),
            target: 1.0 / caps.len() as f64 + delta,
            cert_target: delta,
            max_doublings: 10,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StableGoodness {
    pub cutoff: f64,
    pub report: GoodnessReport,
    /// Whether the window at `2R` confirmed `ε̂(R)`; false when the budget ran out.
    pub stabilized: bool,
    pub doublings: u32,
}

/// Shells `R, 1.25R, 1.5R, 1.75R, 2R`.
pub fn window(cutoff: f64) -> Vec<f64> {
    (0..5).map(|k| cutoff * (1.0 + 0.25 * k as f64)).collect()
}

/// Doubles `R` until `ε̂(R) ≤ target` and the next window does not exceed it.
pub fn stabilized_goodness(mu: &AtomicMeasure, search: &StableSearch) -> Result<StableGoodness> {
    if !(search.start > 0.0) {
        return Err(invalid_input("search must start at a positive R"));
    }
    let mut cutoff = search.start;
    let mut current = goodness_profile_certified(mu, cutoff, &window(cutoff), search.cert_target)?;
    for k in 0..search.max_doublings {
        let next = goodness_profile_certified(
            mu,
            2.0 * cutoff,
            &window(2.0 * cutoff),
            search.cert_target,
        )?;
        if current.eps_hat <= search.target && next.eps_hat <= current.eps_hat.max(search.target) {
            return Ok(StableGoodness {
                cutoff,
                report: current,
                stabilized: true,
                doublings: k,
            });
        }
        cutoff *= 2.0;
        current = next;
    }
    Ok(StableGoodness {
        cutoff,
        report: current,
        stabilized: false,
        doublings: search.max_doublings,
    })
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Number of non-parallel facet directions.
    pub directions: usize,
    /// Representative facet of the heaviest antipodal facet pair.
    pub best_facet: usize,
    pub best_direction_mass: f64,
    pub wiener: f64,
    /// `1/(√2 N)`, scaled by the total mass of `μ`.
    pub lower_bound: f64,
    /// `sqrt(wiener) ≥ m/√2 − tolerance`.
    pub passed: bool,
}

/// Mass of `μ` on each antipodal facet pair, keyed by representative facet.
pub fn facet_pair_masses(
    body: &ConvexBody,
    mu: &AtomicMeasure,
    tol: f64,
) -> Result<Vec<(usize, f64)>> {
    let p = body
        .as_polytope()
        .ok_or_else(|| invalid_input("the polytope audit needs a polytope"))?;
    let reps = p.direction_representatives();
    let mut mass = vec![0.0; p.normals().len()];
    for i in 0..mu.len() {
        let x = mu.point(i);
        if (body.gauge(x) - 1.0).abs() > tol {
            return Err(invalid_input(format!(
                "atom {i} at {x:?} is not on the boundary of K"
            )));
        }
        let f = facet_of(p, x, tol)
            .ok_or_else(|| invalid_input(format!("atom {i} lies on no facet")))?;
        mass[f] += mu.weights()[i];
    }
    Ok(reps
        .into_iter()
        .map(|r| (r, mass[r] + mass[p.partner(r)]))
        .collect())
}

/// Wiener lower bound along the normal of the heaviest facet pair.
///
/// For a probability measure on `∂P` some pair of parallel facets carries
/// mass `m ≥ 1/N`; it projects to atoms of total mass `m`, so the Wiener
/// average is at least `m²/2`.
pub fn polytope_bound_audit(
    body: &ConvexBody,
    mu: &AtomicMeasure,
    horizon: f64,
    samples: usize,
    tolerance: f64,
) -> Result<AuditReport> {
    let boundary_tol = 1e-9;
    let pairs = facet_pair_masses(body, mu, boundary_tol)?;
    let (best_facet, best_direction_mass) =
        pairs
            .iter()
            .copied()
            .fold((pairs[0].0, f64::NEG_INFINITY), |a, b| {
                if b.1 > a.1 {
                    b
                } else {
                    a
                }
            });
    let normal = body.as_polytope().expect("checked").normals()[best_facet].clone();
    let wiener = wiener_atom_mass(mu, &normal, horizon, samples)?;
    let n = pairs.len();
    Ok(AuditReport {
        directions: n,
        best_facet,
        best_direction_mass,
        wiener,
        lower_bound: mu.total_mass() / (SQRT_2 * n as f64),
        passed: wiener.sqrt() >= best_direction_mass / SQRT_2 - tolerance,
    })
}
