//! 0-symmetric convex bodies and their gauge and support functionals.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_body, Result};
use crate::sphere::{dot, norm};

/// Tolerance for matching a facet with its antipodal partner.
pub const PAIRING_TOL: f64 = 1e-9;

/// On-disk description of a body.
///
/// ```json
/// {"dim": 2, "type": "hpolytope", "normals": [[1,0],[-1,0],[0,1],[0,-1]], "offsets": [1,1,1,1]}
/// {"dim": 2, "type": "ellipsoid", "semi_axes": [2, 1]}
/// {"dim": 2, "type": "radial", "exponent": 4, "semi_axes": [1, 1]}
/// {"dim": 2, "type": "radial", "radii": [1.0, 0.95, 0.9, 0.95, 1.0, 0.95, 0.9, 0.95]}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BodySpec {
    #[serde(rename = "hpolytope")]
    HPolytope {
        dim: usize,
        normals: Vec<Vec<f64>>,
        offsets: Vec<f64>,
    },
    Ellipsoid {
        dim: usize,
        semi_axes: Vec<f64>,
    },
    Radial {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exponent: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        semi_axes: Option<Vec<f64>>,
        /// Radial function sampled at the angles `2πk/n`, `d = 2` only.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radii: Option<Vec<f64>>,
    },
}

/// A symmetric polytope `{x : ⟨x, θ_i⟩ ≤ h_i}` with unit normals.
#[derive(Clone, Debug)]
pub struct HPolytope {
    normals: Vec<Vec<f64>>,
    offsets: Vec<f64>,
    vertices: Vec<Vec<f64>>,
    /// Vertex indices lying on each facet (empty for redundant inequalities).
    facet_vertices: Vec<Vec<usize>>,
    /// Facet index of `-θ_i` for each `i`.
    partner: Vec<usize>,
}

impl HPolytope {
    pub fn new(dim: usize, normals: Vec<Vec<f64>>, offsets: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid_body("dimension must be at least 1"));
        }
        if normals.len() != offsets.len() || normals.is_empty() {
            return Err(invalid_body(
                "normals and offsets must be non-empty and of equal length",
            ));
        }
        let mut unit_normals = Vec::with_capacity(normals.len());
        let mut scaled = Vec::with_capacity(offsets.len());
        for (i, (n, &h)) in normals.iter().zip(&offsets).enumerate() {
            if n.len() != dim {
                return Err(invalid_body(format!(
                    "facet {i}: normal has {} coordinates, expected {dim}",
                    n.len()
                )));
            }
            let len = norm(n);
            if !(len > 0.0) || !len.is_finite() {
                return Err(invalid_body(format!(
                    "facet {i}: zero or non-finite normal"
                )));
            }
            if !(h > 0.0) || !h.is_finite() {
                return Err(invalid_body(format!(
                    "facet {i}: offset must be positive, got {h}"
                )));
            }
            unit_normals.push(n.iter().map(|x| x / len).collect::<Vec<_>>());
            scaled.push(h / len);
        }
        let mut partner = vec![usize::MAX; unit_normals.len()];
        for i in 0..unit_normals.len() {
            let found = (0..unit_normals.len()).find(|&j| {
                j != i
                    && unit_normals[i]
                        .iter()
                        .zip(&unit_normals[j])
                        .all(|(a, b)| (a + b).abs() <= PAIRING_TOL)
                    && (scaled[i] - scaled[j]).abs() <= PAIRING_TOL * scaled[i].max(1.0)
            });
            match found {
                Some(j) => partner[i] = j,
                None => {
                    return Err(invalid_body(format!(
                        "facet {i} has no antipodal partner (-θ, h)"
                    )))
                }
            }
        }
        if rank(&unit_normals, dim) < dim {
            return Err(invalid_body(
                "facet normals do not span the space; body is unbounded",
            ));
        }
        let (vertices, facet_vertices) = enumerate_vertices(dim, &unit_normals, &scaled);
        if vertices.len() < 2 {
            return Err(invalid_body("polytope has fewer than two vertices"));
        }
        Ok(Self {
            normals: unit_normals,
            offsets: scaled,
            vertices,
            facet_vertices,
            partner,
        })
    }

    /// Seeded random symmetric polytope with `pairs` facet pairs and offsets
    /// drawn from `[0.5, 1.5]`.
    pub fn random<R: Rng>(dim: usize, pairs: usize, rng: &mut R) -> Result<Self> {
        let mut normals = Vec::with_capacity(2 * pairs);
        let mut offsets = Vec::with_capacity(2 * pairs);
        for _ in 0..pairs {
            let v: Vec<f64> = loop {
                let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let n = norm(&v);
                if n > 0.1 && n <= 1.0 {
                    break v.iter().map(|x| x / n).collect();
                }
            };
            let h = rng.gen_range(0.5..1.5);
            normals.push(v.iter().map(|x| -x).collect());
            normals.push(v);
            offsets.push(h);
            offsets.push(h);
        }
        Self::new(dim, normals, offsets)
    }

    /// Regular `2k`-gon `{|⟨x, θ_i⟩| ≤ h}` with normals at angles `π i / k + phase`.
    pub fn regular_polygon(facets: usize, offset: f64, phase: f64) -> Result<Self> {
        if facets < 4 || facets % 2 != 0 {
            return Err(invalid_body(
                "a symmetric polygon needs an even number (≥ 4) of facets",
            ));
        }
        let (normals, offsets) = (0..facets)
            .map(|i| {
                let a = phase + 2.0 * PI * i as f64 / facets as f64;
                (vec![a.cos(), a.sin()], offset)
            })
            .unzip();
        Self::new(2, normals, offsets)
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facet_vertices(&self, facet: usize) -> &[usize] {
        &self.facet_vertices[facet]
    }

    pub fn partner(&self, facet: usize) -> usize {
        self.partner[facet]
    }

    /// One representative facet per antipodal pair; its length is the
    /// number `N` of non-parallel face directions.
    pub fn direction_representatives(&self) -> Vec<usize> {
        (0..self.normals.len())
            .filter(|&i| i < self.partner[i])
            .collect()
    }

    fn scaled(&self, c: f64) -> Self {
        Self {
            normals: self.normals.clone(),
            offsets: self.offsets.iter().map(|h| h * c).collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x * c).collect())
                .collect(),
            facet_vertices: self.facet_vertices.clone(),
            partner: self.partner.clone(),
        }
    }

    /// Half-widths if the polytope is an axis-aligned box.
    pub fn box_half_widths(&self, dim: usize) -> Option<Vec<f64>> {
        let mut widths = vec![f64::NAN; dim];
        for (n, &h) in self.normals.iter().zip(&self.offsets) {
            let axis = n
                .iter()
                .position(|x| (x.abs() - 1.0).abs() <= PAIRING_TOL)?;
            if n.iter()
                .enumerate()
                .any(|(k, x)| k != axis && x.abs() > PAIRING_TOL)
            {
                return None;
            }
            if widths[axis].is_nan() {
                widths[axis] = h;
            } else if (widths[axis] - h).abs() > PAIRING_TOL {
                // redundant parallel facets; keep the binding one
                widths[axis] = widths[axis].min(h);
            }
        }
        widths.iter().all(|w| w.is_finite()).then_some(widths)
    }
}

/// Shapes other than polytopes are described through their radial function
/// `r(u)`, the distance from the origin to `∂K` in direction `u`.
#[derive(Clone, Debug)]
pub enum Shape {
    Polytope(HPolytope),
    Ellipsoid {
        semi_axes: Vec<f64>,
    },
    /// `{x : Σ |x_i / a_i|^p ≤ 1}` with `p > 1`.
    Superellipsoid {
        exponent: f64,
        semi_axes: Vec<f64>,
    },
    /// Planar radial function sampled at `2πk/n`, linearly interpolated in angle.
    Tabulated {
        radii: Vec<f64>,
    },
}

/// A validated 0-symmetric convex body.
#[derive(Clone, Debug)]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
    /// Factor by which the described body has been scaled.
    scale: f64,
}

impl ConvexBody {
    pub fn from_spec(spec: &BodySpec) -> Result<Self> {
        match spec {
            BodySpec::HPolytope {
                dim,
                normals,
                offsets,
            } => Ok(Self::polytope(HPolytope::new(
                *dim,
                normals.clone(),
                offsets.clone(),
            )?)),
            BodySpec::Ellipsoid { dim, semi_axes } => Self::ellipsoid(*dim, semi_axes.clone()),
            BodySpec::Radial {
                dim,
                exponent,
                semi_axes,
                radii,
            } => match (exponent, radii) {
                (Some(p), None) => {
                    let axes = semi_axes.clone().unwrap_or_else(|| vec![1.0; *dim]);
                    Self::superellipsoid(*dim, *p, axes)
                }
                (None, Some(r)) => {
                    if *dim != 2 {
                        return Err(invalid_body("tabulated radial bodies are planar"));
                    }
                    Self::tabulated(r.clone())
                }
                _ => Err(invalid_body(
                    "radial body needs exactly one of `exponent` or `radii`",
                )),
            },
        }
    }

    pub fn to_spec(&self) -> BodySpec {
        match &self.shape {
            Shape::Polytope(p) => BodySpec::HPolytope {
                dim: self.dim,
                normals: p.normals.clone(),
                offsets: p.offsets.clone(),
            },
            Shape::Ellipsoid { semi_axes } => BodySpec::Ellipsoid {
                dim: self.dim,
                semi_axes: semi_axes.clone(),
            },
            Shape::Superellipsoid {
                exponent,
                semi_axes,
            } => BodySpec::Radial {
                dim: self.dim,
                exponent: Some(*exponent),
                semi_axes: Some(semi_axes.clone()),
                radii: None,
            },
            Shape::Tabulated { radii } => BodySpec::Radial {
                dim: self.dim,
                exponent: None,
                semi_axes: None,
                radii: Some(radii.clone()),
            },
        }
    }

    pub fn polytope(p: HPolytope) -> Self {
        let dim = p.normals[0].len();
        Self {
            dim,
            shape: Shape::Polytope(p),
            scale: 1.0,
        }
    }

    pub fn ellipsoid(dim: usize, semi_axes: Vec<f64>) -> Result<Self> {
        check_axes(dim, &semi_axes)?;
        Ok(Self {
            dim,
            shape: Shape::Ellipsoid { semi_axes },
            scale: 1.0,
        })
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        Self::ellipsoid(dim, vec![radius; dim])
    }

    /// The cube `(-a, a)^d`.
    pub fn cube(dim: usize, half_width: f64) -> Result<Self> {
        let mut normals = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            let mut e = vec![0.0; dim];
            e[k] = 1.0;
            normals.push(e.clone());
            e[k] = -1.0;
            normals.push(e);
        }
        Ok(Self::polytope(HPolytope::new(
            dim,
            normals,
            vec![half_width; 2 * dim],
        )?))
    }

    pub fn superellipsoid(dim: usize, exponent: f64, semi_axes: Vec<f64>) -> Result<Self> {
        check_axes(dim, &semi_axes)?;
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(invalid_body(format!(
                "superellipsoid exponent must be finite and > 1, got {exponent}"
            )));
        }
        Ok(Self {
            dim,
            shape: Shape::Superellipsoid {
                exponent,
                semi_axes,
            },
            scale: 1.0,
        })
    }

    pub fn tabulated(radii: Vec<f64>) -> Result<Self> {
        let n = radii.len();
        if n < 8 || n % 2 != 0 {
            return Err(invalid_body(
                "tabulated radii need an even count of at least 8 samples",
            ));
        }
        if radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(invalid_body("tabulated radii must be positive"));
        }
        for k in 0..n / 2 {
            if (radii[k] - radii[k + n / 2]).abs() > 1e-12 * radii[k].max(1.0) {
                return Err(invalid_body(format!(
                    "radial samples {k} and {} are not symmetric",
                    k + n / 2
                )));
            }
        }
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / n as f64;
                [radii[k] * a.cos(), radii[k] * a.sin()]
            })
            .collect();
        for k in 0..n {
            let (a, b, c) = (pts[k], pts[(k + 1) % n], pts[(k + 2) % n]);
            let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
            if cross < -1e-12 {
                return Err(invalid_body(format!(
                    "radial samples are not convex near sample {}",
                    k + 1
                )));
            }
        }
        Ok(Self {
            dim: 2,
            shape: Shape::Tabulated { radii },
            scale: 1.0,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn as_polytope(&self) -> Option<&HPolytope> {
        match &self.shape {
            Shape::Polytope(p) => Some(p),
            _ => None,
        }
    }

    /// Minkowski functional `‖x‖_K = inf{t ≥ 0 : x ∈ tK}`.
    pub fn gauge(&self, x: &[f64]) -> f64 {
        match &self.shape {
            Shape::Polytope(p) => p
                .normals
                .iter()
                .zip(&p.offsets)
                .map(|(n, h)| dot(x, n) / h)
                .fold(0.0, f64::max),
            Shape::Ellipsoid { semi_axes } => x
                .iter()
                .zip(semi_axes)
                .map(|(x, a)| (x / a) * (x / a))
                .sum::<f64>()
                .sqrt(),
            Shape::Superellipsoid {
                exponent,
                semi_axes,
            } => {
                let scaled: Vec<f64> = x
                    .iter()
                    .zip(semi_axes)
                    .map(|(x, a)| (x / a).abs())
                    .collect();
                lp_norm(&scaled, *exponent)
            }
            Shape::Tabulated { radii } => {
                let r = norm(x);
                if r == 0.0 {
                    0.0
                } else {
                    r / tabulated_radius(radii, x[1].atan2(x[0]))
                }
            }
        }
    }

    /// Support function `h_K(ξ) = sup_{x ∈ K} ⟨x, ξ⟩`, the gauge of the dual body.
    pub fn dual_gauge(&self, xi: &[f64]) -> f64 {
        match &self.shape {
            Shape::Polytope(p) => p.vertices.iter().map(|v| dot(v, xi)).fold(0.0, f64::max),
            Shape::Ellipsoid { semi_axes } => xi
                .iter()
                .zip(semi_axes)
                .map(|(x, a)| (x * a) * (x * a))
                .sum::<f64>()
                .sqrt(),
            Shape::Superellipsoid {
                exponent,
                semi_axes,
            } => {
                let q = exponent / (exponent - 1.0);
                let scaled: Vec<f64> = xi
                    .iter()
                    .zip(semi_axes)
                    .map(|(x, a)| (x * a).abs())
                    .collect();
                lp_norm(&scaled, q)
            }
            Shape::Tabulated { radii } => {
                // Dense sampling of the interpolated boundary.
                let n = radii.len() * 64;
                (0..n)
                    .map(|k| {
                        let a = 2.0 * PI * k as f64 / n as f64;
                        tabulated_radius(radii, a) * (a.cos() * xi[0] + a.sin() * xi[1])
                    })
                    .fold(0.0, f64::max)
            }
        }
    }

    /// Boundary point `u / ‖u‖_K` in direction `u`.
    pub fn radial_point(&self, u: &[f64]) -> Vec<f64> {
        let g = self.gauge(u);
        u.iter().map(|x| x / g).collect()
    }

    /// Outward unit normal at a boundary point (any point of the ray works).
    pub fn outward_normal(&self, x: &[f64]) -> Vec<f64> {
        let n: Vec<f64> = match &self.shape {
            Shape::Polytope(p) => {
                let best = p
                    .normals
                    .iter()
                    .zip(&p.offsets)
                    .enumerate()
                    .map(|(i, (n, h))| (i, dot(x, n) / h))
                    .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
                    .0;
                p.normals[best].clone()
            }
            Shape::Ellipsoid { semi_axes } => {
                x.iter().zip(semi_axes).map(|(x, a)| x / (a * a)).collect()
            }
            Shape::Superellipsoid {
                exponent,
                semi_axes,
            } => {
                // ∇ of Σ|x_i/a_i|^p, after dividing out the largest term to avoid underflow
                let m = x
                    .iter()
                    .zip(semi_axes)
                    .map(|(x, a)| (x / a).abs())
                    .fold(0.0, f64::max);
                x.iter()
                    .zip(semi_axes)
                    .map(|(x, a)| (x / a / m).abs().powf(exponent - 1.0) * x.signum() / a)
                    .collect()
            }
            Shape::Tabulated { radii } => {
                let phi = x[1].atan2(x[0]);
                let (rho, drho) = tabulated_radius_and_slope(radii, phi);
                let (c, s) = (phi.cos(), phi.sin());
                let tangent = [drho * c - rho * s, drho * s + rho * c];
                vec![tangent[1], -tangent[0]]
            }
        };
        let len = norm(&n);
        n.iter().map(|v| v / len).collect()
    }

    /// Certified radii `r₀ ≤ r₁` with `B_{r₀} ⊆ K ⊆ B_{r₁}`.
    pub fn radii(&self) -> (f64, f64) {
        match &self.shape {
            Shape::Polytope(p) => {
                let r0 = p.offsets.iter().copied().fold(f64::INFINITY, f64::min);
                let r1 = p.vertices.iter().map(|v| norm(v)).fold(0.0, f64::max);
                (r0, r1)
            }
            Shape::Ellipsoid { semi_axes } => min_max(semi_axes),
            Shape::Superellipsoid {
                exponent,
                semi_axes,
            } => {
                let (lo, hi) = min_max(semi_axes);
                let d = self.dim as f64;
                let k = 0.5 - 1.0 / exponent;
                // ‖x‖₂ and ‖x‖_p differ by at most d^{|1/2 - 1/p|}
                if k >= 0.0 {
                    (lo, hi * d.powf(k))
                } else {
                    (lo * d.powf(k), hi)
                }
            }
            Shape::Tabulated { radii } => min_max(radii),
        }
    }

    /// `c·K`.
    pub fn scaled(&self, c: f64) -> Self {
        let shape = match &self.shape {
            Shape::Polytope(p) => Shape::Polytope(p.scaled(c)),
            Shape::Ellipsoid { semi_axes } => Shape::Ellipsoid {
                semi_axes: semi_axes.iter().map(|a| a * c).collect(),
            },
            Shape::Superellipsoid {
                exponent,
                semi_axes,
            } => Shape::Superellipsoid {
                exponent: *exponent,
                semi_axes: semi_axes.iter().map(|a| a * c).collect(),
            },
            Shape::Tabulated { radii } => Shape::Tabulated {
                radii: radii.iter().map(|r| r * c).collect(),
            },
        };
        Self {
            dim: self.dim,
            shape,
            scale: self.scale * c,
        }
    }

    /// Rescales so that `K ⊆ B₁(0)`; bodies already inside are unchanged.
    pub fn normalized_into_unit_ball(&self) -> Self {
        let (_, r1) = self.radii();
        if r1 <= 1.0 {
            self.clone()
        } else {
            self.scaled(1.0 / r1)
        }
    }

    /// Number of non-parallel facet directions, for polytopes.
    pub fn facet_directions(&self) -> Option<usize> {
        self.as_polytope()
            .map(|p| p.direction_representatives().len())
    }
}

/// Index of the facet of `p` that contains the boundary point `x`, if any.
pub fn facet_of(p: &HPolytope, x: &[f64], tol: f64) -> Option<usize> {
    p.normals
        .iter()
        .zip(&p.offsets)
        .position(|(n, h)| (dot(x, n) - h).abs() <= tol * h.max(1.0))
}

fn check_axes(dim: usize, axes: &[f64]) -> Result<()> {
    if dim == 0 || axes.len() != dim {
        return Err(invalid_body(format!(
            "expected {dim} semi-axes, got {}",
            axes.len()
        )));
    }
    if axes.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
        return Err(invalid_body("semi-axes must be positive and finite"));
    }
    Ok(())
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    })
}

fn lp_norm(v: &[f64], p: f64) -> f64 {
    let m = v.iter().copied().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    m * v.iter().map(|x| (x / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

fn tabulated_radius(radii: &[f64], phi: f64) -> f64 {
    tabulated_radius_and_slope(radii, phi).0
}

fn tabulated_radius_and_slope(radii: &[f64], phi: f64) -> (f64, f64) {
    let n = radii.len();
    let step = 2.0 * PI / n as f64;
    let s = phi.rem_euclid(2.0 * PI) / step;
    let k = (s.floor() as usize).min(n - 1);
    let frac = s - k as f64;
    let (a, b) = (radii[k], radii[(k + 1) % n]);
    (a + frac * (b - a), (b - a) / step)
}

fn rank(rows: &[Vec<f64>], dim: usize) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..dim {
        let pivot = (rank..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()));
        let Some(p) = pivot else { break };
        if m[p][col].abs() < 1e-10 {
            continue;
        }
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank {
                let f = m[r][col] / m[rank][col];
                for c in col..dim {
                    m[r][c] -= f * m[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `A x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

fn enumerate_vertices(
    dim: usize,
    normals: &[Vec<f64>],
    offsets: &[f64],
) -> (Vec<Vec<f64>>, Vec<Vec<usize>>) {
    let m = normals.len();
    let scale = offsets.iter().copied().fold(0.0, f64::max);
    let tol = 1e-9 * scale.max(1.0);
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let mut combo: Vec<usize> = (0..dim).collect();
    if dim <= m {
        loop {
            let a: Vec<Vec<f64>> = combo.iter().map(|&i| normals[i].clone()).collect();
            let b: Vec<f64> = combo.iter().map(|&i| offsets[i]).collect();
            if let Some(v) = solve(a, b) {
                let feasible = normals
                    .iter()
                    .zip(offsets)
                    .all(|(n, h)| dot(&v, n) <= h + tol);
                let fresh = vertices
                    .iter()
                    .all(|w| w.iter().zip(&v).any(|(a, b)| (a - b).abs() > tol));
                if feasible && fresh {
                    vertices.push(v);
                }
            }
            // next combination in lexicographic order
            let mut i = dim;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if combo[i] < m - dim + i {
                    combo[i] += 1;
                    for j in i + 1..dim {
                        combo[j] = combo[j - 1] + 1;
                    }
                    i = usize::MAX;
                    break;
                }
            }
            if i != usize::MAX {
                break;
            }
        }
    }
    let facet_vertices = normals
        .iter()
        .zip(offsets)
        .map(|(n, h)| {
            (0..vertices.len())
                .filter(|&k| (dot(&vertices[k], n) - h).abs() <= tol)
                .collect::<Vec<_>>()
        })
        .collect();
    (vertices, facet_vertices)
}
