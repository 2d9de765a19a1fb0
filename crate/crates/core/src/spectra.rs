//! Transforms of indicator functions `χ̂_K(ξ) = ∫_K e^{−2πi⟨x,ξ⟩} dx`,
//! their radial zeros, and orthogonality residuals of candidate spectra.

use std::f64::consts::PI;

use crate::body::{ConvexBody, Shape};
use crate::distance::{dual_distance_set, gap_scan, sparsify, GapReport, PointSet};
use crate::error::{invalid_input, Result};
use crate::special::{bessel_j, gauss_legendre, unit_ball_volume};

/// `χ̂` of the unit ball of `ℝ^d` at radius `r`.
fn unit_ball_profile(dim: usize, r: f64) -> Option<f64> {
    let z = 2.0 * PI * r.abs();
    if z < 1.0 {
        // ω_d Σ_k (−z²/4)^k / (k! (d/2 + 1)_k)
        let nu1 = dim as f64 / 2.0 + 1.0;
        let (mut term, mut sum) = (1.0, 1.0);
        for k in 1..30 {
            term *= -z * z / 4.0 / (k as f64 * (nu1 + k as f64 - 1.0));
            sum += term;
        }
        return Some(unit_ball_volume(dim) * sum);
    }
    let r = r.abs();
    match dim {
        1 => Some(z.sin() / (PI * r)),
        2 => Some(bessel_j(1, z) / r),
        3 => Some((z.sin() - z * z.cos()) / (2.0 * PI * PI * r * r * r)),
        d if d % 2 == 0 => Some(bessel_j((d / 2) as u32, z) / r.powi((d / 2) as i32)),
        _ => None,
    }
}

/// How `χ̂_K` is evaluated.
#[derive(Clone, Debug)]
enum Route {
    /// `Π sin(2π a_i ξ_i) / (π ξ_i)`.
    Box(Vec<f64>),
    /// `det A · χ̂_B(Aξ)` with `A = diag(semi_axes)`.
    Ellipsoid(Vec<f64>),
    /// Chords `[a, b]` along the first axis over a transverse quadrature.
    Chords(Vec<Chord>),
}

#[derive(Clone, Debug)]
struct Chord {
    transverse: Vec<f64>,
    weight: f64,
    lo: f64,
    hi: f64,
}

/// Evaluator for `χ̂_K`, real since `K = −K`.
///
/// Boxes and ellipsoids use closed forms. Other bodies integrate exactly
/// along chords parallel to `e₁` and use Gauss–Legendre quadrature with
/// `resolution` nodes per transverse axis (per panel between vertex
/// heights for polygons).
#[derive(Clone, Debug)]
pub struct ChiHat {
    dim: usize,
    route: Route,
}

impl ChiHat {
    pub fn new(body: &ConvexBody, resolution: usize) -> Result<Self> {
        let dim = body.dim();
        let route = match body.shape() {
            Shape::Polytope(p) => match p.box_half_widths(dim) {
                Some(w) => Route::Box(w),
                None => Route::Chords(chords(body, resolution)?),
            },
            Shape::Ellipsoid { semi_axes } if unit_ball_profile(dim, 2.0).is_some() => {
                Route::Ellipsoid(semi_axes.clone())
            }
            _ => Route::Chords(chords(body, resolution)?),
        };
        Ok(Self { dim, route })
    }

    /// Whether a closed form is used.
    pub fn is_closed_form(&self) -> bool {
        !matches!(self.route, Route::Chords(_))
    }

    pub fn eval(&self, xi: &[f64]) -> f64 {
        assert_eq!(xi.len(), self.dim, "frequency has the wrong dimension");
        match &self.route {
            Route::Box(w) => xi
                .iter()
                .zip(w)
                .map(|(&x, &a)| {
                    if x == 0.0 {
                        2.0 * a
                    } else {
                        (2.0 * PI * a * x).sin() / (PI * x)
                    }
                })
                .product(),
            Route::Ellipsoid(axes) => {
                let r = xi
                    .iter()
                    .zip(axes)
                    .map(|(x, a)| (x * a) * (x * a))
                    .sum::<f64>()
                    .sqrt();
                let det: f64 = axes.iter().product();
                det * unit_ball_profile(self.dim, r).expect("checked at construction")
            }
            Route::Chords(chords) => {
                let mut acc = 0.0;
                for c in chords {
                    let shift: f64 = c.transverse.iter().zip(&xi[1..]).map(|(z, x)| z * x).sum();
                    let v = if xi[0] == 0.0 {
                        (c.hi - c.lo) * (2.0 * PI * shift).cos()
                    } else {
                        ((2.0 * PI * (c.hi * xi[0] + shift)).sin()
                            - (2.0 * PI * (c.lo * xi[0] + shift)).sin())
                            / (2.0 * PI * xi[0])
                    };
                    acc += c.weight * v;
                }
                acc
            }
        }
    }
}

/// `χ̂_K(ξ)`.
pub fn chi_hat(body: &ConvexBody, xi: &[f64], resolution: usize) -> Result<f64> {
    if xi.len() != body.dim() {
        return Err(invalid_input("frequency has the wrong dimension"));
    }
    Ok(ChiHat::new(body, resolution)?.eval(xi))
}

/// Quadrature of the transverse coordinates and the chord over each node.
fn chords(body: &ConvexBody, resolution: usize) -> Result<Vec<Chord>> {
    let d = body.dim();
    if resolution < 2 {
        return Err(invalid_input(
            "chord quadrature needs at least 2 nodes per axis",
        ));
    }
    if d == 1 {
        let h = body.dual_gauge(&[1.0]);
        return Ok(vec![Chord {
            transverse: Vec::new(),
            weight: 1.0,
            lo: -h,
            hi: h,
        }]);
    }
    let extent = |k: usize| {
        let mut e = vec![0.0; d];
        e[k] = 1.0;
        body.dual_gauge(&e)
    };
    let (nodes, weights) = gauss_legendre(resolution);
    // one-dimensional rules per transverse axis
    let mut rules: Vec<Vec<(f64, f64)>> = Vec::with_capacity(d - 1);
    for k in 1..d {
        let h = extent(k);
        let rule = match (body.as_polytope(), d) {
            (Some(p), 2) => {
                // panels between vertex heights: chords are affine on each
                let mut breaks: Vec<f64> = p.vertices().iter().map(|v| v[k]).collect();
                breaks.push(-h);
                breaks.push(h);
                breaks.sort_by(f64::total_cmp);
                breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
                let mut rule = Vec::new();
                for w in breaks.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    for (x, wt) in nodes.iter().zip(&weights) {
                        rule.push((0.5 * (a + b) + 0.5 * (b - a) * x, 0.5 * (b - a) * wt));
                    }
                }
                rule
            }
            (None, 2) => nodes
                .iter()
                .zip(&weights)
                // z = h sin θ absorbs the square-root edge of the chord length
                .map(|(x, w)| {
                    let th = 0.5 * PI * x;
                    (h * th.sin(), h * th.cos() * 0.5 * PI * w)
                })
                .collect(),
            _ => nodes
                .iter()
                .zip(&weights)
                .map(|(x, w)| (h * x, h * w))
                .collect(),
        };
        rules.push(rule);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; d - 1];
    let r1 = body.radii().1;
    loop {
        let transverse: Vec<f64> = (0..d - 1).map(|k| rules[k][idx[k]].0).collect();
        let weight: f64 = (0..d - 1).map(|k| rules[k][idx[k]].1).product();
        if let Some((lo, hi)) = chord(body, &transverse, r1) {
            out.push(Chord {
                transverse,
                weight,
                lo,
                hi,
            });
        }
        let mut k = 0;
        loop {
            if k == d - 1 {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < rules[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `{t : (t, z) ∈ K}`.
fn chord(body: &ConvexBody, z: &[f64], r1: f64) -> Option<(f64, f64)> {
    if let Some(p) = body.as_polytope() {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for (n, &h) in p.normals().iter().zip(p.offsets()) {
            let rest = h - n[1..].iter().zip(z).map(|(a, b)| a * b).sum::<f64>();
            if n[0].abs() < 1e-15 {
                if rest < 0.0 {
                    return None;
                }
            } else if n[0] > 0.0 {
                hi = hi.min(rest / n[0]);
            } else {
                lo = lo.max(rest / n[0]);
            }
        }
        return (hi > lo).then_some((lo, hi));
    }
    let point = |t: f64| {
        let mut x = Vec::with_capacity(z.len() + 1);
        x.push(t);
        x.extend_from_slice(z);
        body.gauge(&x)
    };
    // golden-section search for the minimum of the convex gauge on the line
    let (mut a, mut b) = (-r1, r1);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (point(c), point(d));
    for _ in 0..90 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = point(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = point(d);
        }
    }
    let mid = 0.5 * (a + b);
    if point(mid) >= 1.0 {
        return None;
    }
    let solve = |mut inside: f64, mut outside: f64| {
        for _ in 0..80 {
            let m = 0.5 * (inside + outside);
            if point(m) <= 1.0 {
                inside = m;
            } else {
                outside = m;
            }
        }
        0.5 * (inside + outside)
    };
    Some((
        solve(mid, -r1 * 1.01 - 1e-12),
        solve(mid, r1 * 1.01 + 1e-12),
    ))
}

/// Sign-change certified zeros of `r ↦ χ̂_K(r u)` in a window.
#[derive(Clone, Debug)]
pub struct ZeroLedger {
    pub direction: Vec<f64>,
    pub zeros: Vec<f64>,
    /// Scan interval on which the profile changes sign, one per zero.
    pub brackets: Vec<(f64, f64)>,
    pub spacings: Vec<f64>,
    /// Whether the profile is exactly radial (balls and intervals).
    pub exact_radial: bool,
}

impl ZeroLedger {
    /// Mean of the last `count` spacings.
    pub fn tail_spacing(&self, count: usize) -> Option<f64> {
        let n = self.spacings.len();
        if n == 0 {
            return None;
        }
        let tail = &self.spacings[n.saturating_sub(count)..];
        Some(tail.iter().sum::<f64>() / tail.len() as f64)
    }

    /// Largest relative deviation of the last `count` spacings from their mean.
    pub fn tail_deviation(&self, count: usize) -> Option<f64> {
        let mean = self.tail_spacing(count)?;
        let n = self.spacings.len();
        Some(
            self.spacings[n.saturating_sub(count)..]
                .iter()
                .map(|s| (s - mean).abs() / mean)
                .fold(0.0, f64::max),
        )
    }

    /// Mean of `2π r_k mod π` over the last `count` zeros, in `[0, π)`.
    ///
    /// Averaged on the circle so that offsets near `0 ≡ π` do not cancel.
    pub fn phase_offset(&self, count: usize) -> Option<f64> {
        let n = self.zeros.len();
        if n == 0 {
            return None;
        }
        let (mut s, mut c) = (0.0, 0.0);
        for r in &self.zeros[n.saturating_sub(count)..] {
            let a = 2.0 * (2.0 * PI * r).rem_euclid(PI);
            s += a.sin();
            c += a.cos();
        }
        Some((0.5 * s.atan2(c)).rem_euclid(PI))
    }
}

/// Zeros of the profile along `e₁` in `[a, b]`, bracketed on `steps`
/// uniform intervals and refined by bisection to `1e-10`.
pub fn radial_zero_scan(
    body: &ConvexBody,
    window: (f64, f64),
    steps: usize,
    resolution: usize,
) -> Result<ZeroLedger> {
    let (a, b) = window;
    if !(b > a) || steps == 0 {
        return Err(invalid_input(
            "zero scan needs a < b and a positive step count",
        ));
    }
    let chi = ChiHat::new(body, resolution)?;
    let d = body.dim();
    let mut direction = vec![0.0; d];
    direction[0] = 1.0;
    let profile = |r: f64| {
        let xi: Vec<f64> = direction.iter().map(|u| r * u).collect();
        chi.eval(&xi)
    };
    let exact_radial = d == 1
        || matches!(body.shape(), Shape::Ellipsoid { semi_axes } if semi_axes.iter().all(|x| (x - semi_axes[0]).abs() < 1e-15));
    let mut zeros = Vec::new();
    let mut brackets = Vec::new();
    let h = (b - a) / steps as f64;
    let mut x0 = a;
    let mut f0 = profile(x0);
    for k in 1..=steps {
        let x1 = a + k as f64 * h;
        let f1 = profile(x1);
        if f0 == 0.0 {
            if zeros.last() != Some(&x0) {
                zeros.push(x0);
                brackets.push((x0, x0));
            }
        } else if f0 * f1 < 0.0 {
            let (mut lo, mut hi, flo) = (x0, x1, f0);
            while hi - lo > 1e-10 {
                let m = 0.5 * (lo + hi);
                let fm = profile(m);
                if fm == 0.0 {
                    lo = m;
                    hi = m;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            zeros.push(0.5 * (lo + hi));
            brackets.push((x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 && zeros.last() != Some(&x0) {
        zeros.push(x0);
        brackets.push((x0, x0));
    }
    let spacings = zeros.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(ZeroLedger {
        direction,
        zeros,
        brackets,
        spacings,
        exact_radial,
    })
}

/// `max_{λ ≠ μ} |χ̂_K(λ − μ)|`; zero when `|Λ| < 2`.
pub fn orthogonality_residual(set: &PointSet, body: &ConvexBody, resolution: usize) -> Result<f64> {
    if !set.is_empty() && set.dim() != body.dim() {
        return Err(invalid_input(
            "point set and body have different dimensions",
        ));
    }
    let chi = ChiHat::new(body, resolution)?;
    let pts = set.points();
    let mut worst: f64 = 0.0;
    let mut diff = vec![0.0; set.dim()];
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            for k in 0..diff.len() {
                diff[k] = x[k] - y[k];
            }
            worst = worst.max(chi.eval(&diff).abs());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub residual: f64,
    pub sparse: PointSet,
    pub report: GapReport,
    pub gaps: Vec<(f64, f64)>,
}

/// Sparsifies `Λ` at side `R`, takes distances under the gauge of `K°`
/// up to `t_max`, and keeps gaps of length at least `min_gap`.
pub fn spectrum_gap_pipeline(
    set: &PointSet,
    body: &ConvexBody,
    side: f64,
    t_max: f64,
    min_gap: f64,
    resolution: usize,
) -> Result<PipelineReport> {
    let residual = orthogonality_residual(set, body, resolution)?;
    let sparse = sparsify(set, side)?;
    let report = dual_distance_set(&sparse, body, t_max)?;
    let gaps = gap_scan(&report, min_gap, 0.0)?;
    Ok(PipelineReport {
        residual,
        sparse,
        report,
        gaps,
    })
}
