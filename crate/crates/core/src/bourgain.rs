//! The correlation integral `I(t) = ∫∫ f(x) f(x + ty) dx dσ(y)` of a set
//! `A ⊆ B₁(0)` against a boundary measure, evaluated directly and through
//! `∫ |f̂(ξ)|² σ̂(tξ) dξ`, together with the three-band split of the latter
//! and the lacunary search for a scale `t_j` with `I(t_j) > 0`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;

use crate::error::{invalid_input, Error, Result};
use crate::measure::AtomicMeasure;
use crate::special::{sinc, unit_ball_volume};

/// Explicit constants of the positivity argument in dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BourgainConstants {
    pub dim: usize,
    /// Volume of the unit ball.
    pub omega: f64,
    /// `ω_d / (80·4^d π^d)`; also the slope of `η(ε) = θ ε`.
    pub theta: f64,
    /// `ω_d / (8·4^d π^d)`: lower bound factor for the low band.
    pub low_band: f64,
    /// `ω_d / (40·4^d π^d)`: final positivity factor.
    pub positivity: f64,
}

impl BourgainConstants {
    pub fn new(dim: usize) -> Self {
        let omega = unit_ball_volume(dim);
        let base = omega / (4.0 * PI).powi(dim as i32);
        Self {
            dim,
            omega,
            theta: base / 80.0,
            low_band: base / 8.0,
            positivity: base / 40.0,
        }
    }

    /// Goodness level `η(ε)` required of `σ`.
    pub fn eta(&self, eps: f64) -> f64 {
        self.theta * eps
    }

    /// `j₀ + 10 θ⁻¹ ε⁻¹ log(1/δ)`.
    pub fn j_bound(&self, j0: usize, eps: f64, delta: f64) -> f64 {
        j0 as f64 + 10.0 / (self.theta * eps) * (1.0 / delta).ln()
    }
}

/// Indicator of a union of grid cells of `[−1, 1]^d`.
///
/// Cell `i` (multi-index, first axis slowest) has centre
/// `−1 + (i + ½) h` with `h = 2 / cells_per_axis`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridIndicator {
    dim: usize,
    n: usize,
    mask: Vec<bool>,
}

impl GridIndicator {
    /// Marks the cells whose centre satisfies `inside`.
    pub fn from_fn(dim: usize, n: usize, inside: impl Fn(&[f64]) -> bool) -> Result<Self> {
        if dim == 0 || dim > 3 || n < 2 {
            return Err(invalid_input(
                "grids need 1 ≤ d ≤ 3 and at least 2 cells per axis",
            ));
        }
        let total = n.pow(dim as u32);
        let mut mask = vec![false; total];
        let mut x = vec![0.0; dim];
        let h = 2.0 / n as f64;
        for (flat, m) in mask.iter_mut().enumerate() {
            let mut r = flat;
            for k in (0..dim).rev() {
                x[k] = -1.0 + (r % n) as f64 * h + 0.5 * h;
                r /= n;
            }
            *m = inside(&x);
        }
        Self::from_mask(dim, n, mask)
    }

    pub fn from_mask(dim: usize, n: usize, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != n.pow(dim as u32) {
            return Err(invalid_input("mask length does not match the grid"));
        }
        let g = Self { dim, n, mask };
        for flat in 0..g.mask.len() {
            if g.mask[flat] && g.center(flat).iter().map(|x| x * x).sum::<f64>() > 1.0 {
                return Err(invalid_input(format!(
                    "cell {flat} has its centre outside B₁(0)"
                )));
            }
        }
        Ok(g)
    }

    /// Cells listed by multi-index.
    pub fn from_cells(dim: usize, n: usize, cells: &[Vec<usize>]) -> Result<Self> {
        let mut mask = vec![false; n.pow(dim as u32)];
        for c in cells {
            if c.len() != dim || c.iter().any(|&i| i >= n) {
                return Err(invalid_input(format!(
                    "cell {c:?} is outside the {n}^{dim} grid"
                )));
            }
            mask[c.iter().fold(0, |acc, &i| acc * n + i)] = true;
        }
        Self::from_mask(dim, n, mask)
    }

    /// Ball `B_r(c)` intersected with `B₁(0)`.
    pub fn ball(dim: usize, n: usize, center: &[f64], radius: f64) -> Result<Self> {
        Self::from_fn(dim, n, |x| {
            dist2(x, center) <= radius * radius && x.iter().map(|v| v * v).sum::<f64>() <= 1.0
        })
    }

    /// Seeded union of balls of radius 0.2 centred in `B_{0.8}(0)`, grown
    /// until `|A| ≥ fraction · ω_d`.
    pub fn seeded_blobs(dim: usize, n: usize, fraction: f64, seed: u64) -> Result<Self> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(invalid_input("blob fraction must lie in (0, 1]"));
        }
        let target = fraction * unit_ball_volume(dim);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut centers: Vec<Vec<f64>> = Vec::new();
        let radius = 0.2;
        let mut grid = Self::from_fn(dim, n, |_| false)?;
        for _ in 0..10_000 {
            let c: Vec<f64> = loop {
                let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-0.8..0.8)).collect();
                if c.iter().map(|v| v * v).sum::<f64>() <= 0.64 {
                    break c;
                }
            };
            for flat in 0..grid.mask.len() {
                if !grid.mask[flat] && dist2(&grid.center(flat), &c) <= radius * radius {
                    grid.mask[flat] = true;
                }
            }
            centers.push(c);
            if grid.measure() >= target {
                return Ok(grid);
            }
        }
        Err(Error::NumericBudget(
            "could not reach the requested measure with random blobs".into(),
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells_per_axis(&self) -> usize {
        self.n
    }

    pub fn cell_size(&self) -> f64 {
        2.0 / self.n as f64
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// `|A| = count · h^d`.
    pub fn measure(&self) -> f64 {
        self.count() as f64 * self.cell_size().powi(self.dim as i32)
    }

    pub fn center(&self, flat: usize) -> Vec<f64> {
        let h = self.cell_size();
        let mut x = vec![0.0; self.dim];
        let mut r = flat;
        for k in (0..self.dim).rev() {
            x[k] = -1.0 + ((r % self.n) as f64 + 0.5) * h;
            r /= self.n;
        }
        x
    }

    /// Multi-indices of the marked cells.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        (0..self.mask.len())
            .filter(|&f| self.mask[f])
            .map(|f| {
                let mut idx = vec![0; self.dim];
                let mut r = f;
                for k in (0..self.dim).rev() {
                    idx[k] = r % self.n;
                    r /= self.n;
                }
                idx
            })
            .collect()
    }

    fn value(&self, idx: &[i64]) -> f64 {
        let n = self.n as i64;
        let mut flat = 0usize;
        for &i in idx {
            if i < 0 || i >= n {
                return 0.0;
            }
            flat = flat * self.n + i as usize;
        }
        if self.mask[flat] {
            1.0
        } else {
            0.0
        }
    }

    /// Multilinear interpolation of the cell values at `x` (zero off-grid).
    pub fn interpolate(&self, x: &[f64]) -> f64 {
        let h = self.cell_size();
        let d = self.dim;
        let mut base = [0i64; 3];
        let mut frac = [0.0; 3];
        for k in 0..d {
            let s = (x[k] + 1.0) / h - 0.5;
            let f = s.floor();
            base[k] = f as i64;
            frac[k] = s - f;
        }
        let mut acc = 0.0;
        let mut idx = [0i64; 3];
        for corner in 0..(1usize << d) {
            let mut w = 1.0;
            for k in 0..d {
                let bit = (corner >> k) & 1;
                idx[k] = base[k] + bit as i64;
                w *= if bit == 1 { frac[k] } else { 1.0 - frac[k] };
            }
            if w > 0.0 {
                acc += w * self.value(&idx[..d]);
            }
        }
        acc
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `Σ_y w_y Σ_{x ∈ A} f(x + t y) h^d`, with `f` interpolated multilinearly.
pub fn direct_correlation(f: &GridIndicator, sigma: &AtomicMeasure, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(invalid_input("scale t must be positive"));
    }
    if sigma.dim() != f.dim {
        return Err(invalid_input(
            "set and measure live in different dimensions",
        ));
    }
    let cells: Vec<Vec<f64>> = (0..f.mask.len())
        .filter(|&i| f.mask[i])
        .map(|i| f.center(i))
        .collect();
    let vol = f.cell_size().powi(f.dim as i32);
    let mut y = vec![0.0; f.dim];
    let mut total = 0.0;
    for j in 0..sigma.len() {
        let w = sigma.weights()[j];
        let pt = sigma.point(j);
        let mut acc = 0.0;
        for c in &cells {
            for k in 0..f.dim {
                y[k] = c[k] + t * pt[k];
            }
            acc += f.interpolate(&y);
        }
        total += w * acc;
    }
    Ok((total * vol).max(0.0))
}

/// `|f̂|²` of a grid indicator sampled on the zero-padded frequency lattice.
///
/// With `m = 2n` bins per axis the lattice spacing is `Δξ = 1/(m h)` and
/// the weights `P_k = h^{2d} |F_k|² Δξ^d` sum to `|A|` exactly. The lattice
/// covers the Nyquist cube `|ξ_i| ≤ 1/(2h)`.
#[derive(Clone, Debug)]
pub struct PowerSpectrum {
    dim: usize,
    m: usize,
    spacing: f64,
    /// `P_k`, flat with the first axis slowest.
    power: Vec<f64>,
    measure: f64,
    /// `|A| − ∫_{cube} |f̂_h|²` for the cell-wise constant `f_h`.
    tail: f64,
}

impl PowerSpectrum {
    pub fn new(f: &GridIndicator) -> Self {
        let (d, n) = (f.dim, f.n);
        let m = 2 * n;
        let total = m.pow(d as u32);
        let mut data = vec![Complex64::new(0.0, 0.0); total];
        for flat in 0..f.mask.len() {
            if f.mask[flat] {
                let mut r = flat;
                let mut padded = 0;
                let mut stride = 1;
                for _ in 0..d {
                    padded += (r % n) * stride;
                    r /= n;
                    stride *= m;
                }
                data[padded] = Complex64::new(1.0, 0.0);
            }
        }
        fft_nd(&mut data, d, m);
        let h = f.cell_size();
        let spacing = 1.0 / (m as f64 * h);
        let scale = h.powi(2 * d as i32) * spacing.powi(d as i32);
        let mut power = vec![0.0; total];
        let mut smoothed = 0.0;
        for (flat, v) in data.iter().enumerate() {
            let p = v.norm_sqr() * scale;
            power[flat] = p;
            let mut r = flat;
            let mut damp = 1.0;
            for _ in 0..d {
                damp *= sinc(PI * h * signed(r % m, m) as f64 * spacing).powi(2);
                r /= m;
            }
            smoothed += p * damp;
        }
        let measure = f.measure();
        Self {
            dim: d,
            m,
            spacing,
            power,
            measure,
            tail: (measure - smoothed).max(0.0),
        }
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn bins_per_axis(&self) -> usize {
        self.m
    }

    pub fn total(&self) -> f64 {
        self.power.iter().sum()
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    /// `|f̂|²` mass of the cell-wise constant indicator outside the lattice.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Frequency of flat bin `k`.
    pub fn frequency(&self, flat: usize) -> Vec<f64> {
        let mut xi = vec![0.0; self.dim];
        let mut r = flat;
        for k in (0..self.dim).rev() {
            xi[k] = signed(r % self.m, self.m) as f64 * self.spacing;
            r /= self.m;
        }
        xi
    }

    /// `Re σ̂(tξ_k)` on every bin.
    ///
    /// The phase `e^{−2πi t⟨y, ξ⟩}` factors over the axes, so each atom
    /// costs one complex product per bin.
    pub fn sigma_field(&self, sigma: &AtomicMeasure, t: f64) -> Vec<f64> {
        let (d, m) = (self.dim, self.m);
        let mut field = vec![0.0; self.power.len()];
        let mut phases = vec![vec![Complex64::new(0.0, 0.0); m]; d];
        for j in 0..sigma.len() {
            let w = sigma.weights()[j];
            let y = sigma.point(j);
            for k in 0..d {
                let omega = -2.0 * PI * t * y[k] * self.spacing;
                for (i, p) in phases[k].iter_mut().enumerate() {
                    *p = Complex64::from_polar(1.0, omega * signed(i, m) as f64);
                }
            }
            accumulate(&mut field, &phases, Complex64::new(w, 0.0), 0, 0, m);
        }
        field
    }
}

fn accumulate(
    field: &mut [f64],
    phases: &[Vec<Complex64>],
    prefix: Complex64,
    level: usize,
    offset: usize,
    m: usize,
) {
    let d = phases.len();
    if level + 1 == d {
        let row = &mut field[offset * m..(offset + 1) * m];
        for (out, p) in row.iter_mut().zip(&phases[level]) {
            *out += prefix.re * p.re - prefix.im * p.im;
        }
        return;
    }
    for (i, p) in phases[level].iter().enumerate() {
        accumulate(field, phases, prefix * p, level + 1, offset * m + i, m);
    }
}

fn signed(i: usize, m: usize) -> i64 {
    if i < m / 2 {
        i as i64
    } else {
        i as i64 - m as i64
    }
}

/// In-place `d`-dimensional forward transform of an `m^d` array.
fn fft_nd(data: &mut [Complex64], d: usize, m: usize) {
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    let mut line = vec![Complex64::new(0.0, 0.0); m];
    let total = data.len();
    let mut stride = 1;
    for _ in 0..d {
        for start in 0..total {
            // visit each line once: its first element has zero coordinate on this axis
            if (start / stride) % m != 0 {
                continue;
            }
            for (i, v) in line.iter_mut().enumerate() {
                *v = data[start + i * stride];
            }
            fft.process(&mut line);
            for (i, v) in line.iter().enumerate() {
                data[start + i * stride] = *v;
            }
        }
        stride *= m;
    }
}

/// `∫ |f̂|² σ̂(tξ) dξ` split into the bands `|ξ| ≤ δ/t`,
/// `δ/t < |ξ| < 1/(δt)` and `|ξ| ≥ 1/(δt)`.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub t: f64,
    pub delta: f64,
    pub low: f64,
    pub middle: f64,
    pub high: f64,
    /// Bound on the part of the high band beyond the lattice.
    pub high_err: f64,
    pub total: f64,
}

impl SplitResult {
    /// `I₁ − |I₂| − |I₃| − err`, a certified lower bound for `I(t)`.
    pub fn lower_bound(&self) -> f64 {
        self.low - self.middle.abs() - self.high.abs() - self.high_err
    }
}

fn check_symmetric(sigma: &AtomicMeasure) -> Result<()> {
    if !sigma.is_symmetric(1e-9) {
        return Err(Error::AsymmetricMeasure(
            "the spectral form of the correlation needs σ = σ(−·); symmetrize the measure first"
                .into(),
        ));
    }
    Ok(())
}

pub fn split_with(
    spectrum: &PowerSpectrum,
    sigma: &AtomicMeasure,
    t: f64,
    delta: f64,
) -> Result<SplitResult> {
    if !(t > 0.0) {
        return Err(invalid_input("scale t must be positive"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid_input("band parameter δ must lie in (0, 1)"));
    }
    if sigma.dim() != spectrum.dim {
        return Err(invalid_input(
            "set and measure live in different dimensions",
        ));
    }
    check_symmetric(sigma)?;
    let field = spectrum.sigma_field(sigma, t);
    let (lo_cut, hi_cut) = (delta / t, 1.0 / (delta * t));
    let (mut low, mut middle, mut high) = (0.0, 0.0, 0.0);
    for (k, (&p, &s)) in spectrum.power.iter().zip(&field).enumerate() {
        if p == 0.0 {
            continue;
        }
        let r = spectrum
            .frequency(k)
            .iter()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt();
        let v = p * s;
        if r <= lo_cut {
            low += v;
        } else if r < hi_cut {
            middle += v;
        } else {
            high += v;
        }
    }
    let high_err = spectrum.tail * sigma.variation();
    Ok(SplitResult {
        t,
        delta,
        low,
        middle,
        high,
        high_err,
        total: low + middle + high,
    })
}

pub fn split_integrals(
    f: &GridIndicator,
    sigma: &AtomicMeasure,
    t: f64,
    delta: f64,
) -> Result<SplitResult> {
    split_with(&PowerSpectrum::new(f), sigma, t, delta)
}

/// `∫ |f̂(ξ)|² σ̂(tξ) dξ` on the frequency lattice.
pub fn spectral_correlation(f: &GridIndicator, sigma: &AtomicMeasure, t: f64) -> Result<f64> {
    Ok(split_integrals(f, sigma, t, 0.5)?.total)
}

/// Exact transform of the cell-wise constant indicator at `ξ`.
pub fn ft_indicator(f: &GridIndicator, xi: &[f64]) -> Complex64 {
    let h = f.cell_size();
    let shape: f64 = xi.iter().map(|x| h * sinc(PI * h * x)).product();
    let mut acc = Complex64::new(0.0, 0.0);
    for flat in 0..f.mask.len() {
        if f.mask[flat] {
            let c = f.center(flat);
            let phase: f64 = c.iter().zip(xi).map(|(a, b)| a * b).sum();
            acc += Complex64::from_polar(1.0, -2.0 * PI * phase);
        }
    }
    acc * shape
}

/// Decreasing scales `t₁ > t₂ > …` in `(0, 1)` with `t_{j+1} ≤ t_j/2`,
/// the band parameter `δ ≤ 1/R`, and the first index `j₀` (1-based) with
/// `t_{j₀} ≤ 4π/R`.
#[derive(Clone, Debug)]
pub struct LacunaryPlan {
    scales: Vec<f64>,
    delta: f64,
    cutoff: f64,
    j0: usize,
}

impl LacunaryPlan {
    pub fn new(scales: Vec<f64>, delta: f64, cutoff: f64) -> Result<Self> {
        if scales.is_empty() {
            return Err(invalid_input("plan needs at least one scale"));
        }
        if let Some(t) = scales.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
            return Err(invalid_input(format!("scale {t} is outside (0, 1)")));
        }
        if let Some(j) = scales.windows(2).position(|w| w[1] > 0.5 * w[0]) {
            return Err(invalid_input(format!(
                "scales {} and {} are not lacunary",
                j + 1,
                j + 2
            )));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(invalid_input("δ must lie in (0, 1)"));
        }
        if !(cutoff > 0.0) || delta > 1.0 / cutoff {
            return Err(invalid_input(format!(
                "need δ ≤ 1/R, got δ = {delta}, R = {cutoff}"
            )));
        }
        let j0 = scales
            .iter()
            .position(|&t| t <= 4.0 * PI / cutoff)
            .map(|i| i + 1)
            .ok_or_else(|| invalid_input("no scale satisfies t ≤ 4π/R"))?;
        Ok(Self {
            scales,
            delta,
            cutoff,
            j0,
        })
    }

    /// `t_j = ratio^j`, `j = 1..=count`.
    pub fn geometric(ratio: f64, count: usize, delta: f64, cutoff: f64) -> Result<Self> {
        Self::new(
            (1..=count).map(|j| ratio.powi(j as i32)).collect(),
            delta,
            cutoff,
        )
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// `t_j` for 1-based `j`.
    pub fn scale(&self, j: usize) -> f64 {
        self.scales[j - 1]
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn j0(&self) -> usize {
        self.j0
    }

    pub fn pigeonhole_count(&self, x: f64) -> usize {
        pigeonhole_count(x, &self.scales, self.delta)
    }
}

/// Number of `j` with `δ/t_j < x < 1/(δ t_j)`.
pub fn pigeonhole_count(x: f64, scales: &[f64], delta: f64) -> usize {
    scales
        .iter()
        .filter(|&&t| delta / t < x && x < 1.0 / (delta * t))
        .count()
}

/// `(2 / log 2) · log(1/δ)`.
pub fn pigeonhole_bound(delta: f64) -> f64 {
    2.0 / LN_2 * (1.0 / delta).ln()
}

/// Largest possible count for a sequence with `t_{j+1} ≤ t_j/2`: the
/// window in `log₂(1/t)` is open of length `L = 2 log₂(1/δ)` and the
/// points are at least 1 apart, so at most `⌈L⌉` of them fit.
pub fn pigeonhole_sharp_bound(delta: f64) -> usize {
    (2.0 * (1.0 / delta).log2()).ceil() as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A scale with certified positive correlation and positive direct sum.
    Found { j: usize },
    /// No scale up to the bound passed; `σ` is not good enough or the grid
    /// is too coarse.
    HypothesisViolation,
}

#[derive(Clone, Debug)]
pub struct ScanStep {
    pub j: usize,
    pub split: SplitResult,
    pub direct: f64,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct LacunaryOutcome {
    pub steps: Vec<ScanStep>,
    pub verdict: Verdict,
    pub measure: f64,
    pub constants: BourgainConstants,
    /// `j₀ + 10 θ⁻¹ |A|⁻¹ log(1/δ)`.
    pub j_bound: f64,
    /// `positivity · |A|²`.
    pub target: f64,
    /// Whether the supplied goodness `ε̂` met `η(|A|)`.
    pub hypothesis_met: Option<bool>,
}

impl LacunaryOutcome {
    pub fn found(&self) -> Option<&ScanStep> {
        match self.verdict {
            Verdict::Found { j } => self.steps.iter().find(|s| s.j == j),
            Verdict::HypothesisViolation => None,
        }
    }
}

/// Scans `j = j₀, j₀+1, …` up to the bound (or the end of the plan) for
/// the first scale with `I₁ − |I₂| − |I₃| − err > 0` and a positive direct
/// correlation.
pub fn lacunary_search(
    f: &GridIndicator,
    sigma: &AtomicMeasure,
    plan: &LacunaryPlan,
    goodness: Option<f64>,
) -> Result<LacunaryOutcome> {
    let measure = f.measure();
    if !(measure > 0.0) {
        return Err(invalid_input("the set A is empty"));
    }
    let constants = BourgainConstants::new(f.dim);
    let j_bound = constants.j_bound(plan.j0, measure, plan.delta);
    let spectrum = PowerSpectrum::new(f);
    let last = (j_bound.floor() as usize).min(plan.scales.len());
    let mut steps = Vec::new();
    let mut verdict = Verdict::HypothesisViolation;
    for j in plan.j0..=last {
        let t = plan.scale(j);
        let split = split_with(&spectrum, sigma, t, plan.delta)?;
        let direct = direct_correlation(f, sigma, t)?;
        let positive = split.lower_bound() > 0.0 && direct > 0.0;
        steps.push(ScanStep {
            j,
            split,
            direct,
            positive,
        });
        if positive {
            verdict = Verdict::Found { j };
            break;
        }
    }
    Ok(LacunaryOutcome {
        steps,
        verdict,
        measure,
        constants,
        j_bound,
        target: constants.positivity * measure * measure,
        hypothesis_met: goodness.map(|g| g <= constants.eta(measure)),
    })
}
