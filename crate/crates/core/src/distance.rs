//! Distance sets `D_K(Λ) = {‖x − y‖_K : x, y ∈ Λ}` and the point-set
//! constructions built on them.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::ConvexBody;
use crate::error::{invalid_input, Error, Result};

/// Distances closer than this are merged.
pub const MERGE_TOL: f64 = 1e-9;
/// Points closer than this (sup norm) are duplicates.
pub const DUPLICATE_TOL: f64 = 1e-12;

/// How a point set was generated, when it was.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// `spacing · Z^d ∩ [lo, hi]^d`.
    Lattice { spacing: f64, lo: f64, hi: f64 },
    /// Lattice with each point moved uniformly within `[−jitter, jitter]^d`.
    Perturbed {
        spacing: f64,
        lo: f64,
        hi: f64,
        jitter: f64,
        seed: u64,
    },
    /// Uniform points in `[lo, hi]^d`.
    Uniform {
        count: usize,
        lo: f64,
        hi: f64,
        seed: u64,
    },
}

/// A finite point configuration without duplicates.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
    generator: Option<Generator>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(invalid_input("point sets need d ≥ 1"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(invalid_input(format!(
                "point {p:?} does not have {dim} coordinates"
            )));
        }
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(invalid_input("point set contains non-finite coordinates"));
        }
        if let Some((i, j)) = find_duplicate(&points) {
            return Err(invalid_input(format!(
                "points {i} and {j} coincide within {DUPLICATE_TOL}"
            )));
        }
        Ok(Self {
            dim,
            points,
            generator: None,
        })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
            generator: None,
        }
    }

    pub fn lattice(dim: usize, spacing: f64, lo: f64, hi: f64) -> Result<Self> {
        let axis = lattice_axis(spacing, lo, hi)?;
        let points = product(dim, &axis);
        Ok(Self {
            dim,
            points,
            generator: Some(Generator::Lattice { spacing, lo, hi }),
        })
    }

    pub fn perturbed_lattice(
        dim: usize,
        spacing: f64,
        lo: f64,
        hi: f64,
        jitter: f64,
        seed: u64,
    ) -> Result<Self> {
        if !(jitter >= 0.0) || jitter >= spacing / 2.0 {
            return Err(invalid_input("jitter must lie in [0, spacing/2)"));
        }
        let axis = lattice_axis(spacing, lo, hi)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = product(dim, &axis);
        for p in &mut points {
            for x in p.iter_mut() {
                *x += if jitter > 0.0 {
                    rng.gen_range(-jitter..=jitter)
                } else {
                    0.0
                };
            }
        }
        Ok(Self {
            dim,
            points,
            generator: Some(Generator::Perturbed {
                spacing,
                lo,
                hi,
                jitter,
                seed,
            }),
        })
    }

    pub fn uniform(dim: usize, count: usize, lo: f64, hi: f64, seed: u64) -> Result<Self> {
        if !(hi > lo) {
            return Err(invalid_input("uniform box needs lo < hi"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(lo..hi)).collect())
            .collect();
        let mut set = Self::new(dim, points)?;
        set.generator = Some(Generator::Uniform {
            count,
            lo,
            hi,
            seed,
        });
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    /// `{c·x : x ∈ Λ}`, or a translate when `shift` is given.
    pub fn map(&self, c: f64, shift: Option<&[f64]>) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .enumerate()
                    .map(|(i, x)| c * x + shift.map_or(0.0, |s| s[i]))
                    .collect()
            })
            .collect();
        Self {
            dim: self.dim,
            points,
            generator: None,
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let first = self.points.first()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in &self.points {
            for i in 0..self.dim {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Some((lo, hi))
    }
}

fn lattice_axis(spacing: f64, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(spacing > 0.0) || !(hi >= lo) {
        return Err(invalid_input("lattice needs spacing > 0 and lo ≤ hi"));
    }
    let first = (lo / spacing - 1e-9).ceil() as i64;
    let last = (hi / spacing + 1e-9).floor() as i64;
    Ok((first..=last).map(|k| k as f64 * spacing).collect())
}

fn product(dim: usize, axis: &[f64]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn cell_of(p: &[f64], size: f64) -> Vec<i64> {
    p.iter().map(|x| (x / size).floor() as i64).collect()
}

/// All `3^d` integer offsets in `{−1, 0, 1}^d`.
fn neighbour_offsets(dim: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-1..=1).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn find_duplicate(points: &[Vec<f64>]) -> Option<(usize, usize)> {
    let dim = points.first()?.len();
    let size = DUPLICATE_TOL * 4.0;
    let offsets = neighbour_offsets(dim);
    let mut grid: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (j, p) in points.iter().enumerate() {
        let c = cell_of(p, size);
        for off in &offsets {
            let key: Vec<i64> = c.iter().zip(off).map(|(a, b)| a + b).collect();
            if let Some(list) = grid.get(&key) {
                for &i in list {
                    if sup_dist(&points[i], p) <= DUPLICATE_TOL {
                        return Some((i, j));
                    }
                }
            }
        }
        grid.entry(c).or_default().push(j);
    }
    None
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Sorted distinct distances up to `t_max` and the gaps between them.
#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub distances: Vec<f64>,
    /// `(start, length)` of every interval between consecutive distances.
    pub gaps: Vec<(f64, f64)>,
    pub t_max: f64,
}

impl GapReport {
    pub fn from_distances(mut raw: Vec<f64>, t_max: f64) -> Self {
        raw.sort_by(f64::total_cmp);
        let mut distances: Vec<f64> = Vec::new();
        let mut anchor = f64::NEG_INFINITY;
        for d in raw {
            if d - anchor > MERGE_TOL {
                distances.push(d);
                anchor = d;
            }
        }
        let gaps = distances.windows(2).map(|w| (w[0], w[1] - w[0])).collect();
        Self {
            distances,
            gaps,
            t_max,
        }
    }

    /// Smallest gap: the witness `ε` of separation (`None` with < 2 distances).
    pub fn separation(&self) -> Option<f64> {
        self.gaps.iter().map(|g| g.1).reduce(f64::min)
    }
}

/// Brute-force `D_K(Λ) ∩ [0, t_max]`.
pub fn distance_set(set: &PointSet, body: &ConvexBody, t_max: f64) -> Result<GapReport> {
    if set.dim != body.dim() && !set.is_empty() {
        return Err(invalid_input(
            "point set and body have different dimensions",
        ));
    }
    distance_set_with(set, t_max, |v| body.gauge(v))
}

/// Distance set under the dual gauge `‖·‖_{K°}`.
pub fn dual_distance_set(set: &PointSet, body: &ConvexBody, t_max: f64) -> Result<GapReport> {
    if set.dim != body.dim() && !set.is_empty() {
        return Err(invalid_input(
            "point set and body have different dimensions",
        ));
    }
    distance_set_with(set, t_max, |v| body.dual_gauge(v))
}

fn distance_set_with(
    set: &PointSet,
    t_max: f64,
    norm: impl Fn(&[f64]) -> f64,
) -> Result<GapReport> {
    let mut raw = Vec::new();
    if !set.is_empty() {
        raw.push(0.0);
    }
    let mut diff = vec![0.0; set.dim];
    for (i, x) in set.points.iter().enumerate() {
        for y in &set.points[i + 1..] {
            for k in 0..set.dim {
                diff[k] = x[k] - y[k];
            }
            let d = norm(&diff);
            if d <= t_max {
                raw.push(d);
            }
        }
    }
    Ok(GapReport::from_distances(raw, t_max))
}

/// Gaps of length at least `eps` starting at or after `t0`.
pub fn gap_scan(report: &GapReport, eps: f64, t0: f64) -> Result<Vec<(f64, f64)>> {
    if !(eps > 0.0) {
        return Err(invalid_input("gap length ε must be positive"));
    }
    Ok(report
        .gaps
        .iter()
        .copied()
        .filter(|&(s, l)| s >= t0 && l >= eps)
        .collect())
}

/// Result of [`well_distributed_radius`].
#[derive(Clone, Debug)]
pub struct WellDistributed {
    /// Critical side: every closed cube of side `r` inside the probe box
    /// meets `Λ`; for any smaller side some cube misses it.
    pub r: f64,
    /// Whether the cube-grid check at resolution `r/4` found a point in
    /// every grid cube of side `r`.
    pub grid_certified: bool,
}

/// Largest number of candidate corners examined per decision.
pub const CORNER_BUDGET: usize = 4_000_000;

/// Whether some open cube `a + (0, s)^d` inside `[lo, hi]` avoids `Λ`.
///
/// A maximal empty cube can be slid down along each axis until its lower
/// face touches a point coordinate or the box, so it suffices to test
/// lower corners built from those coordinates.
fn empty_cube_exists(
    set: &PointSet,
    lo: &[f64],
    hi: &[f64],
    s: f64,
    index: &CubeIndex,
) -> Result<bool> {
    let d = set.dim;
    let mut axes: Vec<Vec<f64>> = Vec::with_capacity(d);
    for i in 0..d {
        if hi[i] - lo[i] < s {
            return Ok(false);
        }
        let mut c: Vec<f64> = std::iter::once(lo[i])
            .chain(
                set.points
                    .iter()
                    .map(|p| p[i])
                    .filter(|&x| x >= lo[i] && x <= hi[i] - s),
            )
            .collect();
        c.sort_by(f64::total_cmp);
        c.dedup();
        axes.push(c);
    }
    let total: usize = axes
        .iter()
        .map(Vec::len)
        .try_fold(1usize, |a, n| a.checked_mul(n))
        .unwrap_or(usize::MAX);
    if total > CORNER_BUDGET {
        return Err(Error::NumericBudget(format!(
            "{total} candidate cubes exceed the budget of {CORNER_BUDGET}"
        )));
    }
    let mut idx = vec![0usize; d];
    loop {
        let corner: Vec<f64> = (0..d).map(|i| axes[i][idx[i]]).collect();
        if !index.open_cube_occupied(&corner, s) {
            return Ok(true);
        }
        let mut k = 0;
        loop {
            if k == d {
                return Ok(false);
            }
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Hash grid over the point set for cube occupancy queries.
struct CubeIndex<'a> {
    set: &'a PointSet,
    size: f64,
    cells: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> CubeIndex<'a> {
    fn new(set: &'a PointSet, size: f64) -> Self {
        let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, p) in set.points.iter().enumerate() {
            cells.entry(cell_of(p, size)).or_default().push(i);
        }
        Self { set, size, cells }
    }

    fn query(&self, corner: &[f64], s: f64, open: bool) -> bool {
        let lo = cell_of(corner, self.size);
        let top: Vec<f64> = corner.iter().map(|c| c + s).collect();
        let hi = cell_of(&top, self.size);
        let mut idx = lo.clone();
        let inside = |p: &[f64]| {
            p.iter().zip(corner).all(|(x, c)| {
                if open {
                    *x > *c && *x < c + s
                } else {
                    *x >= *c && *x <= c + s
                }
            })
        };
        loop {
            if let Some(list) = self.cells.get(&idx) {
                if list.iter().any(|&i| inside(&self.set.points[i])) {
                    return true;
                }
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return false;
                }
                idx[k] += 1;
                if idx[k] <= hi[k] {
                    break;
                }
                idx[k] = lo[k];
                k += 1;
            }
        }
    }

    fn open_cube_occupied(&self, corner: &[f64], s: f64) -> bool {
        self.query(corner, s, true)
    }

    fn closed_cube_occupied(&self, corner: &[f64], s: f64) -> bool {
        self.query(corner, s, false)
    }
}

/// Smallest side `r` such that every cube of side `r` inside `probe` meets `Λ`.
///
/// The critical side is located by bisection on an exact decision
/// procedure, then cross-checked on a cube grid of step `r/4`.
pub fn well_distributed_radius(set: &PointSet, probe: (&[f64], &[f64])) -> Result<WellDistributed> {
    let (lo, hi) = probe;
    let d = set.dim;
    if lo.len() != d || hi.len() != d || lo.iter().zip(hi).any(|(a, b)| !(b > a)) {
        return Err(invalid_input(
            "probe box must have lo < hi in every coordinate",
        ));
    }
    let side = lo
        .iter()
        .zip(hi)
        .map(|(a, b)| b - a)
        .fold(f64::INFINITY, f64::min);
    let mut low = 0.0;
    let mut high = side;
    let cell = (side / 64.0).max(1e-6);
    {
        let index = CubeIndex::new(set, cell);
        if empty_cube_exists(set, lo, hi, high, &index)? {
            return Err(Error::NumericBudget(format!(
                "an empty cube of side {side} fits in the probe box: not well-distributed at this scale"
            )));
        }
        let tol = 1e-10 * side.max(1.0);
        while high - low > tol {
            let mid = 0.5 * (low + high);
            if empty_cube_exists(set, lo, hi, mid, &index)? {
                low = mid;
            } else {
                high = mid;
            }
        }
    }
    let r = high;
    let index = CubeIndex::new(set, (r / 2.0).max(1e-9));
    let step = r / 4.0;
    let counts: Vec<usize> = (0..d)
        .map(|i| (((hi[i] - lo[i] - r) / step).floor().max(0.0) as usize) + 1)
        .collect();
    let total: usize = counts.iter().product();
    if total > CORNER_BUDGET {
        return Err(Error::NumericBudget(format!(
            "{total} certificate cubes exceed the budget"
        )));
    }
    let mut idx = vec![0usize; d];
    let mut grid_certified = true;
    'outer: loop {
        let corner: Vec<f64> = (0..d).map(|i| lo[i] + idx[i] as f64 * step).collect();
        if !index.closed_cube_occupied(&corner, r) {
            grid_certified = false;
            break;
        }
        let mut k = 0;
        loop {
            if k == d {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < counts[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    Ok(WellDistributed { r, grid_certified })
}

/// `Λ` together with samples of `s·K` around each point.
#[derive(Clone, Debug)]
pub struct ThickenedSet {
    pub points: Vec<Vec<f64>>,
    /// Index into `Λ` of the centre each point was drawn around.
    pub centers: Vec<usize>,
}

/// `per_point` samples of `λ + sK` for every `λ ∈ Λ`, the first being `λ`.
///
/// Samples are drawn by rejection from the bounding cube of `sK`, accepting
/// `x` with `‖x‖_K ≤ s`.
pub fn thicken(
    set: &PointSet,
    body: &ConvexBody,
    s: f64,
    per_point: usize,
    seed: u64,
) -> Result<ThickenedSet> {
    if !(s > 0.0) {
        return Err(invalid_input("thickening scale s must be positive"));
    }
    if per_point == 0 {
        return Err(invalid_input("need at least one sample per point"));
    }
    if !set.is_empty() && set.dim != body.dim() {
        return Err(invalid_input(
            "point set and body have different dimensions",
        ));
    }
    let (_, r1) = body.radii();
    let half = s * r1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(set.len() * per_point);
    let mut centers = Vec::with_capacity(set.len() * per_point);
    for (i, c) in set.points.iter().enumerate() {
        points.push(c.clone());
        centers.push(i);
        for _ in 1..per_point {
            let offset: Vec<f64> = loop {
                let v: Vec<f64> = (0..set.dim).map(|_| rng.gen_range(-half..=half)).collect();
                if body.gauge(&v) <= s {
                    break v;
                }
            };
            points.push(c.iter().zip(&offset).map(|(a, b)| a + b).collect());
            centers.push(i);
        }
    }
    Ok(ThickenedSet { points, centers })
}

/// Keeps the lexicographically smallest point of `Λ` in each cube
/// `R·n + (−R/2, R/2)^d` with all coordinates of `n ∈ Z^d` even.
///
/// Points outside every such cube are dropped. Kept points are more than
/// `R` apart in the sup norm.
pub fn sparsify(set: &PointSet, r: f64) -> Result<PointSet> {
    if !(r > 0.0) {
        return Err(invalid_input("sparsification side R must be positive"));
    }
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| {
        set.points[a]
            .iter()
            .zip(&set.points[b])
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut taken: HashSet<Vec<i64>> = HashSet::new();
    let mut kept = Vec::new();
    for i in order {
        let p = &set.points[i];
        let n: Vec<i64> = p.iter().map(|x| (x / r).round() as i64).collect();
        let inside = p
            .iter()
            .zip(&n)
            .all(|(x, &k)| k % 2 == 0 && (x - r * k as f64).abs() < r / 2.0);
        if inside && taken.insert(n) {
            kept.push(p.clone());
        }
    }
    Ok(PointSet {
        dim: set.dim,
        points: kept,
        generator: None,
    })
}
