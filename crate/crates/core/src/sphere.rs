//! Vectors on the unit sphere: geodesic distance and direction grids.

use std::f64::consts::PI;

/// Slack allowed when clamping an inner product of unit vectors into `[-1, 1]`.
pub const CLAMP_SLACK: f64 = 1e-12;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalized(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

/// Angle between two unit vectors, i.e. their distance on `S^{d-1}`.
pub fn geodesic_distance(a: &[f64], b: &[f64]) -> f64 {
    let c = dot(a, b);
    debug_assert!(c.abs() <= 1.0 + 1e-6, "inputs are not unit vectors");
    let c = if c > 1.0 && c <= 1.0 + CLAMP_SLACK {
        1.0
    } else if c < -1.0 && c >= -1.0 - CLAMP_SLACK {
        -1.0
    } else {
        c.clamp(-1.0, 1.0)
    };
    c.acos()
}

/// A finite set of unit vectors with a certified covering radius: every
/// point of the sphere lies within `covering` (geodesic) of some grid point.
#[derive(Clone, Debug)]
pub struct DirectionGrid {
    pub dim: usize,
    pub directions: Vec<Vec<f64>>,
    pub covering: f64,
}

impl DirectionGrid {
    /// Uniform grid whose covering radius is at most `spacing`.
    ///
    /// With `half = true` only one of each antipodal pair is kept; this
    /// suffices when the sampled quantity is even on the sphere (for
    /// example `|μ̂|` for a real measure).
    pub fn with_spacing(dim: usize, spacing: f64, half: bool) -> Self {
        match dim {
            1 => Self {
                dim,
                directions: if half {
                    vec![vec![1.0]]
                } else {
                    vec![vec![1.0], vec![-1.0]]
                },
                covering: 0.0,
            },
            2 => {
                let span = if half { PI } else { 2.0 * PI };
                let count = ((span / (2.0 * spacing)).ceil() as usize).max(1);
                Self::circle(count, half)
            }
            _ => {
                // Icosahedral grid: edge length ~ 1.1/frequency.
                let mut freq = 1;
                loop {
                    let grid = Self::icosphere(freq, half);
                    if grid.covering <= spacing || freq > 4096 {
                        return grid;
                    }
                    freq = ((freq as f64) * (grid.covering / spacing))
                        .ceil()
                        .max(freq as f64 + 1.0) as usize;
                }
            }
        }
    }

    /// `count` equally spaced angles over `[0, π)` (half) or `[0, 2π)`.
    pub fn circle(count: usize, half: bool) -> Self {
        let span = if half { PI } else { 2.0 * PI };
        let step = span / count as f64;
        let directions = (0..count)
            .map(|k| {
                let a = k as f64 * step;
                vec![a.cos(), a.sin()]
            })
            .collect();
        Self {
            dim: 2,
            directions,
            covering: step / 2.0,
        }
    }

    /// Vertices of the subdivided icosahedron projected to `S^2`.
    pub fn icosphere(freq: usize, half: bool) -> Self {
        let tiling = SphereTiling::icosahedral(freq);
        let mut covering: f64 = 0.0;
        for tri in &tiling.triangles {
            for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                covering = covering.max(geodesic_distance(
                    &tiling.vertices[tri[a]],
                    &tiling.vertices[tri[b]],
                ));
            }
        }
        let directions = tiling
            .vertices
            .into_iter()
            .filter(|v| {
                !half
                    || v[2] > 1e-12
                    || (v[2].abs() <= 1e-12
                        && (v[1] > 1e-12 || (v[1].abs() <= 1e-12 && v[0] > 0.0)))
            })
            .collect();
        Self {
            dim: 3,
            directions,
            covering,
        }
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Spherical triangulation of `S^2` built from the icosahedron.
#[derive(Clone, Debug)]
pub struct SphereTiling {
    pub vertices: Vec<Vec<f64>>,
    pub triangles: Vec<[usize; 3]>,
}

impl SphereTiling {
    pub fn icosahedral(freq: usize) -> Self {
        let freq = freq.max(1);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let base: [[f64; 3]; 12] = [
            [-1.0, phi, 0.0],
            [1.0, phi, 0.0],
            [-1.0, -phi, 0.0],
            [1.0, -phi, 0.0],
            [0.0, -1.0, phi],
            [0.0, 1.0, phi],
            [0.0, -1.0, -phi],
            [0.0, 1.0, -phi],
            [phi, 0.0, -1.0],
            [phi, 0.0, 1.0],
            [-phi, 0.0, -1.0],
            [-phi, 0.0, 1.0],
        ];
        let faces: [[usize; 3]; 20] = [
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        let mut vertices: Vec<Vec<f64>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let key_of = |p: &[f64]| -> (i64, i64, i64) {
            let s = 1e9;
            (
                (p[0] * s).round() as i64,
                (p[1] * s).round() as i64,
                (p[2] * s).round() as i64,
            )
        };
        let mut intern = |p: Vec<f64>, vertices: &mut Vec<Vec<f64>>| -> usize {
            let key = key_of(&p);
            *index.entry(key).or_insert_with(|| {
                vertices.push(p);
                vertices.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(20 * freq * freq);
        for f in faces {
            let (a, b, c) = (base[f[0]], base[f[1]], base[f[2]]);
            let point = |i: usize, j: usize| -> Vec<f64> {
                // barycentric (i, j) in the face lattice
                let (u, v) = (i as f64 / freq as f64, j as f64 / freq as f64);
                let w = 1.0 - u - v;
                let p: Vec<f64> = (0..3).map(|k| w * a[k] + u * b[k] + v * c[k]).collect();
                normalized(&p)
            };
            let mut ids = vec![vec![0usize; freq + 1]; freq + 1];
            for i in 0..=freq {
                for j in 0..=(freq - i) {
                    ids[i][j] = intern(point(i, j), &mut vertices);
                }
            }
            for i in 0..freq {
                for j in 0..(freq - i) {
                    triangles.push([ids[i][j], ids[i + 1][j], ids[i][j + 1]]);
                    if i + j + 1 < freq {
                        triangles.push([ids[i + 1][j], ids[i + 1][j + 1], ids[i][j + 1]]);
                    }
                }
            }
        }
        Self {
            vertices,
            triangles,
        }
    }

    /// Area of a spherical triangle with unit-vector vertices.
    pub fn spherical_area(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        let triple = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        let denom = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
        2.0 * triple.abs().atan2(denom)
    }
}
