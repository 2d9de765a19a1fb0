//! Quadrature meshes of `∂K` carrying the Gauss map, and cap families on
//! the sphere of normals.

use std::f64::consts::PI;

use crate::body::{ConvexBody, Shape};
use crate::error::{invalid_input, Error, Result};
use crate::measure::AtomicMeasure;
use crate::sphere::{dot, geodesic_distance, norm, normalized, SphereTiling};

/// Boundary quadrature: nodes `x_j ∈ ∂K` with outward unit normals `n_j`
/// and nonnegative surface-area weights `w_j`.
#[derive(Clone, Debug)]
pub struct BoundaryMesh {
    dim: usize,
    positions: Vec<f64>,
    normals: Vec<f64>,
    weights: Vec<f64>,
    /// Facet index per node, for polytopes.
    facets: Option<Vec<usize>>,
    /// Largest observed `|‖x_j‖_K − 1|`.
    tolerance: f64,
}

impl BoundaryMesh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn position(&self, i: usize) -> &[f64] {
        &self.positions[i * self.dim..(i + 1) * self.dim]
    }

    pub fn normal(&self, i: usize) -> &[f64] {
        &self.normals[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn facet(&self, i: usize) -> Option<usize> {
        self.facets.as_ref().map(|f| f[i])
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Surface measure restricted to the nodes selected by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(usize) -> bool) -> BoundaryMesh {
        let d = self.dim;
        let mut out = BoundaryMesh {
            dim: d,
            positions: Vec::new(),
            normals: Vec::new(),
            weights: Vec::new(),
            facets: self.facets.as_ref().map(|_| Vec::new()),
            tolerance: self.tolerance,
        };
        for i in 0..self.len() {
            if keep(i) {
                out.positions.extend_from_slice(self.position(i));
                out.normals.extend_from_slice(self.normal(i));
                out.weights.push(self.weights[i]);
                if let (Some(dst), Some(src)) = (out.facets.as_mut(), self.facets.as_ref()) {
                    dst.push(src[i]);
                }
            }
        }
        out
    }

    /// The surface measure as an atomic measure (normals retained).
    pub fn to_measure(&self) -> AtomicMeasure {
        AtomicMeasure::with_normals(
            self.dim,
            self.positions.clone(),
            self.weights.clone(),
            self.normals.clone(),
        )
        .expect("mesh arrays are consistent")
    }

    /// Surface measure rescaled to a probability measure.
    pub fn to_probability(&self) -> AtomicMeasure {
        let total = self.total_mass();
        let mut m = self.to_measure();
        m.scale_weights(1.0 / total);
        m
    }

    fn push(&mut self, x: &[f64], n: &[f64], w: f64, facet: Option<usize>) {
        self.positions.extend_from_slice(x);
        self.normals.extend_from_slice(n);
        self.weights.push(w);
        if let (Some(f), Some(id)) = (self.facets.as_mut(), facet) {
            f.push(id);
        }
    }
}

/// Discretizes the surface measure of `∂K`.
///
/// Polytope facets are split into `resolution` pieces per edge (2-D) or fan
/// triangulated from the facet centroid with each fan triangle subdivided
/// `resolution²` times (3-D). Smooth bodies use `resolution` equal angles
/// (2-D) or an icosahedral grid of frequency `resolution` (3-D), projected
/// radially onto `∂K`.
pub fn triangulate_boundary(body: &ConvexBody, resolution: usize) -> Result<BoundaryMesh> {
    let d = body.dim();
    if resolution == 0 {
        return Err(invalid_input(
            "mesh resolution 0 cannot cover the facets of the body",
        ));
    }
    let is_polytope = body.as_polytope().is_some();
    let mut mesh = BoundaryMesh {
        dim: d,
        positions: Vec::new(),
        normals: Vec::new(),
        weights: Vec::new(),
        facets: is_polytope.then(Vec::new),
        tolerance: 0.0,
    };
    match (body.shape(), d) {
        (_, 1) => {
            // ∂K = {±r}: counting measure
            for s in [1.0, -1.0] {
                let x = body.radial_point(&[s]);
                let facet = body
                    .as_polytope()
                    .and_then(|p| crate::body::facet_of(p, &x, 1e-9));
                mesh.push(&x, &[s], 1.0, facet);
            }
        }
        (Shape::Polytope(p), 2) => {
            for (i, n) in p.normals().iter().enumerate() {
                let ids = p.facet_vertices(i);
                if ids.len() < 2 {
                    continue;
                }
                let (a, b) = (&p.vertices()[ids[0]], &p.vertices()[ids[1]]);
                let len = norm(&[b[0] - a[0], b[1] - a[1]]);
                let w = len / resolution as f64;
                for k in 0..resolution {
                    let s = (k as f64 + 0.5) / resolution as f64;
                    let x = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
                    mesh.push(&x, n, w, Some(i));
                }
            }
        }
        (Shape::Polytope(p), 3) => {
            for (i, n) in p.normals().iter().enumerate() {
                let ids = p.facet_vertices(i);
                if ids.len() < 3 {
                    continue;
                }
                let ring = ordered_facet_ring(p.vertices(), ids, n);
                let c: Vec<f64> = (0..3)
                    .map(|k| ring.iter().map(|v| v[k]).sum::<f64>() / ring.len() as f64)
                    .collect();
                for e in 0..ring.len() {
                    let (a, b) = (&ring[e], &ring[(e + 1) % ring.len()]);
                    subdivide_triangle(&c, a, b, resolution, |x, area| {
                        mesh.push(x, n, area, Some(i))
                    });
                }
            }
        }
        (Shape::Polytope(_), _) => {
            return Err(invalid_input(format!(
                "polytope meshing supports d ≤ 3, got d = {d}"
            )));
        }
        (_, 2) => {
            let step = 2.0 * PI / resolution as f64;
            for k in 0..resolution {
                let a = (k as f64 + 0.5) * step;
                let u = [a.cos(), a.sin()];
                let x = body.radial_point(&u);
                let n = body.outward_normal(&x);
                let rho = norm(&x);
                mesh.push(&x, &n, rho / dot(&u, &n) * step, None);
            }
        }
        (_, 3) => {
            let tiling = SphereTiling::icosahedral(resolution);
            for tri in &tiling.triangles {
                let (a, b, c) = (
                    &tiling.vertices[tri[0]],
                    &tiling.vertices[tri[1]],
                    &tiling.vertices[tri[2]],
                );
                let solid = SphereTiling::spherical_area(a, b, c);
                let u = normalized(&[a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]]);
                let x = body.radial_point(&u);
                let n = body.outward_normal(&x);
                let rho = norm(&x);
                mesh.push(&x, &n, rho * rho / dot(&u, &n) * solid, None);
            }
        }
        _ => {
            return Err(invalid_input(format!(
                "smooth-body meshing supports d ≤ 3, got d = {d}"
            )))
        }
    }
    if mesh.is_empty() {
        return Err(Error::InvalidBody("boundary mesh is empty".into()));
    }
    mesh.tolerance = (0..mesh.len())
        .map(|i| (body.gauge(mesh.position(i)) - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(mesh)
}

fn ordered_facet_ring(vertices: &[Vec<f64>], ids: &[usize], normal: &[f64]) -> Vec<Vec<f64>> {
    let pts: Vec<&Vec<f64>> = ids.iter().map(|&i| &vertices[i]).collect();
    let c: Vec<f64> = (0..3)
        .map(|k| pts.iter().map(|v| v[k]).sum::<f64>() / pts.len() as f64)
        .collect();
    // in-plane basis (e1, e2) with e1 × e2 = normal
    let helper = if normal[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = normalized(&cross(normal, &helper));
    let e2 = cross(normal, &e1);
    let mut with_angle: Vec<(f64, Vec<f64>)> = pts
        .iter()
        .map(|v| {
            let r: Vec<f64> = (0..3).map(|k| v[k] - c[k]).collect();
            (dot(&r, &e2).atan2(dot(&r, &e1)), (*v).clone())
        })
        .collect();
    with_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
    with_angle.into_iter().map(|(_, v)| v).collect()
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn subdivide_triangle(
    o: &[f64],
    a: &[f64],
    b: &[f64],
    n: usize,
    mut emit: impl FnMut(&[f64], f64),
) {
    let nf = n as f64;
    let p = |i: usize, j: usize| -> [f64; 3] {
        let (s, t) = (i as f64 / nf, j as f64 / nf);
        [
            o[0] + s * (a[0] - o[0]) + t * (b[0] - o[0]),
            o[1] + s * (a[1] - o[1]) + t * (b[1] - o[1]),
            o[2] + s * (a[2] - o[2]) + t * (b[2] - o[2]),
        ]
    };
    let area = |p: [f64; 3], q: [f64; 3], r: [f64; 3]| {
        let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
        let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
        0.5 * norm(&cross(&u, &v))
    };
    let centroid = |p: [f64; 3], q: [f64; 3], r: [f64; 3]| {
        [
            (p[0] + q[0] + r[0]) / 3.0,
            (p[1] + q[1] + r[1]) / 3.0,
            (p[2] + q[2] + r[2]) / 3.0,
        ]
    };
    for i in 0..n {
        for j in 0..(n - i) {
            let (x, y, z) = (p(i, j), p(i + 1, j), p(i, j + 1));
            emit(&centroid(x, y, z), area(x, y, z));
            if i + j + 1 < n {
                let w = p(i + 1, j + 1);
                emit(&centroid(y, w, z), area(y, w, z));
            }
        }
    }
}

/// Area-measure mass `S_K(cap)` of the open geodesic cap of radius `r_cap`
/// around `theta`: total weight of nodes whose normal is strictly inside.
pub fn area_measure_cap_mass(mesh: &BoundaryMesh, theta: &[f64], r_cap: f64) -> f64 {
    let theta = normalized(theta);
    (0..mesh.len())
        .filter(|&i| geodesic_distance(mesh.normal(i), &theta) < r_cap)
        .map(|i| mesh.weight(i))
        .sum()
}

/// Disjoint open caps `N_i` of common radius around directions `θ_i`.
#[derive(Clone, Debug)]
pub struct CapFamily {
    directions: Vec<Vec<f64>>,
    r_cap: f64,
    /// Minimum pairwise geodesic distance between cap centres.
    separation: f64,
}

impl CapFamily {
    pub fn new(directions: Vec<Vec<f64>>, r_cap: f64) -> Result<Self> {
        if directions.is_empty() {
            return Err(invalid_input("cap family needs at least one direction"));
        }
        if !(r_cap > 0.0) {
            return Err(invalid_input("cap radius must be positive"));
        }
        let directions: Vec<Vec<f64>> = directions.iter().map(|d| normalized(d)).collect();
        let mut separation = PI;
        for i in 0..directions.len() {
            for j in i + 1..directions.len() {
                separation = separation.min(geodesic_distance(&directions[i], &directions[j]));
            }
        }
        if directions.len() > 1 && separation <= 2.0 * r_cap {
            return Err(invalid_input(format!(
                "caps of radius {r_cap} overlap: centre separation {separation} ≤ 2·r_cap"
            )));
        }
        Ok(Self {
            directions,
            r_cap,
            separation,
        })
    }

    /// `n` planar caps with centres equally spaced in the upper half circle,
    /// at angles `π(k + 1/2)/n`.
    pub fn upper_half_circle(n: usize, r_cap: f64) -> Result<Self> {
        let dirs = (0..n)
            .map(|k| {
                let a = PI * (k as f64 + 0.5) / n as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
        Self::new(dirs, r_cap)
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn r_cap(&self) -> f64 {
        self.r_cap
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    /// Minimum geodesic distance between two distinct caps (as sets).
    pub fn gap(&self) -> f64 {
        self.separation - 2.0 * self.r_cap
    }

    /// Index of the cap containing the unit vector `n`.
    pub fn cap_of(&self, n: &[f64]) -> Option<usize> {
        self.directions
            .iter()
            .position(|c| geodesic_distance(n, c) < self.r_cap)
    }

    /// Geodesic distance from `eta` to the closed cap `i`, or to its
    /// antipode when `symmetric` is set.
    pub fn distance_to_cap(&self, i: usize, eta: &[f64], symmetric: bool) -> f64 {
        let c = &self.directions[i];
        let mut dist = geodesic_distance(eta, c);
        if symmetric {
            let neg: Vec<f64> = c.iter().map(|x| -x).collect();
            dist = dist.min(geodesic_distance(eta, &neg));
        }
        (dist - self.r_cap).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_perimeter() {
        let k = ConvexBody::cube(2, 1.0).unwrap();
        let mesh = triangulate_boundary(&k, 64).unwrap();
        assert!((mesh.total_mass() - 8.0).abs() < 1e-12);
        assert!(mesh.tolerance() < 1e-12);
        for i in 0..mesh.len() {
            let f = mesh.facet(i).unwrap();
            assert_eq!(
                mesh.normal(i),
                k.as_polytope().unwrap().normals()[f].as_slice()
            );
        }
    }

    #[test]
    fn circle_and_sphere_mass() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert!((triangulate_boundary(&disk, 4096).unwrap().total_mass() - 2.0 * PI).abs() < 1e-9);
        let ball = ConvexBody::ball(3, 1.0).unwrap();
        assert!((triangulate_boundary(&ball, 12).unwrap().total_mass() - 4.0 * PI).abs() < 1e-3);
    }

    #[test]
    fn zero_resolution_fails() {
        let k = ConvexBody::cube(2, 1.0).unwrap();
        assert!(triangulate_boundary(&k, 0).is_err());
    }

    #[test]
    fn cube_surface_area_3d() {
        let k = ConvexBody::cube(3, 1.0).unwrap();
        let mesh = triangulate_boundary(&k, 3).unwrap();
        assert!((mesh.total_mass() - 24.0).abs() < 1e-12);
        assert!(mesh.tolerance() < 1e-12);
    }

    #[test]
    fn cap_masses_on_square() {
        let k = ConvexBody::cube(2, 1.0).unwrap();
        let mesh = triangulate_boundary(&k, 16).unwrap();
        assert!((area_measure_cap_mass(&mesh, &[1.0, 0.0], 0.1) - 2.0).abs() < 1e-12);
        let diag = [1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()];
        assert_eq!(area_measure_cap_mass(&mesh, &diag, 0.1), 0.0);
    }

    #[test]
    fn cap_boundary_is_excluded() {
        // a cap of radius exactly π/2 around e1 does not reach the e2 facet
        let k = ConvexBody::cube(2, 1.0).unwrap();
        let mesh = triangulate_boundary(&k, 4).unwrap();
        assert!((area_measure_cap_mass(&mesh, &[1.0, 0.0], PI / 2.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn overlapping_caps_are_rejected() {
        assert!(CapFamily::new(vec![vec![1.0, 0.0], vec![0.995, 0.0998]], 0.1).is_err());
        let caps = CapFamily::upper_half_circle(5, 0.05).unwrap();
        assert!((caps.separation() - PI / 5.0).abs() < 1e-12);
        assert!((caps.gap() - (PI / 5.0 - 0.1)).abs() < 1e-12);
    }
}
