use std::f64::consts::PI;

use convexlab::body::{ConvexBody, HPolytope};
use convexlab::distance::PointSet;
use convexlab::spectra::{
    chi_hat, orthogonality_residual, radial_zero_scan, spectrum_gap_pipeline, ChiHat,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `J₁(x) = (1/π) ∫_0^π cos(θ − x sin θ) dθ`, composite Simpson.
fn j1_oracle(x: f64) -> f64 {
    let n = 4000;
    let h = PI / n as f64;
    let f = |t: f64| (t - x * t.sin()).cos();
    let mut s = f(0.0) + f(PI);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    s * h / 3.0 / PI
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..100 {
        let m = 0.5 * (lo + hi);
        if (f(m) < 0.0) == (flo < 0.0) {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn interval_zeros_are_half_integers() {
    let k = ConvexBody::cube(1, 1.0).unwrap();
    let ledger = radial_zero_scan(&k, (0.3, 10.2), 997, 0).unwrap();
    assert_eq!(ledger.zeros.len(), 20);
    for (i, z) in ledger.zeros.iter().enumerate() {
        assert!((z - 0.5 * (i + 1) as f64).abs() < 1e-10);
    }
    assert!(ledger.spacings.iter().all(|s| (s - 0.5).abs() < 1e-9));
    assert!(ledger.exact_radial);
    assert!(
        ledger
            .phase_offset(10)
            .unwrap()
            .min(PI - ledger.phase_offset(10).unwrap())
            < 1e-6
    );
}

#[test]
fn disk_zeros_match_the_bessel_oracle() {
    let k = ConvexBody::ball(2, 1.0).unwrap();
    let ledger = radial_zero_scan(&k, (0.5, 10.0), 2000, 0).unwrap();
    let chi = ChiHat::new(&k, 0).unwrap();
    assert!(chi.is_closed_form());
    assert!((ledger.zeros[0] - 0.6098).abs() < 1e-4);
    for (&z, &(a, b)) in ledger.zeros.iter().zip(&ledger.brackets) {
        let oracle = bisect(|r| j1_oracle(2.0 * PI * r), a, b);
        assert!((z - oracle).abs() < 1e-8, "{z} vs {oracle}");
        assert!(chi.eval(&[a, 0.0]) * chi.eval(&[b, 0.0]) < 0.0);
        assert!(chi.eval(&[z, 0.0]).abs() <= 1e-8);
    }
    assert!((ledger.tail_spacing(10).unwrap() - 0.5).abs() < 0.01);
    assert!(ledger.tail_deviation(10).unwrap() <= 0.02);
    // J₁ zeros sit near (k + 1/4)π
    assert!((ledger.phase_offset(10).unwrap() - PI / 4.0).abs() < 0.05);
}

#[test]
fn ball_zeros_solve_tan_z_equals_z() {
    let k = ConvexBody::ball(3, 1.0).unwrap();
    let ledger = radial_zero_scan(&k, (0.5, 10.0), 2000, 0).unwrap();
    for &z in &ledger.zeros {
        // roots of tan z = z in ((k+½)π − π/2, (k+½)π), z = 2πr
        let zz = 2.0 * PI * z;
        let k_half = (zz / PI - 0.5).round();
        let oracle = bisect(
            |x| x.sin() - x * x.cos(),
            (k_half) * PI + 1e-9,
            (k_half + 0.5) * PI - 1e-12,
        );
        assert!((zz - oracle).abs() < 1e-8, "{zz} vs {oracle}");
    }
    assert!((ledger.tail_spacing(10).unwrap() - 0.5).abs() < 0.01);
    assert!(ledger.tail_deviation(10).unwrap() <= 0.02);
    assert!((ledger.phase_offset(10).unwrap() - PI / 2.0).abs() < 0.05);
}

#[test]
fn empty_window_gives_empty_ledger() {
    let k = ConvexBody::ball(2, 1.0).unwrap();
    let ledger = radial_zero_scan(&k, (0.0, 0.5), 50, 0).unwrap();
    assert!(ledger.zeros.is_empty() && ledger.spacings.is_empty());
    assert!(ledger.tail_spacing(10).is_none());
}

/// Area of `|x|^p + |y|^p ≤ 1`: `4 ∫_0^1 (1 − x^p)^{1/p} dx` by the midpoint rule.
fn superellipse_area(p: f64) -> f64 {
    let n = 2_000_000;
    let h = 1.0 / n as f64;
    4.0 * h
        * (0..n)
            .map(|k| (1.0 - ((k as f64 + 0.5) * h).powf(p)).powf(1.0 / p))
            .sum::<f64>()
}

#[test]
fn transform_at_zero_is_the_volume() {
    let closed = [
        (ConvexBody::cube(3, 0.5).unwrap(), 1.0),
        (ConvexBody::ball(2, 1.0).unwrap(), PI),
        (ConvexBody::ball(3, 2.0).unwrap(), 4.0 / 3.0 * PI * 8.0),
        (ConvexBody::ellipsoid(2, vec![2.0, 0.5]).unwrap(), PI),
    ];
    for (k, vol) in &closed {
        let xi = vec![0.0; k.dim()];
        assert!((chi_hat(k, &xi, 0).unwrap() - vol).abs() < 1e-12 * vol);
    }
    // regular hexagon of inradius 1: area 2√3
    let hex = ConvexBody::polytope(HPolytope::regular_polygon(6, 1.0, 0.2).unwrap());
    assert!((chi_hat(&hex, &[0.0, 0.0], 64).unwrap() - 2.0 * 3f64.sqrt()).abs() < 1e-6);
    for p in [1.5, 4.0] {
        let k = ConvexBody::superellipsoid(2, p, vec![1.0, 1.0]).unwrap();
        assert!((chi_hat(&k, &[0.0, 0.0], 512).unwrap() - superellipse_area(p)).abs() < 1e-6);
    }
}

#[test]
fn rotated_square_matches_the_product_formula() {
    let a = 0.3f64;
    let sq = ConvexBody::polytope(HPolytope::regular_polygon(4, 1.0, a).unwrap());
    let chi = ChiHat::new(&sq, 64).unwrap();
    assert!(!chi.is_closed_form());
    let box1 = |x: f64| {
        if x == 0.0 {
            2.0
        } else {
            (2.0 * PI * x).sin() / (PI * x)
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let xi = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
        let u = xi[0] * a.cos() + xi[1] * a.sin();
        let v = -xi[0] * a.sin() + xi[1] * a.cos();
        assert!(
            (chi.eval(&xi) - box1(u) * box1(v)).abs() < 1e-8,
            "{xi:?}: {} vs {}",
            chi.eval(&xi),
            box1(u) * box1(v)
        );
    }
}

#[test]
fn orthogonality_examples() {
    let cube = ConvexBody::cube(2, 0.5).unwrap();
    let lat = PointSet::lattice(2, 1.0, -4.0, 4.0).unwrap();
    assert!(orthogonality_residual(&lat, &cube, 0).unwrap() <= 1e-10);
    let jitter = PointSet::perturbed_lattice(2, 1.0, -4.0, 4.0, 0.1, 3).unwrap();
    assert!(orthogonality_residual(&jitter, &cube, 0).unwrap() > 1e-3);
    let one = PointSet::new(2, vec![vec![0.2, 0.3]]).unwrap();
    assert_eq!(orthogonality_residual(&one, &cube, 0).unwrap(), 0.0);
}

#[test]
fn pipeline_on_disk_zero_shells() {
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let ledger = radial_zero_scan(&disk, (0.5, 12.0), 2000, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut pts = vec![vec![0.0, 0.0]];
    for &r in &ledger.zeros {
        let a = rng.gen_range(0.0..2.0 * PI);
        pts.push(vec![r * a.cos(), r * a.sin()]);
    }
    let set = PointSet::new(2, pts).unwrap();
    let out = spectrum_gap_pipeline(&set, &disk, 1.0, 30.0, 0.05, 0).unwrap();
    assert!(out.residual <= ChiHat::new(&disk, 0).unwrap().eval(&[0.0, 0.0]));
    assert!(out.sparse.points().contains(&vec![0.0, 0.0]));
    assert!(out.sparse.len() > 3, "{}", out.sparse.len());
    // distances from the origin are zero radii
    for p in out
        .sparse
        .points()
        .iter()
        .filter(|p| p[0] != 0.0 || p[1] != 0.0)
    {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        assert!(ledger.zeros.iter().any(|z| (z - r).abs() < 1e-9));
        assert!(out.report.distances.iter().any(|d| (d - r).abs() <= 1e-9));
    }
    // every reported distance is a Euclidean pair distance of the kept points
    let sp = out.sparse.points();
    for d in &out.report.distances {
        let hit = sp.iter().any(|a| {
            sp.iter()
                .any(|b| (((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt() - d).abs() <= 1e-9)
        });
        assert!(hit);
    }
}

#[test]
fn pipeline_on_the_lattice_with_cross_polytope_distances() {
    let cube = ConvexBody::cube(2, 0.5).unwrap();
    let lat = PointSet::lattice(2, 1.0, -6.0, 6.0).unwrap();
    let out = spectrum_gap_pipeline(&lat, &cube, 1.0, 100.0, 0.5, 0).unwrap();
    assert!(out.residual <= 1e-10);
    // side-1 cubes around even points keep exactly 2Z² ∩ [−6, 6]²
    assert_eq!(out.sparse.len(), 49);
    // ‖ξ‖_{K°} = (|ξ₁| + |ξ₂|)/2 on 2Z² takes every integer 0..=12
    let ints: Vec<f64> = (0..=12).map(|k| k as f64).collect();
    assert_eq!(out.report.distances, ints);
    assert_eq!(out.gaps.len(), 12);
}

#[test]
fn pipeline_with_nothing_left() {
    let cube = ConvexBody::cube(2, 0.5).unwrap();
    let set = PointSet::new(2, vec![vec![1.0, 1.0]]).unwrap();
    let out = spectrum_gap_pipeline(&set, &cube, 1.0, 10.0, 0.5, 0).unwrap();
    assert!(out.sparse.is_empty());
    assert!(out.report.distances.is_empty() && out.gaps.is_empty());
}

fn body_strategy() -> impl Strategy<Value = ConvexBody> {
    prop_oneof![
        proptest::collection::vec(0.2f64..2.0, 2).prop_map(|w| {
            let normals = vec![
                vec![1.0, 0.0],
                vec![-1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, -1.0],
            ];
            ConvexBody::polytope(HPolytope::new(2, normals, vec![w[0], w[0], w[1], w[1]]).unwrap())
        }),
        proptest::collection::vec(0.2f64..2.0, 3)
            .prop_map(|a| ConvexBody::ellipsoid(3, a).unwrap()),
        (0.0f64..1.0)
            .prop_map(|a| ConvexBody::polytope(HPolytope::regular_polygon(6, 1.0, a).unwrap())),
        (1.2f64..6.0).prop_map(|p| ConvexBody::superellipsoid(2, p, vec![1.0, 0.7]).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn transform_is_even(body in body_strategy(), xi in proptest::collection::vec(-6.0f64..6.0, 3)) {
        let chi = ChiHat::new(&body, 24).unwrap();
        let x = &xi[..body.dim()];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        prop_assert_eq!(chi.eval(x), chi.eval(&neg));
        prop_assert!(chi.eval(x).abs() <= chi.eval(&vec![0.0; body.dim()]) * (1.0 + 1e-9));
    }
}
