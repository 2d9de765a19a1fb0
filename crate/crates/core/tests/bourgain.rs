use std::f64::consts::{LN_2, PI};

use convexlab::body::ConvexBody;
use convexlab::bourgain::{
    direct_correlation, ft_indicator, lacunary_search, pigeonhole_bound, pigeonhole_count,
    pigeonhole_sharp_bound, split_with, BourgainConstants, GridIndicator, LacunaryPlan,
    PowerSpectrum, Verdict,
};
use convexlab::goodness::{construct_good_measure, goodness_profile_certified};
use convexlab::measure::AtomicMeasure;
use convexlab::mesh::{triangulate_boundary, CapFamily};
use proptest::prelude::*;

fn circle(n: usize) -> AtomicMeasure {
    triangulate_boundary(&ConvexBody::ball(2, 1.0).unwrap(), n)
        .unwrap()
        .to_probability()
}

/// Exact autocorrelation of the cell-wise constant set: each pair of cells
/// overlaps with the tent kernel `Π max(0, 1 − |Δ_i|/h)` times `h^d`.
fn pair_oracle(f: &GridIndicator, sigma: &AtomicMeasure, t: f64) -> f64 {
    let h = f.cell_size();
    let cells: Vec<Vec<f64>> = (0..f.mask().len())
        .filter(|&i| f.mask()[i])
        .map(|i| f.center(i))
        .collect();
    let mut total = 0.0;
    for j in 0..sigma.len() {
        let y = sigma.point(j);
        for a in &cells {
            for b in &cells {
                let tent: f64 = (0..f.dim())
                    .map(|k| (1.0 - (a[k] + t * y[k] - b[k]).abs() / h).max(0.0))
                    .product();
                total += sigma.weights()[j] * tent;
            }
        }
    }
    total * h.powi(f.dim() as i32)
}

/// Whether some node `y` moves some cell centre strictly within one cell of another.
fn pair_exists(f: &GridIndicator, sigma: &AtomicMeasure, t: f64) -> bool {
    let h = f.cell_size();
    let cells: Vec<Vec<f64>> = (0..f.mask().len())
        .filter(|&i| f.mask()[i])
        .map(|i| f.center(i))
        .collect();
    (0..sigma.len()).any(|j| {
        let y = sigma.point(j);
        cells.iter().any(|a| {
            cells
                .iter()
                .any(|b| (0..2).all(|k| (a[k] + t * y[k] - b[k]).abs() < h))
        })
    })
}

fn two_blobs(n: usize) -> GridIndicator {
    GridIndicator::from_fn(2, n, |x| {
        let a = (x[0] + 0.5).powi(2) + x[1].powi(2) <= 0.1f64.powi(2);
        let b = (x[0] - 0.5).powi(2) + x[1].powi(2) <= 0.1f64.powi(2);
        a || b
    })
    .unwrap()
}

#[test]
fn two_blob_correlation_matches_cell_pairs() {
    let f = two_blobs(32);
    let sigma = circle(64);
    let mut positive = Vec::new();
    for k in 1..=24 {
        let t = 0.05 * k as f64;
        let d = direct_correlation(&f, &sigma, t).unwrap();
        let oracle = pair_oracle(&f, &sigma, t);
        assert!(
            (d - oracle).abs() <= 1e-12 * oracle.max(1e-3),
            "t = {t}: {d} vs {oracle}"
        );
        assert_eq!(d > 0.0, pair_exists(&f, &sigma, t), "t = {t}");
        if d > 0.0 {
            positive.push(t);
        }
    }
    // positive at small t (same blob) and near the separation 1, zero in between
    assert!(positive.contains(&0.05) && positive.contains(&1.0));
    assert!(!positive.contains(&0.5));
}

#[test]
fn small_set_and_large_scale_give_zero() {
    let f = GridIndicator::ball(2, 64, &[0.0, 0.0], 0.1).unwrap();
    let body = ConvexBody::cube(2, 0.3).unwrap();
    let sigma = triangulate_boundary(&body, 64).unwrap().to_probability();
    assert_eq!(direct_correlation(&f, &sigma, 1.0).unwrap(), 0.0);
}

#[test]
fn full_ball_tends_to_its_measure() {
    let f = GridIndicator::ball(2, 128, &[0.0, 0.0], 1.0).unwrap();
    let sigma = circle(256);
    let mut last = 0.0;
    for t in [0.2, 0.05, 0.01, 0.001] {
        let v = direct_correlation(&f, &sigma, t).unwrap();
        assert!(v > last && v <= f.measure() + 1e-12);
        last = v;
    }
    assert!((last - f.measure()).abs() < 1e-2 * f.measure());
}

#[test]
fn single_cell() {
    let f = GridIndicator::from_cells(2, 64, &[vec![40, 30]]).unwrap();
    let sigma = circle(128);
    let h = f.cell_size();
    let spectrum = PowerSpectrum::new(&f);
    for t in [3.0 * h, 0.2, 0.7] {
        assert!(t > 2f64.sqrt() * h);
        assert_eq!(direct_correlation(&f, &sigma, t).unwrap(), 0.0);
        let split = split_with(&spectrum, &sigma, t, 0.5).unwrap();
        assert!(
            split.total.abs() <= split.high_err,
            "{} vs {}",
            split.total,
            split.high_err
        );
    }
}

#[test]
fn spectral_and_direct_agree_on_seeded_sets() {
    let sigma = circle(256);
    for seed in 0..3 {
        let f = GridIndicator::seeded_blobs(2, 128, 0.3, seed).unwrap();
        let spectrum = PowerSpectrum::new(&f);
        for t in [0.1, 0.4, 0.8] {
            let s = split_with(&spectrum, &sigma, t, 0.3).unwrap();
            let d = direct_correlation(&f, &sigma, t).unwrap();
            assert!(
                (s.total - d).abs() <= 0.02 * d,
                "seed {seed}, t {t}: {} vs {d}",
                s.total
            );
            assert!((s.low + s.middle + s.high - s.total).abs() <= 1e-12 * s.total.abs());
        }
    }
}

#[test]
fn transform_is_large_near_the_origin() {
    let f = GridIndicator::seeded_blobs(2, 64, 0.3, 9).unwrap();
    let area = f.measure();
    let r = 1.0 / (4.0 * PI);
    for k in 0..16 {
        for rho in [0.0, 0.5 * r, r] {
            let a = 2.0 * PI * k as f64 / 16.0;
            let v = ft_indicator(&f, &[rho * a.cos(), rho * a.sin()]);
            assert!(v.re >= area / 2.0, "{} at ρ = {rho}", v.re);
        }
    }
    assert!((ft_indicator(&f, &[0.0, 0.0]).re - area).abs() < 1e-12);
}

#[test]
fn low_band_lower_bound() {
    let c = BourgainConstants::new(2);
    assert!((c.low_band - 2.4868e-3).abs() < 1e-7);
    let sigma = circle(256);
    for seed in 0..3 {
        let f = GridIndicator::seeded_blobs(2, 128, 0.3, seed).unwrap();
        let spectrum = PowerSpectrum::new(&f);
        let area = f.measure();
        for delta in [0.02, 0.05, 0.1] {
            for t in [0.1, 0.5, 1.0] {
                let t = t * 4.0 * PI * delta;
                let s = split_with(&spectrum, &sigma, t, delta).unwrap();
                assert!(
                    s.low >= c.low_band * area * area,
                    "seed {seed}, δ {delta}, t {t}"
                );
            }
        }
    }
}

#[test]
fn middle_bands_average_out() {
    let sigma = circle(256);
    let delta = 0.1;
    let scales: Vec<f64> = (1..=8).map(|j| 0.5f64.powi(j)).collect();
    for seed in 0..2 {
        let f = GridIndicator::seeded_blobs(2, 128, 0.2, seed).unwrap();
        let spectrum = PowerSpectrum::new(&f);
        let sum: f64 = scales
            .iter()
            .map(|&t| {
                split_with(&spectrum, &sigma, t, delta)
                    .unwrap()
                    .middle
                    .abs()
            })
            .sum();
        assert!(sum <= pigeonhole_bound(delta) * f.measure(), "{sum}");
    }
}

#[test]
fn high_band_is_bounded_by_goodness() {
    let k = ConvexBody::ball(2, 1.0).unwrap();
    let mesh = triangulate_boundary(&k, 4096).unwrap();
    let caps = CapFamily::upper_half_circle(5, 0.05).unwrap();
    let sigma = construct_good_measure(&k, &mesh, &caps)
        .unwrap()
        .measure
        .symmetrized();
    let f = GridIndicator::seeded_blobs(2, 128, 0.3, 2).unwrap();
    let spectrum = PowerSpectrum::new(&f);
    let cutoff = 20.0;
    let delta = 1.0 / cutoff;
    let t = 0.5;
    // shells covering every |tξ| ≥ R reached by the frequency lattice
    let reach = t * spectrum.spacing() * (spectrum.bins_per_axis() as f64 / 2.0) * 2f64.sqrt();
    let shells: Vec<f64> = (0..)
        .map(|k| cutoff + 0.25 * cutoff * k as f64)
        .take_while(|&r| r <= reach + 0.25 * cutoff)
        .collect();
    let rep = goodness_profile_certified(&sigma, cutoff, &shells, 0.02).unwrap();
    let eps_hat = rep.eps_hat + rep.max_cert_err();
    let s = split_with(&spectrum, &sigma, t, delta).unwrap();
    assert!(s.high != 0.0);
    assert!(
        s.high.abs() <= eps_hat * f.measure(),
        "{} vs {}",
        s.high,
        eps_hat * f.measure()
    );
}

#[test]
fn pigeonhole_counts_on_dyadic_scales() {
    let delta = 0.1;
    let scales: Vec<f64> = (1..=40).map(|j| 0.5f64.powi(j)).collect();
    let sharp = pigeonhole_sharp_bound(delta);
    assert_eq!(sharp, 7);
    assert!((pigeonhole_bound(delta) - 2.0 / LN_2 * 10f64.ln()).abs() < 1e-15);
    let mut worst = 0;
    for k in 0..20_000 {
        let x = 10f64.powf(-1.0 + 8.0 * k as f64 / 20_000.0);
        worst = worst.max(pigeonhole_count(x, &scales, delta));
    }
    assert!(worst <= sharp);
    // just below 1/(δ t_3) the windows of j = 3..=9 all contain x
    let edge = 1.0 / (delta * scales[2]);
    assert_eq!(pigeonhole_count(edge * (1.0 - 1e-9), &scales, delta), 7);
    assert_eq!(pigeonhole_count(edge, &scales, delta), 6);
}

#[test]
fn lacunary_search_finds_a_scale_for_the_disk() {
    let f = GridIndicator::seeded_blobs(2, 128, 0.3, 1).unwrap();
    let sigma = circle(512);
    let plan = LacunaryPlan::geometric(0.5, 12, 0.05, 20.0).unwrap();
    assert_eq!(plan.j0(), 1);
    let out = lacunary_search(&f, &sigma, &plan, None).unwrap();
    let step = out.found().expect("a scale with positive correlation");
    assert!(matches!(out.verdict, Verdict::Found { .. }));
    assert!(step.direct > 0.0 && step.split.lower_bound() > 0.0);
    assert!(step.j >= plan.j0() && (step.j as f64) <= out.j_bound);
    assert!((out.target - out.measure * out.measure / (640.0 * PI)).abs() < 1e-15);
}

#[test]
fn dirac_sigma_is_plumbing_only() {
    let f = GridIndicator::seeded_blobs(2, 32, 0.3, 5).unwrap();
    let plan = LacunaryPlan::geometric(0.5, 6, 0.05, 20.0).unwrap();
    let out = lacunary_search(&f, &AtomicMeasure::dirac(&[0.0, 0.0]), &plan, None).unwrap();
    assert!(matches!(out.verdict, Verdict::Found { .. }));
    for step in &out.steps {
        assert!((step.direct - f.measure()).abs() < 1e-12);
        assert!((step.split.total - f.measure()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn partition_identity(seed in 0u64..1000, t in 0.01f64..1.0, delta in 0.01f64..0.99) {
        let f = GridIndicator::seeded_blobs(2, 16, 0.2, seed).unwrap();
        let sigma = circle(32);
        let s = split_with(&PowerSpectrum::new(&f), &sigma, t, delta).unwrap();
        prop_assert!((s.low + s.middle + s.high - s.total).abs() <= 1e-12 * s.total.abs().max(1e-12));
        prop_assert!(direct_correlation(&f, &sigma, t).unwrap() >= 0.0);
    }
}
