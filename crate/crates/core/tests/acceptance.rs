//! Exit criteria, one line per criterion. Run with
//! `cargo test -p convexlab --test acceptance`.

use std::f64::consts::{PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use convexlab::body::{ConvexBody, HPolytope, Shape};
use convexlab::bourgain::{
    direct_correlation, lacunary_search, pigeonhole_bound, pigeonhole_count, split_with,
    BourgainConstants, GridIndicator, LacunaryPlan, PowerSpectrum,
};
use convexlab::distance::{distance_set, thicken, PointSet};
use convexlab::goodness::{
    construct_good_measure, polytope_bound_audit, stabilized_goodness, StableSearch,
};
use convexlab::measure::{
    decay_scan, ft_measure, project_measure, wiener_atom_mass, AtomicMeasure, DEFAULT_BINS,
};
use convexlab::mesh::{triangulate_boundary, CapFamily};
use convexlab::spectra::radial_zero_scan;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inside(body: &ConvexBody, x: &[f64]) -> bool {
    match body.shape() {
        Shape::Polytope(p) => p
            .normals()
            .iter()
            .zip(p.offsets())
            .all(|(n, h)| n.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() <= *h),
        Shape::Ellipsoid { semi_axes } => {
            x.iter()
                .zip(semi_axes)
                .map(|(v, a)| (v / a).powi(2))
                .sum::<f64>()
                <= 1.0
        }
        _ => unreachable!(),
    }
}

fn bisection_gauge(body: &ConvexBody, x: &[f64]) -> f64 {
    let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let (mut lo, mut hi) = (0.0, 4.0 * len / body.radii().0);
    for _ in 0..80 {
        let t = 0.5 * (lo + hi);
        let y: Vec<f64> = x.iter().map(|v| v / t).collect();
        if inside(body, &y) {
            hi = t;
        } else {
            lo = t;
        }
    }
    0.5 * (lo + hi)
}

fn gauge_oracle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for k in 0..1000 {
        let dim = 2 + k % 2;
        let body = match (k / 2) % 4 {
            0 => ConvexBody::cube(dim, rng.gen_range(0.2..2.0)).unwrap(),
            1 => ConvexBody::ball(dim, rng.gen_range(0.2..2.0)).unwrap(),
            2 => ConvexBody::ellipsoid(dim, (0..dim).map(|_| rng.gen_range(0.2..2.0)).collect())
                .unwrap(),
            _ => ConvexBody::polytope(
                HPolytope::random(dim, rng.gen_range(dim + 1..8), &mut rng).unwrap(),
            ),
        };
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect();
        worst = worst.max((body.gauge(&x) - bisection_gauge(&body, &x)).abs());
    }
    check(worst <= 1e-9, || {
        format!("max |gauge − oracle| = {worst:e}")
    })?;
    Ok(format!("1000 pairs, max error {worst:.1e}"))
}

fn projection_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for k in 0..100 {
        let dim = 2 + k % 2;
        let n = rng.gen_range(1..200);
        let points: Vec<f64> = (0..n * dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mu = AtomicMeasure::new(dim, points, weights).unwrap();
        let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        let eta: Vec<f64> = raw.iter().map(|v| v / len).collect();
        let t = rng.gen_range(-50.0..50.0);
        let line = project_measure(&mu, &eta, DEFAULT_BINS).unwrap();
        let xi: Vec<f64> = eta.iter().map(|e| t * e).collect();
        let err = (line.ft(t) - ft_measure(&mu, &xi)).norm() / mu.variation();
        worst = worst.max(err);
    }
    check(worst <= 1e-10, || {
        format!("max relative deviation {worst:e}")
    })?;
    Ok(format!("100 triples, max deviation {worst:.1e}·mass"))
}

fn square_wiener_audit() -> Outcome {
    let square = ConvexBody::cube(2, 1.0).unwrap();
    let mu = triangulate_boundary(&square, 512).unwrap().to_probability();
    let w = wiener_atom_mass(&mu, &[1.0, 0.0], 200.0, 1000).unwrap();
    check((w - 0.125).abs() <= 0.05 * 0.125, || {
        format!("Wiener average {w} not within 5% of 1/8")
    })?;
    let floor = 1.0 / (2.0 * SQRT_2) - 0.02;
    check(w.sqrt() >= floor, || {
        format!("sqrt = {} below {floor}", w.sqrt())
    })?;
    let audit = polytope_bound_audit(&square, &mu, 200.0, 1000, 0.02).unwrap();
    check(audit.passed && audit.directions == 2, || {
        "polytope audit did not pass".into()
    })?;
    Ok(format!("wiener {w:.6}, sqrt {:.4} ≥ {floor:.4}", w.sqrt()))
}

fn circle_good_measure() -> Outcome {
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let mesh = triangulate_boundary(&disk, 16_384).unwrap();
    let caps = CapFamily::upper_half_circle(5, 0.05).unwrap();
    let good = construct_good_measure(&disk, &mesh, &caps).unwrap();
    check((good.measure.total_mass() - 1.0).abs() <= 1e-12, || {
        "not a probability measure".into()
    })?;
    let delta = 0.05;
    let found = stabilized_goodness(&good.measure, &StableSearch::for_caps(&caps, delta)).unwrap();
    let target = 0.2 + delta;
    let eps = found.report.eps_hat;
    check(found.stabilized, || {
        format!("no stable R within the doubling budget (last ε̂ = {eps})")
    })?;
    check(eps <= target, || format!("ε̂ = {eps} > {target}"))?;
    Ok(format!(
        "R = {}, ε̂ = {eps:.4} (+{:.4} certified) ≤ {target}",
        found.cutoff,
        found.report.max_cert_err()
    ))
}

fn cap_decay() -> Outcome {
    let circle = triangulate_boundary(&ConvexBody::ball(2, 1.0).unwrap(), 4096).unwrap();
    let arc = circle.restrict(|i| circle.normal(i)[0] >= 0.0 && circle.normal(i)[1] >= 0.0);
    let mass = arc.total_mass();
    let theta: Vec<Vec<f64>> = (0..=64)
        .map(|k| {
            let a = 0.5 * PI * k as f64 / 64.0;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let table = decay_scan(&arc.to_measure(), &theta, 0.3, &[10.0, 40.0], None).unwrap();
    let (e10, e40) = (table.rows[0].sup, table.rows[1].sup);
    check(e40 < e10 && e10 < mass, || {
        format!("envelope {e10} at t = 10, {e40} at t = 40, mass {mass}")
    })?;

    let square = triangulate_boundary(&ConvexBody::cube(2, 1.0).unwrap(), 256).unwrap();
    let flat = square
        .restrict(|i| square.normal(i) == [0.0, 1.0])
        .to_measure();
    let m = flat.total_mass();
    let spread = [0.5, 3.0, 17.0, 123.4, 900.0]
        .iter()
        .map(|&t| (ft_measure(&flat, &[0.0, t]).norm() - m).abs())
        .fold(0.0, f64::max);
    check(spread <= 1e-9 * m, || {
        format!("flat piece modulus varies by {spread:e}")
    })?;
    Ok(format!(
        "arc envelope {e10:.4} → {e40:.4} (mass {mass:.4}); flat piece constant to {spread:.0e}"
    ))
}

fn bourgain_machine() -> Outcome {
    let sigma = triangulate_boundary(&ConvexBody::ball(2, 1.0).unwrap(), 512)
        .unwrap()
        .to_probability();
    let consts = BourgainConstants::new(2);
    let delta = 0.05;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst_rel, mut low_band_checked) = (0.0f64, 0);
    for seed in 0..10 {
        let f = GridIndicator::seeded_blobs(2, 256, 0.3, seed).unwrap();
        let spectrum = PowerSpectrum::new(&f);
        let t = rng.gen_range(0.05..0.9);
        let s = split_with(&spectrum, &sigma, t, delta).unwrap();
        let d = direct_correlation(&f, &sigma, t).unwrap();
        let rel = (s.total - d).abs() / d;
        worst_rel = worst_rel.max(rel);
        check(rel <= 0.02, || {
            format!("seed {seed}, t = {t}: spectral {} vs direct {d}", s.total)
        })?;
        let sum = s.low + s.middle + s.high;
        check((sum - s.total).abs() <= 1e-12 * s.total.abs(), || {
            format!("seed {seed}: partition off by {}", sum - s.total)
        })?;
        if t <= 4.0 * PI * delta {
            let bound = consts.low_band * f.measure().powi(2);
            check(s.low >= bound, || {
                format!("seed {seed}, t = {t}: I₁ = {} < {bound}", s.low)
            })?;
            low_band_checked += 1;
        }
    }
    let f = GridIndicator::seeded_blobs(2, 256, 0.3, 100).unwrap();
    let plan = LacunaryPlan::geometric(0.5, 12, delta, 20.0).unwrap();
    let out = lacunary_search(&f, &sigma, &plan, None).unwrap();
    let step = out
        .found()
        .ok_or_else(|| format!("no scale found up to j = {}", out.steps.len()))?;
    check(step.direct > 0.0, || {
        "direct correlation at j* is not positive".into()
    })?;
    Ok(format!(
        "max spectral/direct gap {:.2}%, low-band bound on {low_band_checked}/10, j* = {} (t = {}, direct {:.3e})",
        100.0 * worst_rel,
        step.j,
        plan.scale(step.j),
        step.direct
    ))
}

fn pigeonhole() -> Outcome {
    let delta = 0.1;
    let scales: Vec<f64> = (1..=40).map(|j| 0.5f64.powi(j)).collect();
    // log-uniform over every x some window can contain
    let (lo, hi) = ((delta / scales[0]).ln(), (1.0 / (delta * scales[39])).ln());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let max = (0..10_000)
        .map(|_| pigeonhole_count(rng.gen_range(lo..hi).exp(), &scales, delta))
        .max()
        .unwrap();
    let bound = pigeonhole_bound(delta);
    check(6.0 <= bound, || format!("bound {bound} below 6"))?;
    check(max <= 6, || {
        format!("max count {max} exceeds 6 (bound {bound:.2}); dyadic scales fit 7 points in an open log₂ window of length {:.2}", bound)
    })?;
    Ok(format!("max count {max} ≤ 6 ≤ {bound:.2}"))
}

fn lattice_witnesses() -> Outcome {
    let body = ConvexBody::cube(2, 0.5).unwrap();
    let lat = PointSet::lattice(2, 1.0, -10.0, 10.0).unwrap();
    let rep = distance_set(&lat, &body, f64::INFINITY).unwrap();
    let evens: Vec<f64> = (0..=20).map(|k| 2.0 * k as f64).collect();
    check(rep.distances == evens, || {
        format!("distances {:?}", rep.distances)
    })?;
    check(rep.separation() == Some(2.0), || {
        "not separated with ε = 2".into()
    })?;

    let patch = PointSet::lattice(2, 1.0, 0.0, 4.0).unwrap();
    let base = distance_set(&patch, &body, f64::INFINITY).unwrap();
    let eps = 2.0;
    let thick = thicken(&patch, &body, eps / 10.0, 12, 8).unwrap();
    let p = &thick.points;
    let mut pairs = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let d = body.gauge(&[p[i][0] - p[j][0], p[i][1] - p[j][1]]);
            let (a, b) = (
                &patch.points()[thick.centers[i]],
                &patch.points()[thick.centers[j]],
            );
            let d0 = body.gauge(&[a[0] - b[0], a[1] - b[1]]);
            check((d - d0).abs() <= eps / 5.0 + 1e-12, || {
                format!("pair ({i}, {j}) moved by {}", (d - d0).abs())
            })?;
            for &(start, _) in &base.gaps {
                let (lo, hi) = (start + eps / 5.0, start + 4.0 * eps / 5.0);
                check(d <= lo || d >= hi, || {
                    format!("distance {d} inside ({lo}, {hi})")
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{} distances, gap transfer on {pairs} pairs",
        rep.distances.len()
    ))
}

fn zero_spacing() -> Outcome {
    let interval = ConvexBody::cube(1, 1.0).unwrap();
    let ledger = radial_zero_scan(&interval, (0.3, 10.2), 997, 0).unwrap();
    let off = ledger
        .zeros
        .iter()
        .enumerate()
        .map(|(i, z)| (z - 0.5 * (i + 1) as f64).abs())
        .fold(0.0, f64::max);
    check(ledger.zeros.len() == 20 && off <= 1e-10, || {
        format!("{} zeros, max offset {off:e}", ledger.zeros.len())
    })?;
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let ledger = radial_zero_scan(&disk, (0.5, 10.0), 2000, 0).unwrap();
    let dev = ledger.tail_deviation(10).ok_or("no disk zeros")?;
    check(dev <= 0.02, || format!("tail spacing deviation {dev}"))?;
    Ok(format!(
        "interval zeros at k/2 to {off:.0e}; disk tail spacing {:.4} ± {:.2}%",
        ledger.tail_spacing(10).unwrap(),
        100.0 * dev
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "gauge oracle suite",
            budget: Duration::from_secs(10),
            run: gauge_oracle_suite,
        },
        Criterion {
            id: 2,
            name: "projection identity",
            budget: Duration::from_secs(5),
            run: projection_identity,
        },
        Criterion {
            id: 3,
            name: "square Wiener audit",
            budget: Duration::from_secs(30),
            run: square_wiener_audit,
        },
        Criterion {
            id: 4,
            name: "circle good measure",
            budget: Duration::from_secs(120),
            run: circle_good_measure,
        },
        Criterion {
            id: 5,
            name: "cap decay",
            budget: Duration::from_secs(60),
            run: cap_decay,
        },
        Criterion {
            id: 6,
            name: "correlation machine",
            budget: Duration::from_secs(300),
            run: bourgain_machine,
        },
        Criterion {
            id: 7,
            name: "pigeonhole bound",
            budget: Duration::from_secs(1),
            run: pigeonhole,
        },
        Criterion {
            id: 8,
            name: "lattice witnesses",
            budget: Duration::from_secs(30),
            run: lattice_witnesses,
        },
        Criterion {
            id: 9,
            name: "zero spacing",
            budget: Duration::from_secs(30),
            run: zero_spacing,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!(
                "{detail}; took {elapsed:.1?}, budget {:?}",
                c.budget
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  [{}] {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  [{}] {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
