use std::f64::consts::PI;

use convexlab::body::ConvexBody;
use convexlab::bourgain::{
    lacunary_search, BourgainConstants, GridIndicator, LacunaryPlan, Verdict,
};
use convexlab::distance::{distance_set, dual_distance_set, gap_scan, GapReport, PointSet};
use convexlab::goodness::{
    construct_good_measure, goodness_profile_certified, polytope_bound_audit, stabilized_goodness,
    window, GoodnessReport, StableSearch,
};
use convexlab::io::{read_body, read_measure, read_points_file, read_set};
use convexlab::measure::{
    decay_scan, project_measure, wiener_atom_mass, AtomicMeasure, FourierScan,
};
use convexlab::mesh::{triangulate_boundary, CapFamily};
use convexlab::special::unit_ball_volume;
use convexlab::spectra::{chi_hat, radial_zero_scan, spectrum_gap_pipeline};
use convexlab::sphere::{geodesic_distance, normalized, DirectionGrid};
use convexlab::{Error, Result};

use crate::args::*;
use crate::report::{num, Report};
use crate::Command;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub fn execute(command: Command) -> Result<()> {
    let (report, out) = match command {
        Command::Body(a) => (body(&a)?, a.out.out),
        Command::Gauge(a) => (gauge(&a)?, a.out.out),
        Command::Distset(a) => (distset(&a)?, a.out.out),
        Command::Gaps(a) => (gaps(&a)?, a.out.out),
        Command::Ftscan(a) => (ftscan(&a)?, a.out.out),
        Command::Project(a) => (project(&a)?, a.out.out),
        Command::Wiener(a) => (wiener(&a)?, a.out.out),
        Command::Decay(a) => (decay(&a)?, a.out.out),
        Command::Goodness(a) => (goodness(&a)?, a.out.out),
        Command::Audit(a) => (audit(&a)?, a.out.out),
        Command::Bourgain(a) => (bourgain(&a)?, a.out.out),
        Command::Zeros(a) => (zeros(&a)?, a.out.out),
        Command::Spectrum(a) => (spectrum(&a)?, a.out.out),
        Command::Run { .. } => return Err(bad("manifests cannot nest `run`")),
    };
    report.emit(out.as_deref())?;
    match report.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn dimension_constants(report: &mut Report, dim: usize) {
    report.constant("dim", dim);
    report.constant("omega_d", unit_ball_volume(dim));
}

fn load_points(src: &PointSource) -> Result<PointSet> {
    match (&src.points, &src.lattice) {
        (Some(p), _) => read_points_file(p),
        (None, Some(l)) => {
            let dim: usize = l
                .strip_prefix('Z')
                .and_then(|d| d.parse().ok())
                .filter(|&d| d >= 1)
                .ok_or_else(|| bad(format!("lattice `{l}` is not of the form Zd")))?;
            PointSet::lattice(dim, src.spacing, -src.extent, src.extent)
        }
        (None, None) => Err(bad("give --points or --lattice")),
    }
}

fn load_measure(src: &MeasureSource) -> Result<AtomicMeasure> {
    match (&src.measure, &src.body) {
        (Some(m), _) => read_measure(m),
        (None, Some(b)) => {
            Ok(triangulate_boundary(&read_body(b)?, src.resolution)?.to_probability())
        }
        (None, None) => Err(bad("give --measure or --body")),
    }
}

fn unit(v: &Vector, dim: usize) -> Result<Vec<f64>> {
    if v.0.len() != dim {
        return Err(bad(format!(
            "direction {v} does not have {dim} coordinates"
        )));
    }
    if !(v.0.iter().map(|x| x * x).sum::<f64>() > 0.0) {
        return Err(bad("direction must be nonzero"));
    }
    Ok(normalized(&v.0))
}

fn gap_tables(report: &mut Report, gaps: &GapReport) {
    report.table(
        "distances.csv",
        &["distance"],
        gaps.distances.iter().map(|&d| vec![num(d)]).collect(),
    );
    report.table(
        "gaps.csv",
        &["start", "length"],
        gaps.gaps
            .iter()
            .map(|&(s, l)| vec![num(s), num(l)])
            .collect(),
    );
    report.summary("distances", gaps.distances.len());
    report.summary("separation", gaps.separation());
}

fn body(a: &BodyArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let mut r = Report::new("body", a);
    dimension_constants(&mut r, k.dim());
    let (inner, outer) = k.radii();
    let mesh = triangulate_boundary(&k, a.resolution)?;
    r.summary("inradius", inner);
    r.summary("circumradius", outer);
    r.summary("surface_area", mesh.total_mass());
    if k.dim() <= 3 {
        r.summary("volume", chi_hat(&k, &vec![0.0; k.dim()], a.resolution)?);
    }
    r.summary("facet_directions", k.facet_directions());
    let d = k.dim();
    let header: Vec<String> = (1..=d)
        .map(|i| format!("x{i}"))
        .chain((1..=d).map(|i| format!("n{i}")))
        .chain(["weight".to_string()])
        .collect();
    let rows = (0..mesh.len())
        .map(|i| {
            mesh.position(i)
                .iter()
                .chain(mesh.normal(i))
                .map(|&x| num(x))
                .chain([num(mesh.weight(i))])
                .collect()
        })
        .collect();
    r.table_owned("mesh.csv", header, rows);
    Ok(r)
}

fn gauge(a: &GaugeArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let points: Vec<Vec<f64>> = match &a.points {
        Some(p) => read_points_file(p)?.points().to_vec(),
        None => a.point.iter().map(|v| v.0.clone()).collect(),
    };
    if let Some(p) = points.iter().find(|p| p.len() != k.dim()) {
        return Err(bad(format!(
            "point {p:?} does not have {} coordinates",
            k.dim()
        )));
    }
    let mut r = Report::new("gauge", a);
    dimension_constants(&mut r, k.dim());
    let header: Vec<String> = (1..=k.dim())
        .map(|i| format!("x{i}"))
        .chain(["gauge".into(), "dual_gauge".into()])
        .collect();
    let rows = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| num(x))
                .chain([num(k.gauge(p)), num(k.dual_gauge(p))])
                .collect()
        })
        .collect();
    r.table_owned("gauge.csv", header, rows);
    r.summary("points", points.len());
    Ok(r)
}

fn distances(body: &ConvexBody, set: &PointSet, t_max: f64, dual: bool) -> Result<GapReport> {
    if dual {
        dual_distance_set(set, body, t_max)
    } else {
        distance_set(set, body, t_max)
    }
}

fn distset(a: &DistsetArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let set = load_points(&a.points)?;
    let mut r = Report::new("distset", a);
    dimension_constants(&mut r, k.dim());
    r.summary("points", set.len());
    let report = distances(&k, &set, a.tmax, a.dual)?;
    gap_tables(&mut r, &report);
    Ok(r)
}

fn gaps(a: &GapsArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let set = load_points(&a.points)?;
    let report = distances(&k, &set, a.tmax, a.dual)?;
    let found = gap_scan(&report, a.eps, a.t0)?;
    let mut r = Report::new("gaps", a);
    dimension_constants(&mut r, k.dim());
    r.table(
        "gaps.csv",
        &["start", "length"],
        found.iter().map(|&(s, l)| vec![num(s), num(l)]).collect(),
    );
    r.summary("points", set.len());
    r.summary("distances", report.distances.len());
    r.summary("gaps", found.len());
    Ok(r)
}

fn scan_rows(scan: &FourierScan) -> Vec<Vec<String>> {
    scan.rows
        .iter()
        .map(|row| {
            vec![
                num(row.t),
                row.eta_index.to_string(),
                num(row.value.re),
                num(row.value.im),
                num(row.value.norm()),
            ]
        })
        .collect()
}

const SCAN_HEADER: [&str; 5] = ["t", "eta_index", "re", "im", "abs"];

fn direction_rows(dirs: &[Vec<f64>]) -> (Vec<String>, Vec<Vec<String>>) {
    let d = dirs.first().map_or(0, Vec::len);
    let header = ["eta_index".to_string()]
        .into_iter()
        .chain((1..=d).map(|i| format!("eta{i}")))
        .collect();
    let rows = dirs
        .iter()
        .enumerate()
        .map(|(k, e)| {
            [k.to_string()]
                .into_iter()
                .chain(e.iter().map(|&x| num(x)))
                .collect()
        })
        .collect();
    (header, rows)
}

fn ftscan(a: &FtscanArgs) -> Result<Report> {
    let mu = load_measure(&a.source)?;
    let dirs: Vec<Vec<f64>> = match a.directions {
        Some(n) if mu.dim() == 2 => DirectionGrid::circle(n, true).directions,
        Some(_) => {
            return Err(bad(
                "--directions is available in the plane only; use --eta",
            ))
        }
        None => a
            .eta
            .iter()
            .map(|v| unit(v, mu.dim()))
            .collect::<Result<_>>()?,
    };
    if a.steps == 0 || !(a.tmax >= a.tmin) {
        return Err(bad("need tmin ≤ tmax and at least one step"));
    }
    let ts: Vec<f64> = (0..=a.steps)
        .map(|k| a.tmin + (a.tmax - a.tmin) * k as f64 / a.steps as f64)
        .collect();
    let scan = FourierScan::along(&mu, &ts, &dirs);
    let mut r = Report::new("ftscan", a);
    dimension_constants(&mut r, mu.dim());
    r.summary("total_mass", mu.total_mass());
    r.summary("lipschitz", scan.lipschitz);
    r.summary("max_abs", scan.max_abs());
    r.table("scan.csv", &SCAN_HEADER, scan_rows(&scan));
    let (header, rows) = direction_rows(&dirs);
    r.table_owned("directions.csv", header, rows);
    Ok(r)
}

fn project(a: &ProjectArgs) -> Result<Report> {
    let mu = load_measure(&a.source)?;
    let eta = unit(&a.eta, mu.dim())?;
    let line = project_measure(&mu, &eta, a.bins)?;
    let mut r = Report::new("project", a);
    dimension_constants(&mut r, mu.dim());
    r.table(
        "atoms.csv",
        &["location", "mass"],
        line.atoms
            .iter()
            .map(|&(x, m)| vec![num(x), num(m)])
            .collect(),
    );
    let density = line
        .masses
        .iter()
        .enumerate()
        .map(|(i, &m)| vec![num(line.edges[i]), num(line.edges[i + 1]), num(m)]);
    r.table("density.csv", &["left", "right", "mass"], density.collect());
    r.summary("atoms", line.atoms.len());
    r.summary("atom_mass", line.atom_mass());
    r.summary("atom_energy", line.atom_energy());
    r.summary("density_mass", line.density_mass());
    Ok(r)
}

fn wiener(a: &WienerArgs) -> Result<Report> {
    let mu = load_measure(&a.source)?;
    let eta = unit(&a.eta, mu.dim())?;
    let w = wiener_atom_mass(&mu, &eta, a.horizon, a.samples)?;
    let line = project_measure(&mu, &eta, convexlab::measure::DEFAULT_BINS)?;
    let mut r = Report::new("wiener", a);
    dimension_constants(&mut r, mu.dim());
    r.summary("wiener", w);
    r.summary("sqrt_wiener", w.sqrt());
    r.summary("atom_energy", line.atom_energy());
    r.table(
        "wiener.csv",
        &["horizon", "wiener", "atom_energy"],
        vec![vec![num(a.horizon), num(w), num(line.atom_energy())]],
    );
    Ok(r)
}

fn decay(a: &DecayArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let mesh = triangulate_boundary(&k, a.resolution)?;
    let center = unit(&a.center, k.dim())?;
    let piece = mesh.restrict(|i| geodesic_distance(mesh.normal(i), &center) < a.rcap);
    if !(piece.total_mass() > 0.0) {
        return Err(Error::HypothesisViolation(format!(
            "the cap of radius {} around {} carries no surface mass",
            a.rcap, a.center
        )));
    }
    let mut theta: Vec<Vec<f64>> = (0..piece.len()).map(|i| piece.normal(i).to_vec()).collect();
    theta.sort_by(|x, y| {
        x.iter()
            .zip(y)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    theta.dedup();
    let table = decay_scan(&piece.to_measure(), &theta, a.delta, &a.t, a.spacing)?;
    let mut r = Report::new("decay", a);
    dimension_constants(&mut r, k.dim());
    r.summary("piece_mass", piece.total_mass());
    r.summary("directions", table.directions.len());
    r.table(
        "decay.csv",
        &["t", "sup", "argmax_eta_index", "cert_err"],
        table
            .rows
            .iter()
            .map(|row| {
                vec![
                    num(row.t),
                    num(row.sup),
                    row.argmax.to_string(),
                    num(row.cert_err),
                ]
            })
            .collect(),
    );
    r.table("scan.csv", &SCAN_HEADER, scan_rows(&table.scan));
    let (header, rows) = direction_rows(&table.directions);
    r.table_owned("directions.csv", header, rows);
    Ok(r)
}

fn goodness_tables(r: &mut Report, n: usize, report: &GoodnessReport) {
    r.table(
        "goodness.csv",
        &["shell_radius", "sup_est", "cert_err"],
        report
            .shells
            .iter()
            .map(|s| vec![num(s.radius), num(s.sup), num(s.cert_err)])
            .collect(),
    );
    let bound = 1.0 / (2f64.sqrt() * n as f64);
    r.table(
        "summary.csv",
        &["N", "eps_hat", "lower_bound_1_over_sqrt2N"],
        vec![vec![n.to_string(), num(report.eps_hat), num(bound)]],
    );
    r.summary("eps_hat", report.eps_hat);
    r.summary("max_cert_err", report.max_cert_err());
    r.summary("lower_bound_1_over_sqrt2N", bound);
}

fn goodness(a: &GoodnessArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    if k.dim() != 2 {
        return Err(bad(
            "cap families are built on the circle of normals; the body must be planar",
        ));
    }
    let caps = CapFamily::upper_half_circle(a.n, a.rcap)?;
    let mesh = triangulate_boundary(&k, a.resolution)?;
    let good = construct_good_measure(&k, &mesh, &caps)?;
    let search = StableSearch::for_caps(&caps, a.delta);
    let mut r = Report::new("goodness", a);
    dimension_constants(&mut r, 2);
    r.constant("target", search.target);
    r.constant("cert_target", search.cert_target);
    match a.cutoff {
        Some(cutoff) => {
            let report =
                goodness_profile_certified(&good.measure, cutoff, &window(cutoff), a.delta)?;
            r.summary("cutoff", cutoff);
            goodness_tables(&mut r, a.n, &report);
        }
        None => {
            let found = stabilized_goodness(&good.measure, &search)?;
            r.summary("cutoff", found.cutoff);
            r.summary("doublings", found.doublings);
            r.summary("stabilized", found.stabilized);
            goodness_tables(&mut r, a.n, &found.report);
            if !found.stabilized {
                r.failure = Some(Error::NumericBudget(format!(
                    "no stable cutoff after {} doublings; last ε̂ = {}",
                    found.doublings, found.report.eps_hat
                )));
            }
        }
    }
    Ok(r)
}

fn audit(a: &AuditArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let p = k
        .as_polytope()
        .ok_or_else(|| Error::InvalidBody("the audit needs a polytope".into()))?;
    let mu = match &a.measure {
        Some(m) => read_measure(m)?,
        None => triangulate_boundary(&k, a.resolution)?.to_probability(),
    };
    let report = polytope_bound_audit(&k, &mu, a.horizon, a.samples, a.tolerance)?;
    let mut r = Report::new("audit", a);
    dimension_constants(&mut r, k.dim());
    r.constant("facet_directions", report.directions);
    r.summary("best_facet", report.best_facet);
    r.summary("best_direction_mass", report.best_direction_mass);
    r.summary("wiener", report.wiener);
    r.summary("sqrt_wiener", report.wiener.sqrt());
    r.summary("lower_bound_1_over_sqrt2N", report.lower_bound);
    r.summary("passed", report.passed);
    let normal = &p.normals()[report.best_facet];
    let mut row = vec![report.best_facet.to_string()];
    row.extend(normal.iter().map(|&x| num(x)));
    row.extend([
        num(report.best_direction_mass),
        num(report.wiener),
        num(report.lower_bound),
    ]);
    let header: Vec<String> = ["facet".to_string()]
        .into_iter()
        .chain((1..=k.dim()).map(|i| format!("n{i}")))
        .chain(["mass".into(), "wiener".into(), "lower_bound".into()])
        .collect();
    r.table_owned("audit.csv", header, vec![row]);
    if !report.passed {
        r.failure = Some(Error::HypothesisViolation(format!(
            "sqrt(wiener) = {} is below m/√2 − {} = {}",
            report.wiener.sqrt(),
            a.tolerance,
            report.best_direction_mass / 2f64.sqrt() - a.tolerance
        )));
    }
    Ok(r)
}

fn bourgain(a: &BourgainArgs) -> Result<Report> {
    let k = read_body(&a.body)?.normalized_into_unit_ball();
    let sigma = match &a.measure {
        Some(m) => read_measure(m)?,
        None => triangulate_boundary(&k, a.resolution)?.to_probability(),
    };
    let grid = a.grid.unwrap_or(if k.dim() == 3 { 64 } else { 256 });
    let f = match &a.set {
        Some(s) => read_set(s)?,
        None => GridIndicator::seeded_blobs(k.dim(), grid, a.eps, a.seed)?,
    };
    let cutoff = a.cutoff.unwrap_or(1.0 / a.delta);
    let plan = LacunaryPlan::geometric(a.ratio, a.shells, a.delta, cutoff)?;
    let out = lacunary_search(&f, &sigma, &plan, a.goodness)?;
    let c = BourgainConstants::new(f.dim());
    let mut r = Report::new("bourgain", a);
    dimension_constants(&mut r, f.dim());
    r.constant("theta", c.theta);
    r.constant("eta", c.eta(out.measure));
    r.constant("low_band", c.low_band);
    r.constant("positivity", c.positivity);
    r.constant("j0", plan.j0());
    r.constant("j_bound", out.j_bound);
    r.constant("cutoff", cutoff);
    r.summary("body_scale", k.scale());
    r.summary("grid", grid);
    r.summary("measure", out.measure);
    r.summary("target", out.target);
    r.summary("hypothesis_met", out.hypothesis_met);
    r.summary(
        "verdict",
        match out.verdict {
            Verdict::Found { j } => format!("found j = {j}"),
            Verdict::HypothesisViolation => "none".to_string(),
        },
    );
    let rows = out
        .steps
        .iter()
        .map(|s| {
            vec![
                s.j.to_string(),
                num(plan.scale(s.j)),
                num(s.split.low),
                num(s.split.middle),
                num(s.split.high),
                num(s.direct),
                if s.positive {
                    "positive"
                } else {
                    "inconclusive"
                }
                .to_string(),
            ]
        })
        .collect();
    r.table(
        "bourgain.csv",
        &["j", "t_j", "I1", "I2", "I3", "direct", "verdict"],
        rows,
    );
    if out.verdict == Verdict::HypothesisViolation {
        r.failure = Some(Error::HypothesisViolation(format!(
            "no scale up to j = {} has certified positive correlation",
            out.steps.last().map_or(plan.j0(), |s| s.j)
        )));
    }
    Ok(r)
}

fn zeros(a: &ZerosArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let ledger = radial_zero_scan(&k, (a.from, a.to), a.steps, a.resolution)?;
    let mut r = Report::new("zeros", a);
    dimension_constants(&mut r, k.dim());
    r.constant(
        "expected_phase",
        (PI / 2.0 + k.dim() as f64 * PI / 4.0).rem_euclid(PI),
    );
    r.summary("zeros", ledger.zeros.len());
    r.summary("exact_radial", ledger.exact_radial);
    r.summary("tail_spacing", ledger.tail_spacing(a.tail));
    r.summary("tail_deviation", ledger.tail_deviation(a.tail));
    r.summary("phase_offset", ledger.phase_offset(a.tail));
    let rows = ledger
        .zeros
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            vec![
                num(z),
                if i == 0 {
                    String::new()
                } else {
                    num(ledger.spacings[i - 1])
                },
            ]
        })
        .collect();
    r.table("zeros.csv", &["zero_radius", "spacing"], rows);
    Ok(r)
}

fn spectrum(a: &SpectrumArgs) -> Result<Report> {
    let k = read_body(&a.body)?;
    let set = load_points(&a.points)?;
    let out = spectrum_gap_pipeline(&set, &k, a.side, a.tmax, a.min_gap, a.resolution)?;
    let mut r = Report::new("spectrum", a);
    dimension_constants(&mut r, k.dim());
    r.summary("points", set.len());
    r.summary("residual", out.residual);
    r.summary("kept", out.sparse.len());
    let header: Vec<String> = (1..=set.dim()).map(|i| format!("x{i}")).collect();
    let sparse = out
        .sparse
        .points()
        .iter()
        .map(|p| p.iter().map(|&x| num(x)).collect())
        .collect();
    r.table(
        "gaps.csv",
        &["start", "length"],
        out.gaps
            .iter()
            .map(|&(s, l)| vec![num(s), num(l)])
            .collect(),
    );
    r.table(
        "distances.csv",
        &["distance"],
        out.report.distances.iter().map(|&d| vec![num(d)]).collect(),
    );
    r.table_owned("sparse.csv", header, sparse);
    r.summary("distances", out.report.distances.len());
    r.summary("gaps", out.gaps.len());
    Ok(r)
}
