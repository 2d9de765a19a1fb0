use convexlab::body::{ConvexBody, HPolytope};
use convexlab::io::{read_body, read_measure, read_set, write_body, write_measure, SetSpec};
use convexlab::measure::{ft_measure, AtomicMeasure};
use convexlab::mesh::triangulate_boundary;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bodies_round_trip_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let bodies = [
        ConvexBody::polytope(HPolytope::random(3, 5, &mut rng).unwrap()),
        ConvexBody::ellipsoid(2, vec![1.5, 0.25]).unwrap(),
        ConvexBody::superellipsoid(3, 3.5, vec![1.0, 2.0, 0.5]).unwrap(),
    ];
    for (i, k) in bodies.iter().enumerate() {
        let path = dir.path().join(format!("body{i}.json"));
        write_body(&path, k).unwrap();
        let back = read_body(&path).unwrap();
        for x in [[0.3, -0.7, 1.1], [2.0, 0.0, -0.5]] {
            let x = &x[..k.dim()];
            assert_eq!(back.gauge(x), k.gauge(x));
        }
    }
}

#[test]
fn measures_keep_normals_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let mu = triangulate_boundary(&ConvexBody::cube(2, 1.0).unwrap(), 8)
        .unwrap()
        .to_probability();
    let path = dir.path().join("mu.json");
    write_measure(&path, &mu).unwrap();
    let back = read_measure(&path).unwrap();
    assert!(back.has_normals());
    assert_eq!(back.points(), mu.points());
    assert_eq!(back.weights(), mu.weights());
    let plain = AtomicMeasure::new(1, vec![0.25, -1.0], vec![0.5, 0.5]).unwrap();
    write_measure(&path, &plain).unwrap();
    let back = read_measure(&path).unwrap();
    assert!(!back.has_normals());
    assert_eq!(ft_measure(&back, &[3.3]), ft_measure(&plain, &[3.3]));
}

#[test]
fn set_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.json");
    std::fs::write(
        &path,
        r#"{"type": "cells", "dim": 2, "cells_per_axis": 8, "cells": [[3, 4], [4, 4]]}"#,
    )
    .unwrap();
    let g = read_set(&path).unwrap();
    assert_eq!(g.count(), 2);
    assert_eq!(g.measure(), 2.0 * 0.25 * 0.25);
    let blobs: SetSpec = serde_json::from_str(
        r#"{"type": "blobs", "dim": 2, "cells_per_axis": 64, "fraction": 0.3, "seed": 4}"#,
    )
    .unwrap();
    let a = blobs.build().unwrap();
    assert_eq!(a, blobs.build().unwrap());
    assert!(a.measure() >= 0.3 * std::f64::consts::PI);
    std::fs::write(
        &path,
        r#"{"type": "cells", "dim": 2, "cells_per_axis": 8, "cells": [[0, 0]]}"#,
    )
    .unwrap();
    assert!(read_set(&path).is_err());
}
