use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use hyperspace::battery::{random_space, rng};
use hyperspace::demos::{circle_points, circle_space, halfline_action, halfline_samples, halfline_space, morse_action, QuotientConfig};
use hyperspace::quotient::{
    e_image, fiber_embedding_check, hausdorff_quotient, match_classes, orbit_closure, stability_probe, Generator,
    GroupAction, OrbitParams, QuotientParams,
};
use hyperspace::{hausdorff_distance, CompactSet, CoordMetric, FiniteSpace, Point, Space};

fn params(eps: f64) -> OrbitParams {
    OrbitParams::new(eps, 10_000).unwrap()
}

fn apply(g: &Generator, p: &Point) -> Point {
    match g {
        Generator::Map(f) => Point::Coords(f(p.coords().unwrap())),
        Generator::Permutation(t) => Point::Id(t[p.id().unwrap()]),
    }
}

#[test]
fn orbit_closure_is_idempotent_and_invariant() {
    let x = circle_space();
    let action = morse_action(5, 2, false);
    let eps = 0.02;
    for p in circle_points(12).into_iter().map(Point::Coords) {
        let o = orbit_closure(&x, &p, &action, params(eps)).unwrap();
        assert!(o.saturated);
        for g in action.generators() {
            for m in o.points.members() {
                assert!(o.points.distance_to(&apply(g, m)) < eps);
            }
        }
        for m in o.points.members().iter().step_by(7) {
            let again = orbit_closure(&x, m, &action, params(eps)).unwrap();
            assert!(hausdorff_distance(&again.points, &o.points).unwrap() <= 2.0 * eps);
        }
    }
}

/// Orbits of the group generated by permutations, by union-find.
fn orbit_partition(n: usize, perms: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            i = p[i];
        }
        i
    }
    for t in perms {
        for (i, &j) in t.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

#[test]
fn permutation_quotient_matches_orbit_partition() {
    let mut r = rng(17);
    for trial in 0..30 {
        let n = r.gen_range(2..=10);
        let x = Space::finite("x", random_space(&mut r, n));
        let mut action = GroupAction::new();
        let mut perms = Vec::new();
        for _ in 0..r.gen_range(1..=2) {
            // a product of a few disjoint transpositions and a 3-cycle
            let mut t: Vec<usize> = (0..n).collect();
            let mut ids: Vec<usize> = (0..n).collect();
            ids.shuffle(&mut r);
            for c in ids.chunks(3).take(r.gen_range(1..=2)) {
                match c {
                    [a, b, c] => {
                        t[*a] = *b;
                        t[*b] = *c;
                        t[*c] = *a;
                    }
                    [a, b] => t.swap(*a, *b),
                    _ => {}
                }
            }
            action = action.with(format!("p{}", perms.len()), Generator::Permutation(t.clone()));
            perms.push(t);
        }
        let samples: Vec<Point> = (0..n).map(Point::Id).collect();
        let qp = QuotientParams {
            orbit: params(1e-9),
            cluster_tol: 1e-9,
            delta: 1e-6,
            scale: 2.0,
        };
        let q = hausdorff_quotient(&x, &samples, &action, qp, None).unwrap();
        let roots = orbit_partition(n, &perms);
        let a: Vec<usize> = q.assignment.iter().map(|c| c.unwrap()).collect();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(a[i] == a[j], roots[i] == roots[j], "trial {trial}: samples {i}, {j}");
            }
        }
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(q.len(), distinct.len());
    }
}

#[test]
fn classes_are_separated_and_closed() {
    let x = circle_space();
    let cfg = QuotientConfig::morse();
    let action = morse_action(cfg.fine, cfg.coarse, false);
    let samples: Vec<Point> = circle_points(cfg.samples).into_iter().map(Point::Coords).collect();
    let q = hausdorff_quotient(&x, &samples, &action, cfg.quotient().unwrap(), None).unwrap();
    for i in 0..q.len() {
        for j in 0..q.len() {
            if i != j {
                assert!(q.dmat[i][j] > cfg.cluster_tol, "classes {i} and {j} at {}", q.dmat[i][j]);
            }
        }
    }
    for (c, class) in q.classes.iter().enumerate() {
        for m in class.members().iter().step_by(5) {
            let o = orbit_closure(&x, m, &action, cfg.orbit().unwrap()).unwrap();
            let d = hausdorff_distance(&o.points, class).unwrap();
            assert!(d <= 2.0 * cfg.eps, "class {c}: closure of a member at {d}");
        }
    }
}

#[test]
fn halfline_probe_flags_the_origin() {
    let x = halfline_space();
    let cfg = QuotientConfig::halfline();
    let samples = halfline_samples(cfg.samples);
    let w = stability_probe(&x, &samples, &halfline_action(cfg.fine, cfg.coarse), cfg.orbit().unwrap(), cfg.delta, cfg.scale)
        .unwrap();
    assert!(!w.is_empty());
    assert!(w.iter().any(|w| w.i == 0));
    let last = samples.len() - 1;
    assert!(w.iter().any(|w| w.j == last));
    // interior samples never jump against each other
    assert!(w.iter().all(|w| w.i == 0 || w.j == last));
}

#[test]
fn e_image_preserves_input_order() {
    let x = circle_space();
    let samples: Vec<Point> = circle_points(8).into_iter().map(Point::Coords).collect();
    let action = GroupAction::new().with("r", Generator::rotation(1, 2));
    let images = e_image(&x, &samples, &action, params(1e-6)).unwrap();
    for (s, o) in samples.iter().zip(&images) {
        assert_eq!(&o.base, s);
        assert_eq!(o.points.len(), 2);
    }
}

#[test]
fn antipodal_fold_embeds() {
    // X = circle, Y = circle of doubled angles, q(x) = x^2
    let n = 24;
    let x = circle_space();
    let y = circle_space();
    let xs: Vec<Point> = circle_points(2 * n).into_iter().map(Point::Coords).collect();
    let ys: Vec<Point> = (0..n)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * (2 * i) as f64 / (2 * n) as f64;
            Point::Coords(vec![t.cos(), t.sin()])
        })
        .collect();
    let qmap: Vec<usize> = (0..2 * n).map(|i| i % n).collect();
    let r = fiber_embedding_check(&x, &xs, &y, &ys, &qmap, 0.05).unwrap();
    assert!(r.pass, "{:?}", r.collisions);
    assert!(r.min_separation > 0.0);
}

#[test]
fn collapsing_three_points() {
    let x = Space::finite("x", FiniteSpace::from_points((0..6).map(|i| vec![i as f64 * 0.1]).collect(), &CoordMetric::EuclidCutoff).unwrap());
    let y = Space::coordinate("y", 1, CoordMetric::EuclidCutoff);
    let xs: Vec<Point> = (0..6).map(Point::Id).collect();
    let ys: Vec<Point> = [0.0, 0.3, 0.4, 0.5].iter().map(|&v| Point::Coords(vec![v])).collect();
    // 0, 1, 2 collapse to one point
    let r = fiber_embedding_check(&x, &xs, &y, &ys, &[0, 0, 0, 1, 2, 3], 0.05).unwrap();
    assert!(r.pass);
    assert!((r.embedding_modulus - 0.1).abs() < 1e-12);

    // two far points of a 3-point space glued to one image point: fibers stay distinct
    let three = Space::finite("three", FiniteSpace::from_lower_triangle(3, None, &[0.2, 0.9, 0.8]).unwrap());
    let pair = Space::finite("pair", FiniteSpace::from_lower_triangle(2, None, &[0.5]).unwrap());
    let xs: Vec<Point> = (0..3).map(Point::Id).collect();
    let r = fiber_embedding_check(&three, &xs, &pair, &[Point::Id(0), Point::Id(1)], &[0, 1, 0], 0.1).unwrap();
    assert!(r.pass);
    // d_H({x0, x2}, {x1}) = max(0.2, 0.8)
    assert!((r.min_separation - 0.8).abs() < 1e-12);
    assert_eq!(r.continuity_modulus, 0.0);

    // far image points with nearly identical fibers
    let line = Space::coordinate("line", 1, CoordMetric::EuclidCutoff);
    let xs: Vec<Point> = [0.0, 1.0, 0.001, 0.999].iter().map(|&v| Point::Coords(vec![v])).collect();
    let ys: Vec<Point> = [0.0, 0.9].iter().map(|&v| Point::Coords(vec![v])).collect();
    let r = fiber_embedding_check(&line, &xs, &line, &ys, &[0, 0, 1, 1], 0.05).unwrap();
    assert!(!r.pass);
    assert_eq!(r.collisions.len(), 1);
}

#[test]
fn class_matching() {
    let x = circle_space();
    let sets = |pts: Vec<Vec<f64>>| -> Vec<CompactSet> {
        pts.into_iter().map(|p| CompactSet::from_coords(Arc::clone(&x), vec![p]).unwrap()).collect()
    };
    let a = sets(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
    let b = sets(vec![vec![-1.0, 0.001], vec![1.0, 0.001]]);
    assert_eq!(match_classes(&a, &b, 0.01), Some(vec![1, 0]));
    assert_eq!(match_classes(&a, &b, 1e-6), None);
    assert_eq!(match_classes(&a, &b[..1], 0.01), None);
}
