use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use hyperspace::demos::{self, fmt17, Claim, QuotientConfig, QuotientSummary};
use hyperspace::formats::{parse_action, parse_coords, parse_finite_space, parse_points};
use hyperspace::quotient::{hausdorff_quotient, QuotientParams, OrbitParams};
use hyperspace::{
    directed_hausdorff, disk_pullback_metric, hausdorff_distance, hausdorff_distance_fast, CompactSet, CoordMetric,
    FiniteSpace, Point, Report, Space, SpatialIndex,
};

use crate::{Failure, RunConfig};

#[derive(Serialize)]
struct RunReport<'a, T: Serialize> {
    command: &'a str,
    config: &'a RunConfig,
    pass: bool,
    checks: &'a Report,
    result: T,
}

/// Print failing checks, write the JSON report when asked, and return the
/// overall verdict.
pub fn finish<T: Serialize>(config: &RunConfig, command: &str, checks: &Report, result: T) -> Result<bool, Failure> {
    let pass = checks.passed();
    for f in checks.failures() {
        println!("FAIL {}: {} (residual {})", f.check, f.witness, fmt17(f.residual));
    }
    println!(
        "{}: {} of {} checks passed",
        if pass { "PASS" } else { "FAIL" },
        checks.records.iter().filter(|r| r.pass).count(),
        checks.len()
    );
    if let Some(path) = &config.output {
        let report = RunReport {
            command,
            config,
            pass,
            checks,
            result,
        };
        let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?;
        fs::write(path, text + "\n")?;
    }
    Ok(pass)
}

pub enum MetricChoice {
    Coord(CoordMetric),
    Matrix { path: String, space: FiniteSpace },
}

pub fn metric_choice(config: &RunConfig) -> Result<MetricChoice, Failure> {
    match config.metric.as_str() {
        "euclid-cutoff" => Ok(MetricChoice::Coord(CoordMetric::EuclidCutoff)),
        "disk-pullback" => Ok(MetricChoice::Coord(disk_pullback_metric())),
        m => match m.strip_prefix("matrix:") {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                let space = parse_finite_space(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
                Ok(MetricChoice::Matrix {
                    path: path.to_string(),
                    space,
                })
            }
            None => Err(Failure::Usage(format!(
                "unknown metric `{m}`; expected euclid-cutoff, disk-pullback or matrix:<path>"
            ))),
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: hyperspace::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn dimension(clouds: &[&[Vec<f64>]]) -> usize {
    clouds.iter().find_map(|c| c.first().map(Vec::len)).unwrap_or(1)
}

#[derive(Serialize)]
struct DistResult {
    size_a: usize,
    size_b: usize,
    directed_ab: f64,
    directed_ba: f64,
    hausdorff: f64,
    fast: Option<f64>,
}

pub fn dist(config: &RunConfig, a: &Path, b: &Path) -> Result<bool, Failure> {
    let (ta, tb) = (read(a)?, read(b)?);
    let (sa, sb) = match metric_choice(config)? {
        MetricChoice::Coord(m) => {
            let (ca, cb) = (with_path(a, parse_coords(&ta))?, with_path(b, parse_coords(&tb))?);
            let space = Space::coordinate(config.metric.clone(), dimension(&[&ca, &cb]), m);
            (
                with_path(a, CompactSet::from_coords(space.clone(), ca))?,
                with_path(b, CompactSet::from_coords(space, cb))?,
            )
        }
        MetricChoice::Matrix { path, space } => {
            let space = Space::finite(path, space);
            let pa = with_path(a, parse_points(&ta, &space))?;
            let pb = with_path(b, parse_points(&tb, &space))?;
            (CompactSet::new(space.clone(), pa)?, CompactSet::new(space, pb)?)
        }
    };
    let directed_ab = directed_hausdorff(&sa, &sb)?;
    let directed_ba = directed_hausdorff(&sb, &sa)?;
    let hausdorff = hausdorff_distance(&sa, &sb)?;
    println!("|A| = {}, |B| = {}", sa.len(), sb.len());
    println!("d(A -> B) = {}", fmt17(directed_ab));
    println!("d(B -> A) = {}", fmt17(directed_ba));
    println!("d_H(A, B) = {}", fmt17(hausdorff));
    let mut checks = Report::new();
    let fast = if config.fast {
        let v = hausdorff_distance_fast(&sa, &sb, &SpatialIndex::build(&sa), &SpatialIndex::build(&sb))?;
        println!("fast kernel = {}", fmt17(v));
        let same = v.to_bits() == hausdorff.to_bits();
        let witness = format!("fast {} vs brute force {}", fmt17(v), fmt17(hausdorff));
        if same {
            checks.pass("dist/fast-equals-oracle", witness, 0.0);
        } else {
            checks.fail("dist/fast-equals-oracle", witness, (v - hausdorff).abs());
        }
        Some(v)
    } else {
        None
    };
    finish(
        config,
        "dist",
        &checks,
        DistResult {
            size_a: sa.len(),
            size_b: sb.len(),
            directed_ab,
            directed_ba,
            hausdorff,
            fast,
        },
    )
}

fn quotient_params(config: &RunConfig, eps: f64, budget: usize, cluster_tol: f64, delta: f64, scale: f64) -> Result<QuotientParams, Failure> {
    Ok(QuotientParams {
        orbit: OrbitParams::new(config.eps.unwrap_or(eps), config.budget.unwrap_or(budget))?,
        cluster_tol: config.cluster_tol.unwrap_or(cluster_tol),
        delta: config.delta.unwrap_or(delta),
        scale: config.scale.unwrap_or(scale),
    })
}

fn print_quotient(s: &QuotientSummary) {
    println!("classes: {}", s.class_count);
    for (i, c) in s.classes.iter().enumerate() {
        let shown: Vec<&str> = c.iter().take(6).map(String::as_str).collect();
        let more = if c.len() > 6 { format!(" ... ({} points)", c.len()) } else { String::new() };
        println!("  class {i}: {{{}}}{more}", shown.join(", "));
    }
    if s.class_count <= 16 {
        println!("d_H matrix:");
        for row in &s.dmat {
            let cells: Vec<String> = row.iter().map(|d| format!("{d:.6}")).collect();
            println!("  [{}]", cells.join(", "));
        }
    }
    println!("U: {}", s.u_used);
    if !s.diagnostics.removed.is_empty() {
        println!("removed samples: {:?}", s.diagnostics.removed);
    }
}

fn write_plot(config: &RunConfig, s: &QuotientSummary) -> Result<(), Failure> {
    if let Some(path) = &config.plot {
        let mut out = String::from("class,x,y,size\n");
        for (i, (p, c)) in s.plot.iter().zip(&s.classes).enumerate() {
            let _ = writeln!(out, "{i},{},{},{}", p[0], p[1], c.len());
        }
        fs::write(path, out)?;
    }
    Ok(())
}

pub fn quotient(config: &RunConfig, points: Option<&Path>, action_path: &Path) -> Result<bool, Failure> {
    let doc = with_path(action_path, parse_action(&read(action_path)?))?;
    let permutations = doc.has_permutations();
    let (space, samples): (Arc<Space>, Vec<Point>) = match metric_choice(config)? {
        MetricChoice::Matrix { path, space } => {
            let space = Space::finite(path, space);
            let samples = match points {
                Some(p) => with_path(p, parse_points(&read(p)?, &space))?,
                None => space.points().expect("finite space"),
            };
            (space, samples)
        }
        MetricChoice::Coord(m) => {
            let p = points.ok_or_else(|| Failure::Usage("a point file is required with a coordinate metric".into()))?;
            let coords = with_path(p, parse_coords(&read(p)?))?;
            if permutations {
                // permutation tables index the samples, so the space is the sample itself
                let space = Space::finite(config.metric.clone(), with_path(p, FiniteSpace::from_points(coords, &m))?);
                let samples = space.points().expect("finite space");
                (space, samples)
            } else {
                let space = Space::coordinate(config.metric.clone(), dimension(&[&coords]), m);
                (space, coords.into_iter().map(Point::Coords).collect())
            }
        }
    };
    let mut action = with_path(action_path, doc.into_action())?;
    if let Some(s) = config.snap {
        action = action.with_snap(s);
    }
    let params = quotient_params(config, 0.01, 10_000, 0.1, 0.02, 10.0)?;
    let q = hausdorff_quotient(&space, &samples, &action, params, None)?;
    let summary = QuotientSummary::new(&q);
    print_quotient(&summary);
    write_plot(config, &summary)?;

    let mut checks = Report::new();
    let mut closest = f64::INFINITY;
    for i in 0..q.dmat.len() {
        for j in i + 1..q.dmat.len() {
            closest = closest.min(q.dmat[i][j]);
        }
    }
    let witness = format!("closest pair of classes at {}", fmt17(closest));
    if q.len() < 2 || closest > params.cluster_tol {
        checks.pass("quotient/classes-separated", witness, 0.0);
    } else {
        checks.fail("quotient/classes-separated", witness, params.cluster_tol - closest);
    }
    if !q.diagnostics.unsaturated.is_empty() {
        println!(
            "note: {} orbit closures hit the budget",
            q.diagnostics.unsaturated.len()
        );
    }
    finish(config, "quotient", &checks, summary)
}

fn claims_report(claims: &[Claim]) -> Report {
    let mut r = Report::new();
    for c in claims {
        let witness = format!("claimed {}, computed {}", c.claimed, c.computed);
        if c.pass {
            r.pass(c.label.clone(), witness, 0.0);
        } else {
            r.fail(c.label.clone(), witness, 1.0);
        }
    }
    r
}

fn print_claims(claims: &[Claim]) {
    for c in claims {
        println!(
            "[{}] {}: claimed {}, computed {}",
            if c.pass { "pass" } else { "FAIL" },
            c.label,
            c.claimed,
            c.computed
        );
    }
}

fn demo_config(config: &RunConfig, base: QuotientConfig) -> QuotientConfig {
    QuotientConfig {
        samples: config.n.unwrap_or(base.samples),
        eps: config.eps.unwrap_or(base.eps),
        budget: config.budget.unwrap_or(base.budget),
        delta: config.delta.unwrap_or(base.delta),
        scale: config.scale.unwrap_or(base.scale),
        cluster_tol: config.cluster_tol.unwrap_or(base.cluster_tol),
        ..base
    }
}

pub fn example(config: &RunConfig, name: &str) -> Result<bool, Failure> {
    println!("example {name} (seed {})", config.seed);
    match name {
        "example1-lines" => {
            let d = demos::example1_lines(config.n.unwrap_or(1000))?;
            println!("samples per line: {}, |t| <= {}", d.samples_per_line, d.extent);
            println!("euclid-cutoff d_C(L1, L2) = {}", fmt17(d.euclid_l1_l2));
            for (n, v) in &d.disk_to_vertical {
                println!("disk-pullback d'(L{n}, vertical) = {}", fmt17(*v));
            }
            print_claims(&d.claims);
            finish(config, name, &claims_report(&d.claims), &d)
        }
        "halfline-scaling" => {
            let d = demos::halfline_scaling(demo_config(config, QuotientConfig::halfline()))?;
            print_quotient(&d.quotient);
            println!("{:<9} {:>7} {:>9} {:>7} {:>8} {:>12}", "U", "samples", "witnesses", "stable", "clusters", "semi-stable");
            for r in &d.u_table {
                println!(
                    "{:<9} {:>7} {:>9} {:>7} {:>8} {:>12}",
                    r.name, r.samples, r.witnesses, r.stable, r.clusters, r.semi_stable
                );
            }
            println!(
                "orbit classes {} vs quotient classes {}: {} (the group is not compact; a mismatch is expected)",
                d.orbit_classes,
                d.quotient.class_count,
                if d.topological_match { "match" } else { "mismatch" }
            );
            print_claims(&d.claims);
            write_plot(config, &d.quotient)?;
            finish(config, name, &claims_report(&d.claims), &d)
        }
        "circle-rotation" => {
            let d = demos::circle_rotation(config.n.unwrap_or(64), config.k.unwrap_or(4), config.snap.unwrap_or(1e-9))?;
            print_quotient(&d.quotient);
            println!("minimal inter-orbit d_H = {}, tol = {}", fmt17(d.min_inter_orbit), fmt17(d.tol));
            print_claims(&d.claims);
            write_plot(config, &d.quotient)?;
            finish(config, name, &claims_report(&d.claims), &d)
        }
        "morse-circle" => {
            let cfg = demo_config(config, QuotientConfig::morse());
            let d = demos::morse_circle(cfg, config.degenerate, Some(4 * cfg.samples))?;
            print_quotient(&d.quotient);
            print_claims(&d.claims);
            write_plot(config, &d.quotient)?;
            finish(config, name, &claims_report(&d.claims), &d)
        }
        "collision-family" => {
            let d = demos::collision_family(config.n.unwrap_or(100), config.eps.unwrap_or(0.1))?;
            for f in &d.families {
                println!(
                    "{}: N = {}, tail residual {}, {}",
                    f.name,
                    f.threshold.map_or("none".into(), |n| n.to_string()),
                    fmt17(f.tail_residual),
                    f.accumulation
                );
            }
            print_claims(&d.claims);
            finish(config, name, &claims_report(&d.claims), &d)
        }
        other => Err(Failure::Usage(format!(
            "unknown example `{other}`; expected one of {}",
            demos::NAMES.join(", ")
        ))),
    }
}
