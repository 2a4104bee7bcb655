//! Verification batteries behind `hyperspace verify`.

use clap::ValueEnum;
use serde::Serialize;

use hyperspace::battery::{family_battery, space_battery};
use hyperspace::demos::{fmt17, inverse_family, pair_family, triple_family};
use hyperspace::hspace::{
    enumerate_finite, verify_compactness_net, verify_family_continuity, verify_pi1_open, verify_z_closed, HSpaceEnum,
    SequentialFamily, UniversalFamily,
};
use hyperspace::{epsilon_net, verify_metric_axioms, CompactSet, FiniteSpace, Report, Space};

use crate::commands::{finish, metric_choice, MetricChoice};
use crate::{Failure, RunConfig, Suite};

/// Enumerations are built for spaces up to this size.
const ENUM_LIMIT: usize = 8;

#[derive(Serialize)]
struct SuiteResult {
    suite: Suite,
    seed: u64,
    spaces: usize,
    families: usize,
    thresholds: Vec<(String, Option<usize>)>,
}

pub fn verify(config: &RunConfig, suite: Suite) -> Result<bool, Failure> {
    let provided = match metric_choice(config)? {
        MetricChoice::Matrix { path, space } => Some((path, space)),
        MetricChoice::Coord(_) => None,
    };
    let mut checks = Report::new();
    let mut result = SuiteResult {
        suite,
        seed: config.seed,
        spaces: 0,
        families: 0,
        thresholds: Vec::new(),
    };
    let label = suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    println!("verify {label} (seed {})", config.seed);
    match suite {
        Suite::Metric => {
            let tol = config.tol.unwrap_or(1e-12);
            let spaces = named(space_battery(config.seed, 20, 1, ENUM_LIMIT), provided);
            for (name, s) in &spaces {
                metric_space(&mut checks, name, s, tol)?;
            }
            result.spaces = spaces.len();
        }
        Suite::Universal => {
            let spaces = named(space_battery(config.seed, 20, 1, 6), provided);
            let radii: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
            for (name, s) in &spaces {
                let e = enumerate(name, s)?;
                let u = UniversalFamily::over(&e);
                record(&mut checks, "universal/closed", name, verify_z_closed(&e, &u));
                record(&mut checks, "universal/open", name, verify_pi1_open(&e, &u, &radii)?);
            }
            result.spaces = spaces.len();
        }
        Suite::Continuity => {
            let eps = config.eps.unwrap_or(0.1);
            let terms = config.n.unwrap_or(100);
            let expected = (1..=terms).find(|&n| 1.0 / (n as f64) < eps);
            for (name, f) in [
                ("{0, 1/n}", inverse_family(terms)?),
                ("{-1/n, 1/n}", pair_family(terms)?),
                ("{-1/n, 0, 1/n}", triple_family(terms)?),
            ] {
                let c = verify_family_continuity(&f, eps)?;
                println!(
                    "{name}: N({eps}) = {}",
                    c.threshold.map_or("none".into(), |n| n.to_string())
                );
                let witness = format!("{name}: N = {:?}, expected {:?}", c.threshold, expected);
                if c.threshold == expected && c.equivalence.is_empty() {
                    checks.pass("continuity/threshold", witness, 0.0);
                } else {
                    checks.fail("continuity/threshold", witness, c.tail_residual);
                    checks.extend(c.equivalence);
                }
                result.thresholds.push((name.to_string(), c.threshold));
            }
            let families = family_battery(config.seed, 100, 6);
            for (i, f) in families.iter().enumerate() {
                equivalence(&mut checks, i, f, eps)?;
            }
            result.families = families.len();
        }
        Suite::Compactness => {
            let eps = config.eps.unwrap_or(0.15);
            let unit: Vec<Vec<f64>> = (0..8).map(|i| vec![i as f64 / 7.0]).collect();
            let mut spaces = vec![(
                "8 points of [0,1]".to_string(),
                FiniteSpace::from_points(unit, &hyperspace::CoordMetric::EuclidCutoff)?,
            )];
            spaces.extend(named(space_battery(config.seed, 20, 1, ENUM_LIMIT), provided));
            for (name, s) in &spaces {
                let e = enumerate(name, s)?;
                let whole = CompactSet::whole(e.ambient().clone())?;
                let net = epsilon_net(&whole, eps)?;
                let r = verify_compactness_net(&e, eps, &net)?;
                println!("{name}: net of {} points, {} failures", net.len(), r.len());
                record(&mut checks, "compactness/net", name, r);
            }
            result.spaces = spaces.len();
        }
    }
    finish(config, "verify", &checks, result)
}

fn named(battery: Vec<FiniteSpace>, provided: Option<(String, FiniteSpace)>) -> Vec<(String, FiniteSpace)> {
    let mut out: Vec<(String, FiniteSpace)> = battery
        .into_iter()
        .enumerate()
        .map(|(i, s)| (format!("battery[{i}] n={}", s.len()), s))
        .collect();
    out.extend(provided);
    out
}

fn enumerate(name: &str, s: &FiniteSpace) -> Result<HSpaceEnum, Failure> {
    enumerate_finite(s.clone()).map_err(|e| Failure::Usage(format!("{name}: {e}")))
}

/// Append a verifier report, or a single passing record when it is empty.
fn record(checks: &mut Report, check: &str, name: &str, r: Report) {
    if r.is_empty() {
        checks.pass(check, name, 0.0);
    } else {
        for mut f in r.records {
            f.witness = format!("{name}: {}", f.witness);
            checks.records.push(f);
        }
    }
}

/// Point-level axioms, then the Hausdorff distance axioms and the empty-set
/// convention on the enumeration when the space is a metric.
fn metric_space(checks: &mut Report, name: &str, s: &FiniteSpace, tol: f64) -> Result<(), Failure> {
    let r = verify_metric_axioms(s, tol);
    let ok = r.is_empty();
    record(checks, "metric/axioms", name, r);
    if !ok || s.len() > ENUM_LIMIT {
        return Ok(());
    }
    let e = enumerate(name, s)?;
    let rows: Vec<Vec<f64>> = (0..e.len()).map(|i| (0..e.len()).map(|j| e.d(i, j)).collect()).collect();
    let h = FiniteSpace::from_matrix(None, rows)?;
    record(checks, "metric/hausdorff-axioms", name, verify_metric_axioms(&h, tol));
    let mut empty = Report::new();
    for j in 1..e.len() {
        if e.d(0, j) != 1.0 {
            empty.fail("metric/empty-set", format!("d_H(empty, #{j}) = {}", fmt17(e.d(0, j))), (e.d(0, j) - 1.0).abs());
        }
    }
    record(checks, "metric/empty-set", name, empty);
    Ok(())
}

fn equivalence(checks: &mut Report, i: usize, f: &SequentialFamily, eps: f64) -> Result<(), Failure> {
    let c = verify_family_continuity(f, eps)?;
    let name = format!("family[{i}] N={} over {}", f.len(), space_name(f));
    record(checks, "continuity/equivalence", &name, c.equivalence);
    Ok(())
}

fn space_name(f: &SequentialFamily) -> String {
    let s: &Space = f.limit().ambient();
    match s.as_finite() {
        Some(fs) => format!("{} points", fs.len()),
        None => s.name().to_string(),
    }
}
