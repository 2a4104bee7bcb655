//! Built-in demonstrations: lines in the plane under two metrics, the
//! scaling action on the compactified half line, rotations and gradient
//! flow on a circle, and colliding point families.
//!
//! Each demo returns a serializable result carrying a list of [`Claim`]s,
//! the expected value next to the computed one.

use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hausdorff::{hausdorff_distance, CompactSet};
use crate::hspace::{verify_family_continuity, verify_pi1_proper, ProperOutcome, SequentialFamily};
use crate::index::{hausdorff_distance_fast, SpatialIndex};
use crate::mds::classical_mds;
use crate::metric::{disk_pullback_metric, CoordMetric, FiniteSpace, Point, Space};
use crate::quotient::{
    compare_topological_quotient, e_image, hausdorff_quotient, match_classes, semi_stability_check, stability_probe,
    Diagnostics, Generator, GroupAction, OrbitParams, QuotientApprox, QuotientParams,
};

pub const NAMES: [&str; 5] = [
    "example1-lines",
    "halfline-scaling",
    "circle-rotation",
    "morse-circle",
    "collision-family",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub label: String,
    pub claimed: String,
    pub computed: String,
    pub pass: bool,
}

impl Claim {
    fn new(label: impl Into<String>, claimed: impl Into<String>, computed: impl Into<String>, pass: bool) -> Self {
        Self {
            label: label.into(),
            claimed: claimed.into(),
            computed: computed.into(),
            pass,
        }
    }
}

pub fn all_pass(claims: &[Claim]) -> bool {
    claims.iter().all(|c| c.pass)
}

/// Serializable view of a [`QuotientApprox`] with 2-D plot coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientSummary {
    pub class_count: usize,
    pub classes: Vec<Vec<String>>,
    pub representatives: Vec<usize>,
    pub assignment: Vec<Option<usize>>,
    pub dmat: Vec<Vec<f64>>,
    pub u_used: String,
    pub diagnostics: Diagnostics,
    /// Classical MDS coordinates of the classes under `d_H`.
    pub plot: Vec<Vec<f64>>,
}

impl QuotientSummary {
    pub fn new(q: &QuotientApprox) -> Self {
        Self {
            class_count: q.len(),
            classes: q.classes.iter().map(CompactSet::describe).collect(),
            representatives: q.representatives.clone(),
            assignment: q.assignment.clone(),
            dmat: q.dmat.clone(),
            u_used: q.u_used.clone(),
            diagnostics: q.diagnostics.clone(),
            plot: classical_mds(&q.dmat, 2),
        }
    }
}

/// Points of the line through the origin at angle `alpha`, `2 count + 1`
/// of them, evenly spaced in the disk image out to `|t| = extent`.
pub fn line_samples(alpha: f64, extent: f64, count: usize) -> Vec<Vec<f64>> {
    let r_max = extent / (1.0 + extent);
    let (s, c) = alpha.sin_cos();
    (-(count as i64)..=count as i64)
        .map(|k| {
            let r = r_max * k as f64 / count as f64;
            let t = r / (1.0 - r.abs());
            vec![t * c, t * s]
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LinesDemo {
    pub extent: f64,
    pub samples_per_line: usize,
    /// `d_C(L_1, L_2)` under cutoff Euclidean.
    pub euclid_l1_l2: f64,
    /// `(n, d'(L_n, vertical))` under the disk pullback metric.
    pub disk_to_vertical: Vec<(u32, f64)>,
    pub claims: Vec<Claim>,
}

fn fast_distance(a: &CompactSet, b: &CompactSet) -> Result<f64> {
    hausdorff_distance_fast(a, b, &SpatialIndex::build(a), &SpatialIndex::build(b))
}

/// Lines `L_n` of slope `n` through the origin. Under cutoff Euclidean any
/// two distinct lines are at distance 1; under the disk pullback metric
/// they approach the vertical line as `n` grows.
pub fn example1_lines(count: usize) -> Result<LinesDemo> {
    let extent = 1e4;
    let slopes = [1u32, 2, 4, 8, 16];
    let line = |space: &Arc<Space>, alpha: f64| CompactSet::from_coords(space.clone(), line_samples(alpha, extent, count));

    let euclid = Space::coordinate("plane/euclid-cutoff", 2, CoordMetric::EuclidCutoff);
    let (l1, l2) = (line(&euclid, 1f64.atan())?, line(&euclid, 2f64.atan())?);
    let euclid_l1_l2 = fast_distance(&l1, &l2)?;
    let brute = hausdorff_distance(&l1, &l2)?;

    let disk = Space::coordinate("plane/disk-pullback", 2, disk_pullback_metric());
    let vertical = line(&disk, PI / 2.0)?;
    let vidx = SpatialIndex::build(&vertical);
    let mut disk_to_vertical = Vec::new();
    for n in slopes {
        let l = line(&disk, (n as f64).atan())?;
        disk_to_vertical.push((n, hausdorff_distance_fast(&l, &vertical, &SpatialIndex::build(&l), &vidx)?));
    }
    let values: Vec<f64> = disk_to_vertical.iter().map(|&(_, d)| d).collect();
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    let last = *values.last().expect("five slopes");
    let claims = vec![
        Claim::new("d_C(L1, L2), cutoff Euclidean", "1", fmt17(euclid_l1_l2), euclid_l1_l2 == 1.0),
        Claim::new(
            "fast kernel equals brute force",
            "bitwise equal",
            fmt17(brute),
            brute.to_bits() == euclid_l1_l2.to_bits(),
        ),
        Claim::new(
            "d'(L_n, vertical) strictly decreasing, n = 1, 2, 4, 8, 16",
            "strictly decreasing",
            format!("{values:?}"),
            decreasing,
        ),
        Claim::new("d'(L_16, vertical) < 0.2", "< 0.2", fmt17(last), last < 0.2),
    ];
    Ok(LinesDemo {
        extent,
        samples_per_line: 2 * count + 1,
        euclid_l1_l2,
        disk_to_vertical,
        claims,
    })
}

/// Shared parameters for the quotient demos.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientConfig {
    pub samples: usize,
    pub eps: f64,
    pub budget: usize,
    pub delta: f64,
    pub scale: f64,
    pub cluster_tol: f64,
    /// Time steps `±2^j`, `-fine <= j <= coarse`, for continuous groups.
    pub fine: u32,
    pub coarse: u32,
}

impl QuotientConfig {
    pub fn halfline() -> Self {
        Self {
            samples: 101,
            eps: 0.01,
            budget: 10_000,
            delta: 0.02,
            scale: 10.0,
            cluster_tol: 0.1,
            fine: 7,
            coarse: 3,
        }
    }

    pub fn morse() -> Self {
        Self {
            samples: 64,
            eps: 0.02,
            budget: 10_000,
            delta: 0.15,
            scale: 5.0,
            cluster_tol: 0.1,
            fine: 5,
            coarse: 2,
        }
    }

    pub fn orbit(&self) -> Result<OrbitParams> {
        OrbitParams::new(self.eps, self.budget)
    }

    pub fn quotient(&self) -> Result<QuotientParams> {
        Ok(QuotientParams {
            orbit: self.orbit()?,
            cluster_tol: self.cluster_tol,
            delta: self.delta,
            scale: self.scale,
        })
    }
}

/// `[0, inf]` in the coordinate `s = t / (1 + t)`.
pub fn halfline_space() -> Arc<Space> {
    Space::coordinate("[0,inf] as [0,1]", 1, CoordMetric::EuclidCutoff)
}

/// Multiplication by `2^(±2^j)`.
pub fn halfline_action(fine: u32, coarse: u32) -> GroupAction {
    GroupAction::multiscale("scale", fine, coarse, |t| Generator::halfline_scale(2f64.powf(t)))
}

pub fn halfline_samples(count: usize) -> Vec<Point> {
    let last = (count.max(2) - 1) as f64;
    (0..count.max(2)).map(|i| Point::Coords(vec![i as f64 / last])).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct URow {
    pub name: String,
    pub samples: usize,
    pub witnesses: usize,
    pub stable: bool,
    pub clusters: usize,
    pub semi_stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HalflineDemo {
    /// Quotient with jump removal.
    pub quotient: QuotientSummary,
    /// Quotient with `U` the open interval.
    pub interior_quotient: QuotientSummary,
    pub u_table: Vec<URow>,
    pub endpoint_images: (Vec<String>, Vec<String>),
    /// Largest `d_H` between e-images of interior samples.
    pub interior_spread: f64,
    /// Orbit classes against quotient classes. The group is not compact,
    /// so a mismatch is expected.
    pub orbit_classes: usize,
    pub topological_match: bool,
    pub claims: Vec<Claim>,
}

/// Scaling action of the positive reals on `[0, inf]`: the fixed points 0
/// and inf are isolated orbits, every other orbit is dense, and the
/// quotient is a single point.
pub fn halfline_scaling(cfg: QuotientConfig) -> Result<HalflineDemo> {
    let x = halfline_space();
    let action = halfline_action(cfg.fine, cfg.coarse);
    let samples = halfline_samples(cfg.samples);
    let qp = cfg.quotient()?;
    let s = |p: &Point| p.coords().expect("coordinate point")[0];
    let interior = |p: &Point| s(p) > 0.0 && s(p) < 1.0;

    let q = hausdorff_quotient(&x, &samples, &action, qp, None)?;
    let qi = hausdorff_quotient(&x, &samples, &action, qp, Some(&interior))?;

    let opens: [(&str, bool, bool); 4] = [
        ("[0,inf]", true, true),
        ("(0,inf]", false, true),
        ("[0,inf)", true, false),
        ("(0,inf)", false, false),
    ];
    let mut u_table = Vec::new();
    for (name, zero, inf) in opens {
        let u: Vec<Point> = samples
            .iter()
            .filter(|p| interior(p) || (zero && s(p) == 0.0) || (inf && s(p) == 1.0))
            .cloned()
            .collect();
        let witnesses = stability_probe(&x, &u, &action, qp.orbit, cfg.delta, cfg.scale)?;
        let semi = semi_stability_check(&q, &x, &u, &action, qp, cfg.cluster_tol)?;
        u_table.push(URow {
            name: name.to_string(),
            samples: u.len(),
            witnesses: witnesses.len(),
            stable: witnesses.is_empty(),
            clusters: semi.clusters.len(),
            semi_stable: semi.pass,
        });
    }

    let images = e_image(&x, &samples, &action, qp.orbit)?;
    let (first, last) = (&images[0].points, &images[images.len() - 1].points);
    let inner: Vec<&CompactSet> = images[1..images.len() - 1].iter().map(|o| &o.points).collect();
    let interior_spread = inner
        .iter()
        .flat_map(|a| inner.iter().map(move |b| hausdorff_distance(a, b).expect("same ambient")))
        .fold(0.0, f64::max);
    let topo = compare_topological_quotient(&x, &samples, &action, &q, qp.orbit, cfg.cluster_tol)?;

    let only_open = |f: fn(&URow) -> bool| u_table.iter().all(|r| f(r) == (r.name == "(0,inf)"));
    let table_text = |f: fn(&URow) -> bool| {
        u_table
            .iter()
            .filter(|r| f(r))
            .map(|r| r.name.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let claims = vec![
        Claim::new("quotient classes, jump removal", "1", q.len().to_string(), q.len() == 1),
        Claim::new("quotient classes, U = (0,inf)", "1", qi.len().to_string(), qi.len() == 1),
        Claim::new("stable opens", "(0,inf)", table_text(|r| r.stable), only_open(|r| r.stable)),
        Claim::new(
            "semi-stable opens",
            "(0,inf)",
            table_text(|r| r.semi_stable),
            only_open(|r| r.semi_stable),
        ),
        Claim::new(
            "e(0) and e(inf) are the fixed points",
            "{0} and {inf}",
            format!("{:?} and {:?}", first.describe(), last.describe()),
            first.len() == 1 && last.len() == 1 && s(&first.members()[0]) == 0.0 && s(&last.members()[0]) == 1.0,
        ),
        Claim::new(
            "interior e-images agree",
            format!("d_H < {}", 2.0 * cfg.eps),
            fmt17(interior_spread),
            interior_spread < 2.0 * cfg.eps,
        ),
    ];
    Ok(HalflineDemo {
        quotient: QuotientSummary::new(&q),
        interior_quotient: QuotientSummary::new(&qi),
        u_table,
        endpoint_images: (first.describe(), last.describe()),
        interior_spread,
        orbit_classes: topo.orbit_classes.len(),
        topological_match: topo.pass,
        claims,
    })
}

/// `n` equally spaced points of the unit circle, starting at angle 0.
pub fn circle_points(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / n as f64;
            vec![a.cos(), a.sin()]
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationDemo {
    pub n: usize,
    pub k: usize,
    pub orbits: Vec<Vec<usize>>,
    pub min_inter_orbit: f64,
    pub tol: f64,
    pub quotient: QuotientSummary,
    pub witnesses: usize,
    pub topological_match: bool,
    pub claims: Vec<Claim>,
}

/// The cyclic group of order `k` rotating an `n`-point circle sample.
/// Orbits are computed twice: by the generic machinery and by index
/// arithmetic, and the quotient classes are matched against the latter at
/// half the smallest inter-orbit distance.
pub fn circle_rotation(n: usize, k: usize, snap: f64) -> Result<RotationDemo> {
    if n == 0 || k == 0 || n % k != 0 {
        return Err(Error::InvalidParameter(format!(
            "rotation order {k} must divide the sample size {n}"
        )));
    }
    let x = Space::finite(
        format!("circle/{n}"),
        FiniteSpace::from_points(circle_points(n), &CoordMetric::EuclidCutoff)?,
    );
    let action = GroupAction::new()
        .with(format!("rotation(1/{k})"), Generator::rotation(1, k as u32))
        .with_snap(snap);
    let samples: Vec<Point> = (0..n).map(Point::Id).collect();

    let step = n / k;
    let orbits: Vec<Vec<usize>> = (0..step).map(|i| (0..k).map(|j| i + j * step).collect()).collect();
    let orbit_sets: Vec<CompactSet> = orbits
        .iter()
        .map(|o| CompactSet::from_ids(x.clone(), o.iter().copied()))
        .collect::<Result<_>>()?;
    let mut min_inter_orbit = 1.0f64;
    for a in 0..orbit_sets.len() {
        for b in a + 1..orbit_sets.len() {
            min_inter_orbit = min_inter_orbit.min(hausdorff_distance(&orbit_sets[a], &orbit_sets[b])?);
        }
    }
    let tol = min_inter_orbit / 2.0;
    // Points are exact sample ids, so any dedup radius below the sample
    // spacing gives the same orbits.
    let orbit = OrbitParams::new(tol, 10 * n)?;
    let qp = QuotientParams {
        orbit,
        cluster_tol: tol,
        delta: min_inter_orbit * 1.5,
        scale: 2.0,
    };
    let q = hausdorff_quotient(&x, &samples, &action, qp, None)?;
    let witnesses = stability_probe(&x, &samples, &action, orbit, qp.delta, qp.scale)?;
    let topo = compare_topological_quotient(&x, &samples, &action, &q, orbit, tol)?;
    let bijection = match_classes(&q.classes, &orbit_sets, tol).is_some();
    let claims = vec![
        Claim::new("quotient classes", step.to_string(), q.len().to_string(), q.len() == step),
        Claim::new(
            "classes biject with brute-force orbits",
            format!("bijection at tol {}", fmt17(tol)),
            if bijection { "bijection" } else { "no bijection" },
            bijection,
        ),
        Claim::new(
            "orbit-equivalence classes match the quotient",
            "match",
            format!("{} orbit classes, {} quotient classes", topo.orbit_classes.len(), q.len()),
            topo.pass,
        ),
        Claim::new("discontinuity witnesses", "0", witnesses.len().to_string(), witnesses.is_empty()),
    ];
    Ok(RotationDemo {
        n,
        k,
        orbits,
        min_inter_orbit,
        tol,
        quotient: QuotientSummary::new(&q),
        witnesses: witnesses.len(),
        topological_match: topo.pass,
        claims,
    })
}

/// Gradient flow of the height `cos(theta)` on the circle, at times
/// `±2^j`. With `degenerate`, the height is constant and the flow is the
/// identity.
pub fn morse_action(fine: u32, coarse: u32, degenerate: bool) -> GroupAction {
    if degenerate {
        GroupAction::trivial()
    } else {
        GroupAction::multiscale("flow", fine, coarse, Generator::circle_flow)
    }
}

#[derive(Debug, Clone)]
pub struct MorseRun {
    pub quotient: QuotientApprox,
    pub samples: Vec<Point>,
}

pub fn circle_space() -> Arc<Space> {
    Space::coordinate("circle", 2, CoordMetric::EuclidCutoff)
}

pub fn morse_run(x: &Arc<Space>, cfg: QuotientConfig, degenerate: bool) -> Result<MorseRun> {
    let samples: Vec<Point> = circle_points(cfg.samples).into_iter().map(Point::Coords).collect();
    let action = morse_action(cfg.fine, cfg.coarse, degenerate);
    let quotient = hausdorff_quotient(x, &samples, &action, cfg.quotient()?, None)?;
    Ok(MorseRun { quotient, samples })
}

#[derive(Debug, Clone, Serialize)]
pub struct MorseDemo {
    pub samples: usize,
    pub degenerate: bool,
    pub quotient: QuotientSummary,
    /// Class matching against a run with `refined` samples.
    pub refined: Option<Refinement>,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Refinement {
    pub samples: usize,
    pub classes: usize,
    /// `d_H` between matched classes, coarse order.
    pub matched: Vec<f64>,
    pub pass: bool,
}

/// Flow lines of a height function with two critical points. The fixed
/// points are discarded as jumps of `e`, and the two open arcs give two
/// classes, each the closed arc.
pub fn morse_circle(cfg: QuotientConfig, degenerate: bool, refined: Option<usize>) -> Result<MorseDemo> {
    let mut cfg = cfg;
    if degenerate {
        // every e-image is a singleton; keep neighbours apart
        let spacing = 2.0 * (PI / cfg.samples.max(refined.unwrap_or(0)).max(2) as f64).sin();
        cfg.cluster_tol = cfg.cluster_tol.min(spacing / 2.0);
    }
    let x = circle_space();
    let run = morse_run(&x, cfg, degenerate)?;
    let q = &run.quotient;
    let expected = if degenerate { cfg.samples } else { 2 };
    let mut claims = vec![Claim::new(
        if degenerate { "classes, constant height" } else { "classes, two critical points" },
        expected.to_string(),
        q.len().to_string(),
        q.len() == expected,
    )];
    let refined = match refined {
        Some(m) => {
            let fine = morse_run(&x, QuotientConfig { samples: m, ..cfg }, degenerate)?;
            let tol = 2.0 * cfg.eps;
            let matching = match_classes(&q.classes, &fine.quotient.classes, tol);
            let matched = matching
                .as_ref()
                .map(|m| {
                    m.iter()
                        .enumerate()
                        .map(|(i, &j)| hausdorff_distance(&q.classes[i], &fine.quotient.classes[j]).expect("same ambient"))
                        .collect()
                })
                .unwrap_or_default();
            // singleton classes follow the samples, so only the count is compared
            let (pass, claimed) = if degenerate {
                (fine.quotient.len() == m, format!("{m} classes"))
            } else {
                (matching.is_some(), format!("same classes within {}", fmt17(tol)))
            };
            claims.push(Claim::new(
                format!("refinement {} -> {m} samples", cfg.samples),
                claimed,
                format!("{} classes, matched d_H {:?}", fine.quotient.len(), matched),
                pass,
            ));
            Some(Refinement {
                samples: m,
                classes: fine.quotient.len(),
                matched,
                pass,
            })
        }
        None => None,
    };
    Ok(MorseDemo {
        samples: cfg.samples,
        degenerate,
        quotient: QuotientSummary::new(q),
        refined,
        claims,
    })
}

/// `Z_n = {0, 1/n}` on the line, limit `{0}`.
pub fn inverse_family(terms: usize) -> Result<SequentialFamily> {
    point_family(terms, |n| vec![0.0, 1.0 / n])
}

/// `Z_n = {-1/n, 1/n}`, limit `{0}`.
pub fn pair_family(terms: usize) -> Result<SequentialFamily> {
    point_family(terms, |n| vec![-1.0 / n, 1.0 / n])
}

/// `W_n = {-1/n, 0, 1/n}`, limit `{0}`.
pub fn triple_family(terms: usize) -> Result<SequentialFamily> {
    point_family(terms, |n| vec![-1.0 / n, 0.0, 1.0 / n])
}

fn point_family(terms: usize, at: impl Fn(f64) -> Vec<f64>) -> Result<SequentialFamily> {
    let x = Space::coordinate("[-1,1]", 1, CoordMetric::EuclidCutoff);
    let sets = (1..=terms)
        .map(|n| CompactSet::from_coords(x.clone(), at(n as f64).into_iter().map(|v| vec![v]).collect()))
        .collect::<Result<_>>()?;
    SequentialFamily::new(sets, CompactSet::from_coords(x, vec![vec![0.0]])?)
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyResult {
    pub name: String,
    pub threshold: Option<usize>,
    pub tail_residual: f64,
    pub equivalence_holds: bool,
    pub accumulation: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CollisionDemo {
    pub terms: usize,
    pub eps: f64,
    pub families: Vec<FamilyResult>,
    pub claims: Vec<Claim>,
}

fn family_result(name: &str, f: &SequentialFamily, eps: f64, tol: f64) -> Result<FamilyResult> {
    let c = verify_family_continuity(f, eps)?;
    // pick the largest point of each term
    let picks: Vec<Point> = f
        .terms()
        .iter()
        .map(|t| {
            t.members()
                .iter()
                .max_by(|a, b| a.coords().unwrap()[0].total_cmp(&b.coords().unwrap()[0]))
                .expect("terms are nonempty")
                .clone()
        })
        .collect();
    let accumulation = match verify_pi1_proper(f, &picks, tol)? {
        ProperOutcome::Accumulates { point, hits, tail, .. } => format!("{point} collects {hits} of {tail} tail picks"),
        other => format!("{other:?}"),
    };
    Ok(FamilyResult {
        name: name.to_string(),
        threshold: c.threshold,
        tail_residual: c.tail_residual,
        equivalence_holds: c.equivalence.is_empty(),
        accumulation,
    })
}

/// Two and three points colliding at the origin: both families converge
/// to the same singleton, and `{0, 1/n}` reaches `eps = 0.1` at `n = 11`.
pub fn collision_family(terms: usize, eps: f64) -> Result<CollisionDemo> {
    let tol = 0.05;
    let fams = [
        ("{0, 1/n}", inverse_family(terms)?),
        ("{-1/n, 1/n}", pair_family(terms)?),
        ("{-1/n, 0, 1/n}", triple_family(terms)?),
    ];
    let families = fams
        .iter()
        .map(|(name, f)| family_result(name, f, eps, tol))
        .collect::<Result<Vec<_>>>()?;
    let expected = (1..=terms).find(|&n| 1.0 / (n as f64) < eps);
    let show = |t: Option<usize>| t.map_or("none".to_string(), |v| v.to_string());
    let mut claims: Vec<Claim> = families
        .iter()
        .map(|r| {
            Claim::new(
                format!("N({eps}) for {}", r.name),
                show(expected),
                show(r.threshold),
                r.threshold == expected && r.equivalence_holds,
            )
        })
        .collect();
    let same_limit = fams[1].1.limit().members() == fams[2].1.limit().members();
    let both = families[1].threshold.is_some() && families[2].threshold.is_some() && same_limit;
    claims.push(Claim::new(
        "2-point and 3-point families share the limit",
        "both converge to {0}",
        format!(
            "tail residuals {} and {}",
            fmt17(families[1].tail_residual),
            fmt17(families[2].tail_residual)
        ),
        both,
    ));
    Ok(CollisionDemo {
        terms,
        eps,
        families,
        claims,
    })
}

/// 17 significant digits, enough to round-trip a double.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
