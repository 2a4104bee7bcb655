//! Group actions given by generator maps, orbit closures, and the
//! approximate Hausdorff quotient.
//!
//! A group acts through finitely many generators. The orbit closure of a
//! point is approximated breadth first: generators are applied to every
//! new point and an image joins the orbit when it is at least `eps` from
//! every point already found. The map `e : x -> closure(Gx)` is evaluated
//! pointwise on a list of samples.
//!
//! The quotient is the intersection, over dense invariant open sets `U`,
//! of the closures of `e(U)`. That intersection cannot be computed, so a
//! caller either names a known-good `U` with a predicate, or the samples
//! at which `e` jumps are discarded until none remain. The surviving
//! e-images are then clustered under the Hausdorff distance.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hausdorff::{hausdorff_raw, CompactSet};
use crate::metric::{BoundedMetric, CoordMetric, Point, Space, SpaceKind};

pub type CoordMap = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A self-map of the ambient space.
#[derive(Clone)]
pub enum Generator {
    /// Explicit table on the points of a finite space.
    Permutation(Vec<usize>),
    /// Coordinate formula. On finite spaces with coordinates the image is
    /// snapped to the nearest sample.
    Map(CoordMap),
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Permutation(t) => f.debug_tuple("Permutation").field(t).finish(),
            Generator::Map(_) => f.write_str("Map(..)"),
        }
    }
}

impl Generator {
    pub fn map<F>(f: F) -> Self
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        Generator::Map(Arc::new(f))
    }

    pub fn identity() -> Self {
        Self::map(|p| p.to_vec())
    }

    /// Rotation of the plane about the origin by `2 pi k / n`.
    pub fn rotation(k: i64, n: u32) -> Self {
        let a = 2.0 * PI * k as f64 / n as f64;
        let (s, c) = a.sin_cos();
        Self::map(move |p| vec![c * p[0] - s * p[1], s * p[0] + c * p[1]])
    }

    /// Multiplication `t -> c t` on `[0, inf]`, in the coordinate
    /// `s = t / (1 + t)` of the compactified half line `[0, 1]`.
    pub fn halfline_scale(c: f64) -> Self {
        Self::map(move |p| {
            let s = p[0];
            vec![c * s / (1.0 - s + c * s)]
        })
    }

    /// Time-`dt` gradient flow of the height `cos(theta)` on the unit
    /// circle. Along the flow `tan(theta / 2)` scales by `exp(-dt)`.
    pub fn circle_flow(dt: f64) -> Self {
        let k = (-dt).exp();
        Self::map(move |p| {
            let half = p[1].atan2(p[0]) / 2.0;
            let theta = 2.0 * (k * half.sin()).atan2(half.cos());
            let (s, c) = theta.sin_cos();
            vec![c, s]
        })
    }
}

#[derive(Debug, Clone)]
pub struct GroupAction {
    labels: Vec<String>,
    generators: Vec<Generator>,
    snap: f64,
}

impl Default for GroupAction {
    fn default() -> Self {
        Self {
            labels: Vec::new(),
            generators: Vec::new(),
            snap: 1e-9,
        }
    }
}

impl GroupAction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: impl Into<String>, g: Generator) -> Self {
        self.labels.push(label.into());
        self.generators.push(g);
        self
    }

    /// Snap tolerance for coordinate generators on finite spaces.
    pub fn with_snap(mut self, snap: f64) -> Self {
        self.snap = snap;
        self
    }

    pub fn trivial() -> Self {
        Self::new().with("id", Generator::identity())
    }

    /// Generators for a one-parameter group at times `±2^j`,
    /// `-fine <= j <= coarse`. A single time step leaves gaps that dedup at
    /// `eps` never fills, and near fixed points it moves less than `eps`;
    /// the finer and coarser steps reach both.
    pub fn multiscale(name: &str, fine: u32, coarse: u32, step: impl Fn(f64) -> Generator) -> Self {
        let mut action = Self::new();
        for j in -(fine as i32)..=coarse as i32 {
            let t = 2f64.powi(j);
            action = action
                .with(format!("{name}(+{t})"), step(t))
                .with(format!("{name}(-{t})"), step(-t));
        }
        action
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn snap(&self) -> f64 {
        self.snap
    }

    /// Check that every generator can act on `space`.
    pub fn check(&self, space: &Space) -> Result<()> {
        for (label, g) in self.labels.iter().zip(&self.generators) {
            let bad = |reason: String| Error::Action {
                point: format!("generator `{label}`"),
                reason,
            };
            match (g, space.kind()) {
                (Generator::Permutation(t), SpaceKind::Finite(f)) => {
                    if t.len() != f.len() {
                        return Err(bad(format!("table of length {} for {} points", t.len(), f.len())));
                    }
                    let mut seen = vec![false; t.len()];
                    for &j in t {
                        if j >= t.len() || std::mem::replace(&mut seen[j], true) {
                            return Err(bad("table is not a permutation".into()));
                        }
                    }
                }
                (Generator::Permutation(_), SpaceKind::Coordinate { .. }) => {
                    return Err(bad("permutation tables need a finite space".into()));
                }
                (Generator::Map(_), SpaceKind::Finite(f)) if f.coords().is_none() => {
                    return Err(bad("coordinate formula on a finite space without coordinates".into()));
                }
                (Generator::Map(_), _) => {}
            }
        }
        Ok(())
    }

    fn apply(&self, space: &Space, g: usize, p: &Point) -> std::result::Result<Point, String> {
        match (&self.generators[g], space.kind(), p) {
            (Generator::Permutation(t), SpaceKind::Finite(_), Point::Id(i)) => Ok(Point::Id(t[*i])),
            (Generator::Map(f), SpaceKind::Coordinate { dim, .. }, Point::Coords(c)) => {
                let y = f(c);
                if y.len() != *dim {
                    Err(format!("`{}` returned dimension {}", self.labels[g], y.len()))
                } else if y.iter().any(|v| !v.is_finite()) {
                    Err(format!("`{}` returned a non-finite coordinate", self.labels[g]))
                } else {
                    Ok(Point::Coords(y))
                }
            }
            (Generator::Map(f), SpaceKind::Finite(fs), Point::Id(i)) => {
                let coords = fs.coords().ok_or("finite space has no coordinates")?;
                let y = f(&coords[*i]);
                if y.iter().any(|v| !v.is_finite()) {
                    return Err(format!("`{}` returned a non-finite coordinate", self.labels[g]));
                }
                fs.snap(&y, &CoordMetric::EuclidCutoff, self.snap)
                    .map(Point::Id)
                    .ok_or_else(|| format!("`{}` lands off the sample (snap {})", self.labels[g], self.snap))
            }
            _ => Err(format!("`{}` cannot act on this point", self.labels[g])),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitParams {
    /// Dedup radius: an image joins the orbit when at least this far from
    /// every point found so far.
    pub eps: f64,
    /// Maximum number of orbit points.
    pub budget: usize,
}

impl OrbitParams {
    pub fn new(eps: f64, budget: usize) -> Result<Self> {
        let p = Self { eps, budget };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps {} must be positive", self.eps)));
        }
        if self.budget == 0 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OrbitClosure {
    pub base: Point,
    pub points: CompactSet,
    /// True when no generator produced a new point before the budget ran out.
    pub saturated: bool,
}

fn orbit_points(space: &Space, x: &Point, action: &GroupAction, params: OrbitParams) -> std::result::Result<(Vec<Point>, bool), String> {
    let mut members = vec![x.clone()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in 0..action.generators.len() {
            let y = action.apply(space, g, &members[i])?;
            if members.iter().all(|m| space.distance(&y, m) >= params.eps) {
                if members.len() >= params.budget {
                    return Ok((members, false));
                }
                members.push(y);
                queue.push_back(members.len() - 1);
            }
        }
    }
    Ok((members, true))
}

/// Breadth-first orbit of `x` under the generators, deduplicated at
/// `params.eps`, stopping when no new point appears or the budget is hit.
pub fn orbit_closure(space: &Arc<Space>, x: &Point, action: &GroupAction, params: OrbitParams) -> Result<OrbitClosure> {
    params.validate()?;
    space.check_point(x)?;
    action.check(space)?;
    orbit_closure_unchecked(space, x, action, params).map_err(|reason| Error::Action {
        point: space.describe(x),
        reason,
    })
}

fn orbit_closure_unchecked(
    space: &Arc<Space>,
    x: &Point,
    action: &GroupAction,
    params: OrbitParams,
) -> std::result::Result<OrbitClosure, String> {
    let (members, saturated) = orbit_points(space, x, action, params)?;
    let points = CompactSet::new(space.clone(), members)
        .map_err(|e| e.to_string())?
        .with_resolution(params.eps);
    Ok(OrbitClosure {
        base: x.clone(),
        points,
        saturated,
    })
}

/// `x -> closure(Gx)` on every sample, in input order.
pub fn e_image(space: &Arc<Space>, samples: &[Point], action: &GroupAction, params: OrbitParams) -> Result<Vec<OrbitClosure>> {
    params.validate()?;
    action.check(space)?;
    for p in samples {
        space.check_point(p)?;
    }
    samples
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            orbit_closure_unchecked(space, x, action, params).map_err(|reason| Error::Action {
                point: format!("sample {i} {}", space.describe(x)),
                reason,
            })
        })
        .collect()
}

/// A pair of nearby samples whose e-images are far apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    pub hausdorff: f64,
}

fn probe_images(space: &Space, samples: &[Point], images: &[OrbitClosure], delta: f64, scale: f64) -> Vec<Witness> {
    let n = samples.len();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..n).filter_map(move |j| {
                let d = space.distance(&samples[i], &samples[j]);
                if d >= delta {
                    return None;
                }
                let dh = hausdorff_raw(space, images[i].points.members(), images[j].points.members());
                (dh >= scale * delta).then_some(Witness {
                    i,
                    j,
                    distance: d,
                    hausdorff: dh,
                })
            })
        })
        .collect()
}

fn check_probe(delta: f64, scale: f64) -> Result<()> {
    if !(delta > 0.0) || !(scale > 0.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} and scale {scale} must be positive")));
    }
    Ok(())
}

/// All sample pairs with `d(x, x') < delta` but
/// `d_H(e(x), e(x')) >= scale * delta`. An empty result is evidence, not
/// proof, that `e` is continuous on the sampled region.
pub fn stability_probe(
    space: &Arc<Space>,
    samples: &[Point],
    action: &GroupAction,
    params: OrbitParams,
    delta: f64,
    scale: f64,
) -> Result<Vec<Witness>> {
    check_probe(delta, scale)?;
    let images = e_image(space, samples, action, params)?;
    Ok(probe_images(space, samples, &images, delta, scale))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientParams {
    pub orbit: OrbitParams,
    /// Greedy clustering radius under `d_H`.
    pub cluster_tol: f64,
    /// Neighbourhood radius for the stability probe.
    pub delta: f64,
    /// A jump is flagged when `d_H >= scale * delta`.
    pub scale: f64,
}

impl QuotientParams {
    fn validate(&self) -> Result<()> {
        self.orbit.validate()?;
        if !(self.cluster_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cluster tolerance {} must be positive",
                self.cluster_tol
            )));
        }
        check_probe(self.delta, self.scale)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostics {
    /// Discontinuity witnesses behind each removal, in sample indices.
    pub witnesses: Vec<Witness>,
    /// Samples discarded from `U`.
    pub removed: Vec<usize>,
    pub rounds: usize,
    /// Samples whose orbit closure hit the budget.
    pub unsaturated: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct QuotientApprox {
    pub classes: Vec<CompactSet>,
    /// Sample whose e-image represents each class.
    pub representatives: Vec<usize>,
    /// Class of each input sample; `None` when the sample is outside `U`.
    pub assignment: Vec<Option<usize>>,
    pub dmat: Vec<Vec<f64>>,
    pub u_used: String,
    pub diagnostics: Diagnostics,
}

impl QuotientApprox {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Greedy clustering in input order. Each image joins the nearest existing
/// representative within `tol` (earliest on ties), otherwise it starts a
/// new class. Returns (representatives, assignment).
fn cluster(space: &Space, images: &[&CompactSet], tol: f64) -> (Vec<usize>, Vec<usize>) {
    let mut reps: Vec<usize> = Vec::new();
    let mut assignment = Vec::with_capacity(images.len());
    for (i, img) in images.iter().enumerate() {
        let nearest = reps
            .iter()
            .enumerate()
            .map(|(c, &r)| (c, hausdorff_raw(space, img.members(), images[r].members())))
            .fold(None, |best: Option<(usize, f64)>, (c, d)| match best {
                Some((_, bd)) if bd <= d => best,
                _ => Some((c, d)),
            });
        match nearest {
            Some((c, d)) if d <= tol => assignment.push(c),
            _ => {
                assignment.push(reps.len());
                reps.push(i);
            }
        }
    }
    (reps, assignment)
}

fn distance_matrix(space: &Space, sets: &[CompactSet]) -> Vec<Vec<f64>> {
    sets.iter()
        .map(|a| sets.iter().map(|b| hausdorff_raw(space, a.members(), b.members())).collect())
        .collect()
}

/// Approximate Hausdorff quotient of the sampled space.
///
/// With `u_spec`, only samples satisfying it are used. Without it, samples
/// where `e` jumps are removed round by round: a sample goes when every one
/// of its `delta`-neighbours has an e-image at least `scale * delta` away, and
/// every sample sharing its orbit closure goes with it so the removed set
/// stays invariant. Surviving e-images are clustered at `cluster_tol`.
pub fn hausdorff_quotient(
    space: &Arc<Space>,
    samples: &[Point],
    action: &GroupAction,
    params: QuotientParams,
    u_spec: Option<&(dyn Fn(&Point) -> bool + Sync)>,
) -> Result<QuotientApprox> {
    params.validate()?;
    let mut diagnostics = Diagnostics::default();
    let n = samples.len();
    let mut alive: Vec<bool> = match u_spec {
        Some(u) => samples.iter().map(u).collect(),
        None => vec![true; n],
    };
    let selected: Vec<Point> = samples.iter().zip(&alive).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
    let selected_images = e_image(space, &selected, action, params.orbit)?;
    let mut images: Vec<Option<OrbitClosure>> = vec![None; n];
    let mut it = selected_images.into_iter();
    for i in (0..n).filter(|&i| alive[i]) {
        images[i] = it.next();
    }
    diagnostics.unsaturated = (0..n)
        .filter(|&i| images[i].as_ref().is_some_and(|o| !o.saturated))
        .collect();

    let u_used = match u_spec {
        Some(_) => format!("caller predicate: {} of {n} samples", selected.len()),
        None => {
            remove_jumps(space, samples, &images, &mut alive, params, &mut diagnostics);
            format!(
                "automatic: {} of {n} samples removed in {} rounds",
                diagnostics.removed.len(),
                diagnostics.rounds
            )
        }
    };

    let kept: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    if kept.is_empty() {
        return Err(Error::DegenerateQuotient(u_used));
    }
    let kept_sets: Vec<&CompactSet> = kept
        .iter()
        .map(|&i| &images[i].as_ref().expect("alive samples have images").points)
        .collect();
    let (reps, local) = cluster(space, &kept_sets, params.cluster_tol);
    let classes: Vec<CompactSet> = reps.iter().map(|&r| kept_sets[r].clone()).collect();
    let mut assignment = vec![None; n];
    for (k, &i) in kept.iter().enumerate() {
        assignment[i] = Some(local[k]);
    }
    let dmat = distance_matrix(space, &classes);
    Ok(QuotientApprox {
        representatives: reps.iter().map(|&r| kept[r]).collect(),
        classes,
        assignment,
        dmat,
        u_used,
        diagnostics,
    })
}

fn remove_jumps(
    space: &Space,
    samples: &[Point],
    images: &[Option<OrbitClosure>],
    alive: &mut [bool],
    params: QuotientParams,
    diagnostics: &mut Diagnostics,
) {
    let n = samples.len();
    let img = |i: usize| images[i].as_ref().expect("all samples have images").points.members();
    let threshold = params.scale * params.delta;
    loop {
        let live: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        let verdicts: Vec<(usize, Vec<Witness>, usize)> = live
            .par_iter()
            .map(|&i| {
                let mut neighbours = 0;
                let mut jumps = Vec::new();
                for &j in live.iter().filter(|&&j| j != i) {
                    let d = space.distance(&samples[i], &samples[j]);
                    if d < params.delta {
                        neighbours += 1;
                        let dh = hausdorff_raw(space, img(i), img(j));
                        if dh >= threshold {
                            jumps.push(Witness {
                                i,
                                j,
                                distance: d,
                                hausdorff: dh,
                            });
                        }
                    }
                }
                (i, jumps, neighbours)
            })
            .collect();
        let marked: Vec<(usize, Vec<Witness>)> = verdicts
            .into_iter()
            .filter(|(_, jumps, nb)| !jumps.is_empty() && jumps.len() == *nb)
            .map(|(i, jumps, _)| (i, jumps))
            .collect();
        if marked.is_empty() {
            break;
        }
        diagnostics.rounds += 1;
        for (i, jumps) in marked {
            diagnostics.witnesses.extend(jumps);
            for k in 0..n {
                if alive[k] && (k == i || hausdorff_raw(space, img(k), img(i)) < 2.0 * params.orbit.eps) {
                    alive[k] = false;
                    diagnostics.removed.push(k);
                }
            }
        }
    }
    diagnostics.removed.sort_unstable();
}

/// Perfect matching between `left` and `right` items under `edge`, by
/// augmenting paths. `None` when the sizes differ or no matching exists.
fn perfect_matching(left: usize, right: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    if left != right {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..left).map(|l| (0..right).filter(|&r| edge(l, r)).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; right];
    fn augment(l: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &r in &adj[l] {
            if !seen[r] {
                seen[r] = true;
                if owner[r].map_or(true, |o| augment(o, adj, owner, seen)) {
                    owner[r] = Some(l);
                    return true;
                }
            }
        }
        false
    }
    for l in 0..left {
        let mut seen = vec![false; right];
        if !augment(l, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut matching = vec![0; left];
    for (r, o) in owner.iter().enumerate() {
        matching[o.expect("perfect matching covers every right item")] = r;
    }
    Some(matching)
}

/// Bijection between two class lists pairing sets within `tol` in `d_H`:
/// `result[i]` is the index in `b` matched to `a[i]`.
pub fn match_classes(a: &[CompactSet], b: &[CompactSet], tol: f64) -> Option<Vec<usize>> {
    let space = match (a.first(), b.first()) {
        (Some(x), _) | (None, Some(x)) => x.ambient().clone(),
        (None, None) => return Some(Vec::new()),
    };
    match_sets(&space, a, b, tol)
}

fn match_sets(space: &Space, a: &[CompactSet], b: &[CompactSet], tol: f64) -> Option<Vec<usize>> {
    perfect_matching(a.len(), b.len(), |i, j| {
        hausdorff_raw(space, a[i].members(), b[j].members()) <= tol
    })
}

#[derive(Debug, Clone)]
pub struct SemiStability {
    pub pass: bool,
    /// Clustered closure of `e(U)`.
    pub clusters: Vec<CompactSet>,
    pub classes: usize,
}

/// Compare the clustered closure of `e(U)` with the quotient classes: the
/// check passes when the two lists are in bijection with matched sets
/// within `tol` of each other.
pub fn semi_stability_check(
    q: &QuotientApprox,
    space: &Arc<Space>,
    u_samples: &[Point],
    action: &GroupAction,
    params: QuotientParams,
    tol: f64,
) -> Result<SemiStability> {
    params.validate()?;
    if let Some(c) = q.classes.first() {
        if c.ambient().id() != space.id() {
            return Err(Error::AmbientMismatch {
                left: c.ambient().name().to_string(),
                right: space.name().to_string(),
            });
        }
    }
    let images = e_image(space, u_samples, action, params.orbit)?;
    let sets: Vec<&CompactSet> = images.iter().map(|o| &o.points).collect();
    let (reps, _) = cluster(space, &sets, params.cluster_tol);
    let clusters: Vec<CompactSet> = reps.iter().map(|&r| sets[r].clone()).collect();
    let pass = match_sets(space, &q.classes, &clusters, tol).is_some();
    Ok(SemiStability {
        pass,
        clusters,
        classes: q.classes.len(),
    })
}

#[derive(Debug, Clone)]
pub struct TopologicalComparison {
    pub pass: bool,
    /// One e-image per orbit-equivalence class, in order of first sample.
    pub orbit_classes: Vec<CompactSet>,
    /// Sample indices of each orbit-equivalence class.
    pub orbit_members: Vec<Vec<usize>>,
    pub quotient_classes: usize,
    /// Set when the compactness hypothesis could not be confirmed.
    pub caveat: Option<String>,
}

/// Group samples into orbit-equivalence classes (`x ~ y` when their orbit
/// closures are within `tol` and each lies within `tol` of the other's
/// closure) and compare with the quotient classes.
pub fn compare_topological_quotient(
    space: &Arc<Space>,
    samples: &[Point],
    action: &GroupAction,
    q: &QuotientApprox,
    params: OrbitParams,
    tol: f64,
) -> Result<TopologicalComparison> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    let images = e_image(space, samples, action, params)?;
    let n = samples.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&images[i].points, &images[j].points);
            let related = hausdorff_raw(space, a.members(), b.members()) < tol
                && b.distance_to(&samples[i]) < tol
                && a.distance_to(&samples[j]) < tol;
            if related {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut orbit_members: Vec<Vec<usize>> = Vec::new();
    let mut root_class: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_class[r] {
            Some(c) => orbit_members[c].push(i),
            None => {
                root_class[r] = Some(orbit_members.len());
                orbit_members.push(vec![i]);
            }
        }
    }
    let orbit_classes: Vec<CompactSet> = orbit_members.iter().map(|m| images[m[0]].points.clone()).collect();
    let unsaturated: Vec<usize> = (0..n).filter(|&i| !images[i].saturated).collect();
    let caveat = (!unsaturated.is_empty()).then(|| {
        format!(
            "orbit budget exhausted at {} samples; compactness of orbit closures not confirmed",
            unsaturated.len()
        )
    });
    let pass = match_sets(space, &orbit_classes, &q.classes, tol).is_some();
    Ok(TopologicalComparison {
        pass,
        orbit_classes,
        orbit_members,
        quotient_classes: q.classes.len(),
        caveat,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberReport {
    pub pass: bool,
    /// Distinct image points whose fibers are closer than `tol` although
    /// the points themselves are at least `tol` apart.
    pub collisions: Vec<(usize, usize, f64, f64)>,
    /// Largest `d_H` between fibers over image pairs closer than `tol`.
    pub continuity_modulus: f64,
    /// Smallest `d_H` between fibers over image pairs at least `tol` apart.
    pub embedding_modulus: f64,
    /// Smallest fiber separation over all distinct image pairs.
    pub min_separation: f64,
}

/// Build the fibers `e(y) = q^-1(y)` of a sampled map `q : X -> Y` and
/// check that `e` separates points: whenever `d(y, y') >= tol` the fibers
/// are at least `tol` apart in `d_H`.
pub fn fiber_embedding_check(
    x_space: &Arc<Space>,
    x_samples: &[Point],
    y_space: &Arc<Space>,
    y_samples: &[Point],
    qmap: &[usize],
    tol: f64,
) -> Result<FiberReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    if qmap.len() != x_samples.len() {
        return Err(Error::InvalidParameter(format!(
            "map has {} entries for {} samples",
            qmap.len(),
            x_samples.len()
        )));
    }
    let mut fibers: Vec<Vec<Point>> = vec![Vec::new(); y_samples.len()];
    for (x, &y) in x_samples.iter().zip(qmap) {
        let fiber = fibers
            .get_mut(y)
            .ok_or_else(|| Error::InvalidParameter(format!("map value {y} out of range")))?;
        fiber.push(x.clone());
    }
    if let Some(y) = fibers.iter().position(Vec::is_empty) {
        return Err(Error::InvalidParameter(format!("map is not surjective: nothing maps to {y}")));
    }
    let fibers: Vec<CompactSet> = fibers
        .into_iter()
        .map(|f| CompactSet::new(x_space.clone(), f))
        .collect::<Result<_>>()?;
    for y in y_samples {
        y_space.check_point(y)?;
    }
    let mut report = FiberReport {
        pass: true,
        collisions: Vec::new(),
        continuity_modulus: 0.0,
        embedding_modulus: f64::INFINITY,
        min_separation: f64::INFINITY,
    };
    for i in 0..y_samples.len() {
        for j in i + 1..y_samples.len() {
            let dy = y_space.distance(&y_samples[i], &y_samples[j]);
            let dh = hausdorff_raw(x_space, fibers[i].members(), fibers[j].members());
            report.min_separation = report.min_separation.min(dh);
            if dy < tol {
                report.continuity_modulus = report.continuity_modulus.max(dh);
            } else {
                report.embedding_modulus = report.embedding_modulus.min(dh);
                if dh < tol {
                    report.collisions.push((i, j, dy, dh));
                }
            }
        }
    }
    report.pass = report.collisions.is_empty() && (y_samples.len() < 2 || report.min_separation > 0.0);
    Ok(report)
}
