//! Ambient metric spaces.
//!
//! Every distance in this crate is bounded above by 1. Unbounded metrics are
//! brought into range with [`cutoff`], which keeps the induced topology.
//!
//! Two kinds of ambient space exist:
//!
//! * [`FiniteSpace`]: `n` labelled points with an explicit distance matrix.
//!   Points are referred to by index ([`Point::Id`]). A finite space may
//!   also carry the coordinates it was sampled from, which lets coordinate
//!   formulas act on it.
//! * coordinate spaces: `R^dim` with a [`CoordMetric`], points are
//!   [`Point::Coords`].
//!
//! Both are wrapped in a [`Space`], which carries a process-unique id used
//! to reject operations mixing sets from different ambients.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::Report;

/// A point of an ambient space.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    /// Index into a [`FiniteSpace`].
    Id(usize),
    /// Coordinates in a coordinate space.
    Coords(Vec<f64>),
}

impl Point {
    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Coords(c) => Some(c),
            Point::Id(_) => None,
        }
    }

    pub fn id(&self) -> Option<usize> {
        match self {
            Point::Id(i) => Some(*i),
            Point::Coords(_) => None,
        }
    }

    /// Bit pattern key used for exact deduplication.
    pub(crate) fn key(&self) -> Vec<u64> {
        match self {
            Point::Id(i) => vec![*i as u64],
            // -0.0 and 0.0 are the same point.
            Point::Coords(c) => c.iter().map(|x| (x + 0.0).to_bits()).collect(),
        }
    }
}

impl From<usize> for Point {
    fn from(i: usize) -> Self {
        Point::Id(i)
    }
}

impl From<Vec<f64>> for Point {
    fn from(c: Vec<f64>) -> Self {
        Point::Coords(c)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Id(i) => write!(f, "#{i}"),
            Point::Coords(c) => {
                write!(f, "(")?;
                for (k, x) in c.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Distance oracle with values in `[0, 1]`.
pub trait BoundedMetric: Send + Sync {
    fn distance(&self, a: &Point, b: &Point) -> f64;
}

/// An unbounded metric on coordinate vectors, before cutoff.
pub type RawMetric = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;

/// Bounded metrics on coordinate vectors.
#[derive(Clone)]
pub enum CoordMetric {
    /// `min(1, |a - b|)`.
    EuclidCutoff,
    /// Euclidean distance pulled back along `p -> p / (1 + |p|)`, cut off at 1.
    DiskPullback,
    /// `min(1, d(a, b))` for a caller-supplied metric `d`.
    Cutoff { name: String, raw: RawMetric },
}

impl fmt::Debug for CoordMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl CoordMetric {
    pub fn name(&self) -> String {
        match self {
            CoordMetric::EuclidCutoff => "euclid-cutoff".to_string(),
            CoordMetric::DiskPullback => "disk-pullback".to_string(),
            CoordMetric::Cutoff { name, .. } => format!("cutoff({name})"),
        }
    }

    #[inline]
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            CoordMetric::EuclidCutoff => euclidean(a, b).min(1.0),
            CoordMetric::DiskPullback => disk_pullback(a, b),
            CoordMetric::Cutoff { raw, .. } => raw(a, b).min(1.0),
        }
    }
}

impl BoundedMetric for CoordMetric {
    fn distance(&self, a: &Point, b: &Point) -> f64 {
        match (a, b) {
            (Point::Coords(x), Point::Coords(y)) => self.eval(x, y),
            _ => panic!("coordinate metric evaluated on index points"),
        }
    }
}

/// Euclidean norm of `a - b`, summed in coordinate order.
#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        s += d * d;
    }
    s.sqrt()
}

/// The map `p -> p / (1 + |p|)` onto the open unit ball.
pub fn to_unit_ball(p: &[f64]) -> Vec<f64> {
    let norm = euclidean(p, &vec![0.0; p.len()]);
    p.iter().map(|x| x / (1.0 + norm)).collect()
}

#[inline]
fn disk_pullback(a: &[f64], b: &[f64]) -> f64 {
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x / (1.0 + na) - y / (1.0 + nb);
        s += d * d;
    }
    s.sqrt().min(1.0)
}

/// Replace an unbounded metric `d` by `min(d, 1)`.
///
/// No attempt is made to check that `d` is a metric.
pub fn cutoff<F>(name: impl Into<String>, d: F) -> CoordMetric
where
    F: Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
{
    CoordMetric::Cutoff {
        name: name.into(),
        raw: Arc::new(d),
    }
}

/// Euclidean distance on the plane pulled back from the open unit disk.
pub fn disk_pullback_metric() -> CoordMetric {
    CoordMetric::DiskPullback
}

/// `n` points with an explicit distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    dist: Vec<f64>,
    coords: Option<Vec<Vec<f64>>>,
}

impl FiniteSpace {
    /// Build from a full square matrix. Only the shape and finiteness are
    /// checked here; use [`verify_metric_axioms`] for the metric axioms.
    pub fn from_matrix(labels: Option<Vec<String>>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let labels = labels.unwrap_or_else(|| default_labels(n));
        if labels.len() != n {
            return Err(Error::InvalidSpace(format!(
                "{} labels for {} points",
                labels.len(),
                n
            )));
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidSpace(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(x) = row.iter().find(|x| !x.is_finite()) {
                return Err(Error::InvalidSpace(format!("non-finite distance {x} in row {i}")));
            }
            dist.extend_from_slice(row);
        }
        check_unique_labels(&labels)?;
        Ok(Self {
            labels,
            dist,
            coords: None,
        })
    }

    /// Build a symmetric space with zero diagonal from the strict lower
    /// triangle in row-major order: `d(1,0), d(2,0), d(2,1), d(3,0), ...`.
    pub fn from_lower_triangle(n: usize, labels: Option<Vec<String>>, lower: &[f64]) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if lower.len() != expected {
            return Err(Error::InvalidSpace(format!(
                "lower triangle for n={n} needs {expected} entries, got {}",
                lower.len()
            )));
        }
        let mut rows = vec![vec![0.0; n]; n];
        let mut k = 0;
        for i in 1..n {
            for j in 0..i {
                rows[i][j] = lower[k];
                rows[j][i] = lower[k];
                k += 1;
            }
        }
        Self::from_matrix(labels, rows)
    }

    /// Sample a coordinate space: distances are evaluated once and the
    /// coordinates are kept alongside.
    pub fn from_points(points: Vec<Vec<f64>>, metric: &CoordMetric) -> Result<Self> {
        let n = points.len();
        if let Some(dim) = points.first().map(Vec::len) {
            if points.iter().any(|p| p.len() != dim) {
                return Err(Error::InvalidSpace("points of mixed dimension".into()));
            }
        }
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..i {
                let d = metric.eval(&points[i], &points[j]);
                rows[i][j] = d;
                rows[j][i] = d;
            }
        }
        let mut space = Self::from_matrix(None, rows)?;
        space.coords = Some(points);
        Ok(space)
    }

    /// `n` points at mutual distance `d`.
    pub fn uniform(n: usize, d: f64) -> Result<Self> {
        if !(d > 0.0 && d <= 1.0) {
            return Err(Error::InvalidParameter(format!("uniform distance {d} not in (0, 1]")));
        }
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { d }).collect())
            .collect();
        Self::from_matrix(None, rows)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::InvalidSpace(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        check_unique_labels(&labels)?;
        self.labels = labels;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|i| self.dist[i * n..(i + 1) * n].to_vec()).collect()
    }

    /// Strict lower triangle in row-major order.
    pub fn lower_triangle(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..n {
            for j in 0..i {
                out.push(self.d(i, j));
            }
        }
        out
    }

    /// Index of the sample nearest to `c` under `metric`, if it lies within
    /// `snap` of it.
    pub fn snap(&self, c: &[f64], metric: &CoordMetric, snap: f64) -> Option<usize> {
        let coords = self.coords.as_ref()?;
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in coords.iter().enumerate() {
            if p.len() != c.len() {
                return None;
            }
            let d = metric.eval(c, p);
            if best.map_or(true, |(_, b)| d < b) {
                best = Some((i, d));
            }
        }
        best.filter(|&(_, d)| d <= snap).map(|(i, _)| i)
    }
}

impl BoundedMetric for FiniteSpace {
    fn distance(&self, a: &Point, b: &Point) -> f64 {
        match (a, b) {
            (Point::Id(i), Point::Id(j)) => self.d(*i, *j),
            _ => panic!("finite space evaluated on coordinate points"),
        }
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn check_unique_labels(labels: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidSpace(format!("duplicate label `{l}`")));
        }
    }
    Ok(())
}

/// Check identity, symmetry, the triangle inequality and the `[0, 1]`
/// bound on every point, pair and triple. Violations are report entries.
pub fn verify_metric_axioms(s: &FiniteSpace, tol: f64) -> Report {
    let mut report = Report::new();
    let n = s.len();
    let lbl = |i: usize| s.labels[i].as_str();
    for i in 0..n {
        let dii = s.d(i, i);
        if dii.abs() > tol {
            report.fail("identity", format!("d({0},{0}) = {dii}", lbl(i)), dii.abs());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let dij = s.d(i, j);
            if i != j && dij <= 0.0 {
                report.fail(
                    "indiscernibles",
                    format!("d({},{}) = {dij} for distinct points", lbl(i), lbl(j)),
                    -dij,
                );
            }
            if !(-tol..=1.0 + tol).contains(&dij) {
                let residual = if dij < 0.0 { -dij } else { dij - 1.0 };
                report.fail("bounded", format!("d({},{}) = {dij}", lbl(i), lbl(j)), residual);
            }
            if j > i {
                let asym = (dij - s.d(j, i)).abs();
                if asym > tol {
                    report.fail(
                        "symmetry",
                        format!("d({0},{1}) = {dij} but d({1},{0}) = {2}", lbl(i), lbl(j), s.d(j, i)),
                        asym,
                    );
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let excess = s.d(i, k) - (s.d(i, j) + s.d(j, k));
                if excess > tol {
                    report.fail(
                        "triangle",
                        format!(
                            "d({a},{c}) = {} > d({a},{b}) + d({b},{c}) = {}",
                            s.d(i, k),
                            s.d(i, j) + s.d(j, k),
                            a = lbl(i),
                            b = lbl(j),
                            c = lbl(k)
                        ),
                        excess,
                    );
                }
            }
        }
    }
    report
}

static NEXT_SPACE_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceId(u64);

#[derive(Debug, Clone)]
pub enum SpaceKind {
    Finite(FiniteSpace),
    Coordinate { dim: usize, metric: CoordMetric },
}

/// An ambient space shared by the compact sets living in it.
#[derive(Debug)]
pub struct Space {
    id: SpaceId,
    name: String,
    kind: SpaceKind,
}

impl Space {
    pub fn finite(name: impl Into<String>, space: FiniteSpace) -> Arc<Space> {
        Self::new(name.into(), SpaceKind::Finite(space))
    }

    pub fn coordinate(name: impl Into<String>, dim: usize, metric: CoordMetric) -> Arc<Space> {
        Self::new(name.into(), SpaceKind::Coordinate { dim, metric })
    }

    fn new(name: String, kind: SpaceKind) -> Arc<Space> {
        Arc::new(Space {
            id: SpaceId(NEXT_SPACE_ID.fetch_add(1, Ordering::Relaxed)),
            name,
            kind,
        })
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn as_finite(&self) -> Option<&FiniteSpace> {
        match &self.kind {
            SpaceKind::Finite(f) => Some(f),
            SpaceKind::Coordinate { .. } => None,
        }
    }

    /// The metric used to compare coordinates: the coordinate metric, or
    /// for finite spaces sampled from points, Euclidean cutoff.
    pub fn coord_metric(&self) -> CoordMetric {
        match &self.kind {
            SpaceKind::Coordinate { metric, .. } => metric.clone(),
            SpaceKind::Finite(_) => CoordMetric::EuclidCutoff,
        }
    }

    /// All points, for finite spaces.
    pub fn points(&self) -> Option<Vec<Point>> {
        self.as_finite().map(|f| (0..f.len()).map(Point::Id).collect())
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        let bad = |reason: String| Error::InvalidPoint {
            point: p.to_string(),
            space: self.name.clone(),
            reason,
        };
        match (&self.kind, p) {
            (SpaceKind::Finite(f), Point::Id(i)) if *i < f.len() => Ok(()),
            (SpaceKind::Finite(f), Point::Id(i)) => {
                Err(bad(format!("index {i} out of range for {} points", f.len())))
            }
            (SpaceKind::Coordinate { dim, .. }, Point::Coords(c)) => {
                if c.len() != *dim {
                    Err(bad(format!("dimension {} but space has dimension {dim}", c.len())))
                } else if c.iter().any(|x| !x.is_finite()) {
                    Err(bad("non-finite coordinate".into()))
                } else {
                    Ok(())
                }
            }
            (SpaceKind::Finite(_), Point::Coords(_)) => Err(bad("coordinates given for a finite space".into())),
            (SpaceKind::Coordinate { .. }, Point::Id(_)) => Err(bad("index given for a coordinate space".into())),
        }
    }

    /// Human readable form of a point, using labels in finite spaces.
    pub fn describe(&self, p: &Point) -> String {
        match (&self.kind, p) {
            (SpaceKind::Finite(f), Point::Id(i)) if *i < f.len() => f.labels()[*i].clone(),
            _ => p.to_string(),
        }
    }
}

impl BoundedMetric for Space {
    #[inline]
    fn distance(&self, a: &Point, b: &Point) -> f64 {
        match &self.kind {
            SpaceKind::Finite(f) => f.distance(a, b),
            SpaceKind::Coordinate { metric, .. } => metric.distance(a, b),
        }
    }
}
