//! Hausdorff distance between finite samples of compact sets.
//!
//! For nonempty `A`, `B` the distance is
//! `max(sup_a inf_b d(a, b), sup_b inf_a d(a, b))`. The empty set sits at
//! distance 1 from every nonempty set and at distance 0 from itself.
//!
//! Reductions are always "inner min over the second argument, outer max
//! over the first". Both are order independent, so the parallel outer loop
//! and the indexed kernel in [`crate::index`] return bit-identical values.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{BoundedMetric, Point, Space};

/// Work size (|A| * |B|) above which the outer loop runs in parallel.
const PAR_THRESHOLD: usize = 1 << 16;

/// A finite, possibly empty, set of points standing for a compact subset
/// of its ambient space.
#[derive(Debug, Clone)]
pub struct CompactSet {
    ambient: Arc<Space>,
    members: Vec<Point>,
    resolution: f64,
}

impl CompactSet {
    /// Validate and deduplicate `members`. The first occurrence of a
    /// repeated point is kept, so member order is otherwise preserved.
    pub fn new(ambient: Arc<Space>, members: Vec<Point>) -> Result<Self> {
        for p in &members {
            ambient.check_point(p)?;
        }
        let mut seen = HashSet::with_capacity(members.len());
        let members = members.into_iter().filter(|p| seen.insert(p.key())).collect();
        Ok(Self {
            ambient,
            members,
            resolution: 0.0,
        })
    }

    pub fn empty(ambient: Arc<Space>) -> Self {
        Self {
            ambient,
            members: Vec::new(),
            resolution: 0.0,
        }
    }

    /// Set of indices of a finite space.
    pub fn from_ids(ambient: Arc<Space>, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(ambient, ids.into_iter().map(Point::Id).collect())
    }

    pub fn from_coords(ambient: Arc<Space>, coords: Vec<Vec<f64>>) -> Result<Self> {
        Self::new(ambient, coords.into_iter().map(Point::Coords).collect())
    }

    /// The whole of a finite ambient space.
    pub fn whole(ambient: Arc<Space>) -> Result<Self> {
        let pts = ambient
            .points()
            .ok_or_else(|| Error::InvalidParameter("whole space requires a finite ambient".into()))?;
        Self::new(ambient, pts)
    }

    /// Stated sampling fineness. Informational only.
    pub fn with_resolution(mut self, resolution: f64) -> Self {
        self.resolution = resolution;
        self
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn ambient(&self) -> &Arc<Space> {
        &self.ambient
    }

    pub fn members(&self) -> &[Point] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Exact membership (index equality or bitwise coordinate equality).
    pub fn contains(&self, p: &Point) -> bool {
        let k = p.key();
        self.members.iter().any(|m| m.key() == k)
    }

    /// Distance from `p` to the nearest member, 1 for the empty set.
    pub fn distance_to(&self, p: &Point) -> f64 {
        self.members
            .iter()
            .map(|m| self.ambient.distance(p, m))
            .fold(1.0, f64::min)
    }

    pub fn same_ambient(&self, other: &CompactSet) -> Result<()> {
        if self.ambient.id() == other.ambient.id() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                left: self.ambient.name().to_string(),
                right: other.ambient.name().to_string(),
            })
        }
    }

    /// Member ids, for sets in a finite space.
    pub fn ids(&self) -> Option<Vec<usize>> {
        self.members.iter().map(Point::id).collect()
    }

    pub fn describe(&self) -> Vec<String> {
        self.members.iter().map(|p| self.ambient.describe(p)).collect()
    }
}

/// `inf_b d(a, b)` over nonempty `b`, accumulated in member order.
#[inline]
pub(crate) fn nearest(space: &Space, a: &Point, bs: &[Point]) -> f64 {
    let mut best = f64::INFINITY;
    for b in bs {
        let d = space.distance(a, b);
        if d < best {
            best = d;
        }
    }
    best
}

pub(crate) fn directed_raw(space: &Space, a: &[Point], b: &[Point]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return 1.0;
    }
    if a.len() * b.len() >= PAR_THRESHOLD {
        a.par_iter()
            .map(|p| nearest(space, p, b))
            .reduce(|| 0.0, f64::max)
    } else {
        a.iter().map(|p| nearest(space, p, b)).fold(0.0, f64::max)
    }
}

/// `sup_{a in A} inf_{b in B} d(a, b)`, with the empty-set conventions
/// `A = {} -> 0` and `A != {}, B = {} -> 1`.
pub fn directed_hausdorff(a: &CompactSet, b: &CompactSet) -> Result<f64> {
    a.same_ambient(b)?;
    Ok(directed_raw(&a.ambient, &a.members, &b.members))
}

/// Symmetric Hausdorff distance; 0 between two empty sets and 1 between
/// the empty set and any nonempty set.
pub fn hausdorff_distance(a: &CompactSet, b: &CompactSet) -> Result<f64> {
    a.same_ambient(b)?;
    Ok(hausdorff_raw(&a.ambient, &a.members, &b.members))
}

pub(crate) fn hausdorff_raw(space: &Space, a: &[Point], b: &[Point]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => 1.0,
        (false, false) => directed_raw(space, a, b).max(directed_raw(space, b, a)),
    }
}

/// The metric `max(d_H(Z, Z'), d(x, x'))` on pairs (set, point).
pub fn product_metric(p: (&CompactSet, &Point), q: (&CompactSet, &Point)) -> Result<f64> {
    let (z, x) = p;
    let (z2, x2) = q;
    z.same_ambient(z2)?;
    z.ambient.check_point(x)?;
    z.ambient.check_point(x2)?;
    let dh = hausdorff_raw(&z.ambient, &z.members, &z2.members);
    Ok(dh.max(z.ambient.distance(x, x2)))
}

/// Greedy `eps`-net of `s` taken in member order: a point joins the net
/// when it is farther than `eps` from every point already chosen. Every
/// member ends within `eps` of the net and net points are pairwise more
/// than `eps` apart.
pub fn epsilon_net(s: &CompactSet, eps: f64) -> Result<CompactSet> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("net radius {eps} must be positive")));
    }
    let mut net: Vec<Point> = Vec::new();
    for p in &s.members {
        if net.iter().all(|q| s.ambient.distance(p, q) > eps) {
            net.push(p.clone());
        }
    }
    Ok(CompactSet {
        ambient: s.ambient.clone(),
        members: net,
        resolution: eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{CoordMetric, FiniteSpace};

    fn unit_line() -> Arc<Space> {
        Space::coordinate("[0,1]", 1, CoordMetric::EuclidCutoff)
    }

    fn pts(space: &Arc<Space>, xs: &[f64]) -> CompactSet {
        CompactSet::from_coords(space.clone(), xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn directed_examples() {
        let x = unit_line();
        assert_eq!(directed_hausdorff(&pts(&x, &[0.0, 0.4]), &pts(&x, &[0.0])).unwrap(), 0.4);
        assert_eq!(directed_hausdorff(&pts(&x, &[]), &pts(&x, &[0.3])).unwrap(), 0.0);
        assert_eq!(directed_hausdorff(&pts(&x, &[0.3]), &pts(&x, &[])).unwrap(), 1.0);
        let a: Vec<f64> = (1..10).map(|i| i as f64 * 0.1).collect();
        let d = directed_hausdorff(&pts(&x, &a), &pts(&x, &[0.5])).unwrap();
        // brute force over the nine points: max |a - 0.5| attained at 0.1 and 0.9
        let oracle = a.iter().map(|v| (v - 0.5f64).abs()).fold(0.0, f64::max);
        assert_eq!(d, oracle);
        assert!((d - 0.4).abs() < 1e-15);
    }

    #[test]
    fn empty_conventions() {
        let x = unit_line();
        let e = CompactSet::empty(x.clone());
        assert_eq!(hausdorff_distance(&e, &e).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&e, &pts(&x, &[0.2])).unwrap(), 1.0);
        assert_eq!(hausdorff_distance(&pts(&x, &[0.2]), &e).unwrap(), 1.0);
        let a = pts(&x, &[0.1, 0.7]);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = pts(&unit_line(), &[0.0]);
        let b = pts(&unit_line(), &[0.0]);
        assert!(matches!(hausdorff_distance(&a, &b), Err(Error::AmbientMismatch { .. })));
        assert!(directed_hausdorff(&a, &b).is_err());
        assert!(product_metric((&a, &Point::Coords(vec![0.0])), (&b, &Point::Coords(vec![0.0]))).is_err());
    }

    #[test]
    fn duplicates_are_dropped_in_order() {
        let x = unit_line();
        let s = pts(&x, &[0.5, 0.1, 0.5, -0.0, 0.0]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.members()[0], Point::Coords(vec![0.5]));
    }

    #[test]
    fn product_metric_examples() {
        let x = unit_line();
        let z = pts(&x, &[0.0]);
        let z2 = pts(&x, &[0.5]);
        let p = |v: f64| Point::Coords(vec![v]);
        assert_eq!(product_metric((&z, &p(0.0)), (&z, &p(0.0))).unwrap(), 0.0);
        assert_eq!(product_metric((&z, &p(0.0)), (&z, &p(0.3))).unwrap(), 0.3);
        assert_eq!(product_metric((&z, &p(0.0)), (&z2, &p(0.1))).unwrap(), 0.5);
    }

    #[test]
    fn epsilon_net_examples() {
        let x = unit_line();
        let net = epsilon_net(&pts(&x, &[0.0, 0.05, 1.0]), 0.1).unwrap();
        assert_eq!(net.members(), pts(&x, &[0.0, 1.0]).members());
        let net = epsilon_net(&pts(&x, &[0.3, 0.0, 1.0, 0.6]), 1.0).unwrap();
        assert_eq!(net.members(), &[Point::Coords(vec![0.3])]);
        let net = epsilon_net(&CompactSet::empty(x.clone()), 0.1).unwrap();
        assert!(net.is_empty());
        assert!(epsilon_net(&pts(&x, &[0.0]), 0.0).is_err());
    }

    #[test]
    fn finite_space_sets() {
        let s = FiniteSpace::from_lower_triangle(2, None, &[0.6]).unwrap();
        let x = Space::finite("two", s);
        let a = CompactSet::from_ids(x.clone(), [0]).unwrap();
        let b = CompactSet::from_ids(x.clone(), [1]).unwrap();
        let ab = CompactSet::from_ids(x.clone(), [0, 1]).unwrap();
        assert_eq!(hausdorff_distance(&a, &b).unwrap(), 0.6);
        assert_eq!(hausdorff_distance(&a, &ab).unwrap(), 0.6);
        assert_eq!(directed_hausdorff(&a, &ab).unwrap(), 0.0);
        assert!(CompactSet::from_ids(x, [2]).is_err());
    }
}
