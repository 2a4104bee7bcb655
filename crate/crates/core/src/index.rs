//! Vantage-point tree over the members of a [`CompactSet`] and the
//! accelerated Hausdorff kernel built on it.
//!
//! The tree only needs the triangle inequality, so it works for every
//! bounded metric in the crate, cutoff included. Distances are always
//! evaluated as `d(query, member)`, the same argument order the
//! brute-force kernel uses, so the minimum found is one of the values the
//! brute-force loop would see.
//!
//! The directed distance uses the early break of Taha and Hanbury: once a
//! member of `B` closer than the running maximum is found, the current
//! point of `A` cannot raise the maximum and its search stops. Only
//! dominated terms are skipped, so the result is bit-identical to the
//! brute-force value.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hausdorff::CompactSet;
use crate::metric::{BoundedMetric, Point, Space, SpaceId};

/// Subtrees at or below this size are scanned linearly.
const LEAF: usize = 8;

/// Rounding allowance on triangle-inequality lower bounds. A subtree is
/// skipped only when its lower bound exceeds the best distance by more
/// than this, so rounding in the metric can never drop the true minimum.
const PRUNE_SLACK: f64 = 1e-9;

/// Chunk size for the parallel outer loop of the directed distance.
const CHUNK: usize = 256;

#[derive(Debug, Clone)]
pub struct SpatialIndex {
    space: Arc<Space>,
    space_id: SpaceId,
    order: Vec<Point>,
    radius: Vec<f64>,
    split: Vec<usize>,
}

impl SpatialIndex {
    pub fn build(set: &CompactSet) -> Self {
        let space = set.ambient().clone();
        let members = set.members();
        let n = members.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut radius = vec![0.0; n];
        let mut split = vec![0; n];
        let mut scratch = Vec::with_capacity(n);
        build_node(&space, members, &mut perm, 0, n, &mut radius, &mut split, &mut scratch);
        let order = perm.iter().map(|&i| members[i].clone()).collect();
        Self {
            space_id: space.id(),
            space,
            order,
            radius,
            split,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Minimum of `d(q, m)` over the indexed members, `None` when empty.
    pub fn nearest_distance(&self, q: &Point) -> Option<f64> {
        if self.order.is_empty() {
            return None;
        }
        let mut best = f64::INFINITY;
        self.search(q, 0, self.order.len(), &mut best, f64::NEG_INFINITY);
        Some(best)
    }

    /// Search `[lo, hi)`. Returns true as soon as `best < stop`.
    fn search(&self, q: &Point, lo: usize, hi: usize, best: &mut f64, stop: f64) -> bool {
        if hi - lo <= LEAF {
            for m in &self.order[lo..hi] {
                let d = self.space.distance(q, m);
                if d < *best {
                    *best = d;
                    if *best < stop {
                        return true;
                    }
                }
            }
            return false;
        }
        let d0 = self.space.distance(q, &self.order[lo]);
        if d0 < *best {
            *best = d0;
            if *best < stop {
                return true;
            }
        }
        let mu = self.radius[lo];
        let mid = self.split[lo];
        // inner members satisfy d(vp, m) <= mu, outer members d(vp, m) >= mu
        let (first, second, bound) = if d0 < mu {
            ((lo + 1, mid), (mid, hi), mu - d0)
        } else {
            ((mid, hi), (lo + 1, mid), d0 - mu)
        };
        if first.0 < first.1 && self.search(q, first.0, first.1, best, stop) {
            return true;
        }
        if second.0 < second.1
            && bound <= *best + PRUNE_SLACK
            && self.search(q, second.0, second.1, best, stop)
        {
            return true;
        }
        false
    }

    fn check_fresh(&self, set: &CompactSet) -> Result<()> {
        if set.ambient().id() != self.space_id {
            return Err(Error::AmbientMismatch {
                left: set.ambient().name().to_string(),
                right: self.space.name().to_string(),
            });
        }
        if set.len() != self.order.len() {
            return Err(Error::StaleIndex {
                indexed: self.order.len(),
                actual: set.len(),
            });
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn build_node(
    space: &Space,
    members: &[Point],
    perm: &mut [usize],
    lo: usize,
    hi: usize,
    radius: &mut [f64],
    split: &mut [usize],
    scratch: &mut Vec<(f64, usize)>,
) {
    if hi - lo <= LEAF {
        return;
    }
    let vp = perm[lo];
    scratch.clear();
    scratch.extend(
        perm[lo + 1..hi]
            .iter()
            .map(|&i| (space.distance(&members[vp], &members[i]), i)),
    );
    let k = scratch.len() / 2;
    scratch.select_nth_unstable_by(k, |a, b| a.0.total_cmp(&b.0));
    radius[lo] = scratch[k].0;
    split[lo] = lo + 1 + k;
    for (slot, &(_, i)) in perm[lo + 1..hi].iter_mut().zip(scratch.iter()) {
        *slot = i;
    }
    let mid = lo + 1 + k;
    build_node(space, members, perm, lo + 1, mid, radius, split, scratch);
    build_node(space, members, perm, mid, hi, radius, split, scratch);
}

fn directed_indexed(a: &[Point], b: &SpatialIndex) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return 1.0;
    }
    a.par_chunks(CHUNK)
        .map(|chunk| {
            let mut cmax = 0.0f64;
            for p in chunk {
                let mut best = f64::INFINITY;
                if !b.search(p, 0, b.len(), &mut best, cmax) && best > cmax {
                    cmax = best;
                }
            }
            cmax
        })
        .reduce(|| 0.0, f64::max)
}

/// Directed distance from `a` to the set indexed by `idx_b`.
pub fn directed_hausdorff_fast(a: &CompactSet, b: &CompactSet, idx_b: &SpatialIndex) -> Result<f64> {
    a.same_ambient(b)?;
    idx_b.check_fresh(b)?;
    Ok(directed_indexed(a.members(), idx_b))
}

/// Same value as [`crate::hausdorff::hausdorff_distance`], bit for bit.
pub fn hausdorff_distance_fast(
    a: &CompactSet,
    b: &CompactSet,
    idx_a: &SpatialIndex,
    idx_b: &SpatialIndex,
) -> Result<f64> {
    a.same_ambient(b)?;
    idx_a.check_fresh(a)?;
    idx_b.check_fresh(b)?;
    Ok(match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => 1.0,
        (false, false) => directed_indexed(a.members(), idx_b).max(directed_indexed(b.members(), idx_a)),
    })
}
