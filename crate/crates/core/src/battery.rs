//! Seeded generators of random finite spaces and sequential families used
//! by the verification batteries.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hausdorff::CompactSet;
use crate::hspace::SequentialFamily;
use crate::metric::{CoordMetric, FiniteSpace, Space};

pub const DEFAULT_SEED: u64 = 20240611;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cutoff Euclidean metric on `n` uniform points of `[0, 1.5]^2`.
pub fn euclidean_space(rng: &mut impl Rng, n: usize) -> FiniteSpace {
    let pts = (0..n)
        .map(|_| vec![rng.gen_range(0.0..1.5), rng.gen_range(0.0..1.5)])
        .collect();
    FiniteSpace::from_points(pts, &CoordMetric::EuclidCutoff).expect("generated points are finite")
}

/// Cutoff shortest-path metric of a random connected weighted graph: a
/// random spanning tree plus extra edges, weights in `[0.05, 0.6)`.
pub fn graph_space(rng: &mut impl Rng, n: usize) -> FiniteSpace {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    let edge = |d: &mut Vec<Vec<f64>>, i: usize, j: usize, w: f64| {
        if w < d[i][j] {
            d[i][j] = w;
            d[j][i] = w;
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = rng.gen_range(0.05..0.6);
        edge(&mut d, i, j, w);
    }
    for _ in 0..n {
        if n < 2 {
            break;
        }
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let w = rng.gen_range(0.05..0.6);
            edge(&mut d, i, j, w);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    for row in &mut d {
        for x in row.iter_mut() {
            *x = x.min(1.0);
        }
    }
    FiniteSpace::from_matrix(None, d).expect("shortest paths are finite on a connected graph")
}

pub fn uniform_space(rng: &mut impl Rng, n: usize) -> FiniteSpace {
    FiniteSpace::uniform(n, rng.gen_range(0.1..=1.0)).expect("distance in range")
}

/// One of the three kinds above, chosen at random.
pub fn random_space(rng: &mut impl Rng, n: usize) -> FiniteSpace {
    match rng.gen_range(0..5) {
        0 | 1 => euclidean_space(rng, n),
        2 | 3 => graph_space(rng, n),
        _ => uniform_space(rng, n),
    }
}

/// `count` random spaces with sizes in `min_n..=max_n`.
pub fn space_battery(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<FiniteSpace> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.gen_range(min_n..=max_n);
            random_space(&mut r, n)
        })
        .collect()
}

fn random_subset(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random family over a random space of at most `max_n` points. Terms
/// are random subsets, settling onto the limit with growing probability so
/// that both convergent and divergent tails occur.
pub fn random_family(rng: &mut impl Rng, max_n: usize) -> SequentialFamily {
    let n = rng.gen_range(1..=max_n);
    let space: Arc<Space> = Space::finite("battery", random_space(rng, n));
    let limit_ids = random_subset(rng, n);
    let len = rng.gen_range(4..=30);
    let settle: f64 = rng.gen_range(0.0..1.0);
    let mut ids: Vec<usize> = (0..n).collect();
    let terms = (0..len)
        .map(|k| {
            let t = if rng.gen_bool((settle * k as f64 / len as f64).min(1.0)) {
                limit_ids.clone()
            } else if rng.gen_bool(0.3) {
                // perturb the limit by one point
                ids.shuffle(rng);
                let mut s = limit_ids.clone();
                if let Some(pos) = s.iter().position(|&x| x == ids[0]) {
                    s.remove(pos);
                } else {
                    s.push(ids[0]);
                }
                s
            } else {
                random_subset(rng, n)
            };
            CompactSet::from_ids(space.clone(), t).expect("ids in range")
        })
        .collect();
    let limit = CompactSet::from_ids(space, limit_ids).expect("ids in range");
    SequentialFamily::new(terms, limit).expect("terms share the ambient space")
}

pub fn family_battery(seed: u64, count: usize, max_n: usize) -> Vec<SequentialFamily> {
    let mut r = rng(seed);
    (0..count).map(|_| random_family(&mut r, max_n)).collect()
}
