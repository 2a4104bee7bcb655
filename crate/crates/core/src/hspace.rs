//! Finite models of the hyperspace `H` of compact subsets.
//!
//! For a finite ambient space every subset is compact, so `H` is the power
//! set with the Hausdorff metric. [`HSpaceEnum`] materializes it together
//! with the full distance matrix, and the verifiers here check the
//! universal-family properties (closedness of `{(Z, x) : x in Z}`,
//! openness and properness of the projection), the covering
//! characterization of convergence along a sequence, and the net argument
//! for compactness of `H`.
//!
//! Balls are strict throughout: `B(x, r) = {y : d(x, y) < r}`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hausdorff::{epsilon_net, hausdorff_raw, CompactSet};
use crate::metric::{BoundedMetric, FiniteSpace, Point, Space};
use crate::report::Report;

/// Largest ambient space [`enumerate_h`] accepts. The distance matrix has
/// `4^n` entries, 128 MiB at this size.
pub const MAX_ENUM_POINTS: usize = 12;

/// All `2^n` subsets of a finite space with their Hausdorff distances.
/// Element `i` is the subset whose members are the set bits of `i`.
#[derive(Debug, Clone)]
pub struct HSpaceEnum {
    ambient: Arc<Space>,
    n: usize,
    elements: Vec<CompactSet>,
    dmat: Vec<f64>,
}

pub fn enumerate_h(ambient: &Arc<Space>) -> Result<HSpaceEnum> {
    let n = ambient
        .as_finite()
        .ok_or_else(|| Error::InvalidParameter("hyperspace enumeration needs a finite space".into()))?
        .len();
    if n > MAX_ENUM_POINTS {
        return Err(Error::Capacity {
            n,
            max: MAX_ENUM_POINTS,
        });
    }
    let count = 1usize << n;
    let elements: Vec<CompactSet> = (0..count)
        .map(|mask| CompactSet::from_ids(ambient.clone(), bits(mask)))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<f64>> = (0..count)
        .into_par_iter()
        .map(|i| {
            (0..i)
                .map(|j| hausdorff_raw(ambient, elements[i].members(), elements[j].members()))
                .collect()
        })
        .collect();
    let mut dmat = vec![0.0; count * count];
    for (i, row) in rows.iter().enumerate() {
        for (j, &d) in row.iter().enumerate() {
            dmat[i * count + j] = d;
            dmat[j * count + i] = d;
        }
    }
    Ok(HSpaceEnum {
        ambient: ambient.clone(),
        n,
        elements,
        dmat,
    })
}

/// Convenience wrapper for [`enumerate_h`] on a bare finite space.
pub fn enumerate_finite(space: FiniteSpace) -> Result<HSpaceEnum> {
    enumerate_h(&Space::finite("X", space))
}

fn bits(mask: usize) -> impl Iterator<Item = usize> {
    (0..usize::BITS as usize).filter(move |i| mask >> i & 1 == 1)
}

impl HSpaceEnum {
    pub fn ambient(&self) -> &Arc<Space> {
        &self.ambient
    }

    pub fn finite(&self) -> &FiniteSpace {
        self.ambient.as_finite().expect("enumerations are over finite spaces")
    }

    /// Number of ambient points.
    pub fn points(&self) -> usize {
        self.n
    }

    /// Number of elements, `2^n`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[CompactSet] {
        &self.elements
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dmat[i * self.elements.len() + j]
    }

    /// Element index of a set over the same ambient.
    pub fn index_of(&self, set: &CompactSet) -> Option<usize> {
        if set.ambient().id() != self.ambient.id() {
            return None;
        }
        Some(set.ids()?.into_iter().fold(0, |m, i| m | 1 << i))
    }

    fn x(&self, i: usize, j: usize) -> f64 {
        self.finite().d(i, j)
    }

    fn name(&self, mask: usize) -> String {
        let labels = self.finite().labels();
        let inner: Vec<&str> = bits(mask).map(|i| labels[i].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// The pairs `(Z, x)` with `x in Z`, as (element index, point index).
#[derive(Debug, Clone)]
pub struct UniversalFamily {
    pairs: Vec<(usize, usize)>,
}

impl UniversalFamily {
    pub fn over(e: &HSpaceEnum) -> Self {
        let pairs = (0..e.len()).flat_map(|m| bits(m).map(move |x| (m, x))).collect();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, z: usize, x: usize) -> bool {
        z >> x & 1 == 1
    }
}

/// For every `(Z, x)` with `x` not in `Z`, take `r = d(x, Z) / 2` (or 1
/// when `Z` is empty), confirm `B(x, r)` misses `Z`, and confirm the
/// product-metric ball of radius `r / 2` around `(Z, x)` contains no pair
/// of the universal family.
pub fn verify_z_closed(e: &HSpaceEnum, u: &UniversalFamily) -> Report {
    let n = e.points();
    let per_mask: Vec<Report> = (0..e.len())
        .into_par_iter()
        .map(|z| {
            let mut report = Report::new();
            for x in (0..n).filter(|&x| !u.contains(z, x)) {
                let r = if z == 0 {
                    1.0
                } else {
                    bits(z).map(|y| e.x(x, y)).fold(f64::INFINITY, f64::min) / 2.0
                };
                if !(r > 0.0) {
                    report.fail(
                        "z-closed/radius",
                        format!("{} has distance 0 to {}", e.finite().labels()[x], e.name(z)),
                        0.0,
                    );
                    continue;
                }
                if let Some(y) = bits(z).find(|&y| e.x(x, y) < r) {
                    report.fail(
                        "z-closed/ball",
                        format!("B({}, {r}) meets {} at {}", e.finite().labels()[x], e.name(z), e.finite().labels()[y]),
                        r - e.x(x, y),
                    );
                }
                let half = r / 2.0;
                for &(z2, x2) in u.pairs() {
                    if e.d(z, z2) < half && e.x(x, x2) < half {
                        report.fail(
                            "z-closed/product-ball",
                            format!(
                                "({}, {}) lies within {half} of ({}, {})",
                                e.name(z2),
                                e.finite().labels()[x2],
                                e.name(z),
                                e.finite().labels()[x]
                            ),
                            half - e.d(z, z2).max(e.x(x, x2)),
                        );
                    }
                }
            }
            report
        })
        .collect();
    let mut out = Report::new();
    per_mask.into_iter().for_each(|r| out.extend(r));
    out
}

/// Check `pi_1(Z-family ∩ B((Z, x), r)) = B(Z, r)` for every pair of the
/// universal family and every radius in `radii`, by enumerating both sides.
pub fn verify_pi1_open(e: &HSpaceEnum, u: &UniversalFamily, radii: &[f64]) -> Result<Report> {
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
        return Err(Error::InvalidParameter(format!("radius {r} not in (0, 1]")));
    }
    let count = e.len();
    let per_pair: Vec<Report> = u
        .pairs()
        .par_iter()
        .map(|&(z, x)| {
            let mut report = Report::new();
            let mut image = vec![false; count];
            for &r in radii {
                image.iter_mut().for_each(|b| *b = false);
                for &(z2, x2) in u.pairs() {
                    if e.d(z, z2) < r && e.x(x, x2) < r {
                        image[z2] = true;
                    }
                }
                for (z2, &in_image) in image.iter().enumerate() {
                    let in_ball = e.d(z, z2) < r;
                    if in_image != in_ball {
                        let side = if in_ball { "ball only" } else { "image only" };
                        report.fail(
                            "pi1-open",
                            format!(
                                "Z={} x={} r={r}: {} in {side}",
                                e.name(z),
                                e.finite().labels()[x],
                                e.name(z2)
                            ),
                            (e.d(z, z2) - r).abs(),
                        );
                    }
                }
            }
            report
        })
        .collect();
    let mut out = Report::new();
    per_pair.into_iter().for_each(|r| out.extend(r));
    Ok(out)
}

/// A truncated sequence `Z_1, ..., Z_N` with a candidate limit `Z_inf`.
#[derive(Debug, Clone)]
pub struct SequentialFamily {
    terms: Vec<CompactSet>,
    limit: CompactSet,
}

impl SequentialFamily {
    pub fn new(terms: Vec<CompactSet>, limit: CompactSet) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter("a sequential family needs at least one term".into()));
        }
        for t in &terms {
            t.same_ambient(&limit)?;
        }
        Ok(Self { terms, limit })
    }

    pub fn terms(&self) -> &[CompactSet] {
        &self.terms
    }

    pub fn limit(&self) -> &CompactSet {
        &self.limit
    }

    /// Truncation length `N`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// 0-based index where the tail (the last half of the terms) starts.
    pub fn tail_start(&self) -> usize {
        self.terms.len() / 2
    }

    /// `d_H(Z_n, Z_inf)` for every term, in order.
    pub fn residuals(&self) -> Vec<f64> {
        let space = self.limit.ambient();
        self.terms
            .iter()
            .map(|t| hausdorff_raw(space, t.members(), self.limit.members()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProperOutcome {
    /// `point` of `Z_inf` has `hits` tail picks strictly within the
    /// tolerance; `required` is the pigeonhole share `ceil(tail / net)`.
    Accumulates {
        point: Point,
        hits: usize,
        tail: usize,
        required: usize,
    },
    /// The family does not converge along the available tail.
    HypothesisFailed { index: usize, residual: f64, reason: String },
    /// The family converges but no point of the limit collects enough picks.
    ConclusionFailed { best_hits: usize, required: usize },
}

/// Finite form of the subsequence argument for properness: when the tail
/// `Z_n` is within `tol / 2` of `Z_inf`, cover `Z_inf` by a `tol / 2`-net
/// and return the net point collecting the most tail picks within `tol`.
/// Every tail pick lies within `tol` of some net point, so one net point
/// collects at least `ceil(tail / |net|)` of them.
pub fn verify_pi1_proper(f: &SequentialFamily, picks: &[Point], tol: f64) -> Result<ProperOutcome> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    if picks.len() != f.len() {
        return Err(Error::InvalidParameter(format!(
            "{} picks for {} terms",
            picks.len(),
            f.len()
        )));
    }
    for (n, (p, z)) in picks.iter().zip(f.terms()).enumerate() {
        if !z.contains(p) {
            return Err(Error::InvalidParameter(format!("pick {} is not a member of Z_{}", p, n + 1)));
        }
    }
    if let Some(n) = f.terms().iter().position(CompactSet::is_empty) {
        return Ok(ProperOutcome::HypothesisFailed {
            index: n + 1,
            residual: 1.0,
            reason: "empty term".into(),
        });
    }
    let start = f.tail_start();
    let residuals = f.residuals();
    let (worst, residual) = residuals[start..]
        .iter()
        .enumerate()
        .fold((start, 0.0), |acc, (k, &r)| if r > acc.1 { (start + k, r) } else { acc });
    if !(residual < tol / 2.0) {
        return Ok(ProperOutcome::HypothesisFailed {
            index: worst + 1,
            residual,
            reason: format!("tail Hausdorff residual {residual} is not below {}", tol / 2.0),
        });
    }
    let space = f.limit().ambient();
    let net = epsilon_net(f.limit(), tol / 2.0)?;
    let tail = &picks[start..];
    let required = tail.len().div_ceil(net.len());
    let (best, hits) = net
        .members()
        .iter()
        .map(|y| (y, tail.iter().filter(|x| space.distance(x, y) < tol).count()))
        .fold((None, 0), |acc, (y, h)| if acc.0.is_none() || h > acc.1 { (Some(y), h) } else { acc });
    let point = best.expect("limit is nonempty once the tail converges");
    if hits >= required {
        Ok(ProperOutcome::Accumulates {
            point: point.clone(),
            hits,
            tail: tail.len(),
            required,
        })
    } else {
        Ok(ProperOutcome::ConclusionFailed {
            best_hits: hits,
            required,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityRow {
    /// 1-based term index.
    pub n: usize,
    /// `Z_n ⊆ ∪_{z in Z_inf} B(z, eps)`.
    pub term_covered: bool,
    /// `Z_inf ⊆ ∪_{z in Z_n} B(z, eps)`.
    pub limit_covered: bool,
    pub hausdorff: f64,
}

#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub eps: f64,
    pub rows: Vec<ContinuityRow>,
    /// Least `N` such that both covering conditions hold for all
    /// `N <= n <= len`, if the last term satisfies them.
    pub threshold: Option<usize>,
    /// Largest residual over the tail, reported when no threshold exists.
    pub tail_residual: f64,
    /// Indices where the covering conditions disagree with `d_H < eps`.
    pub equivalence: Report,
}

impl ContinuityReport {
    pub fn passed(&self) -> bool {
        self.threshold.is_some() && self.equivalence.is_empty()
    }
}

fn covered_by(space: &Space, set: &[Point], centers: &[Point], eps: f64) -> bool {
    set.iter().all(|p| centers.iter().any(|c| space.distance(p, c) < eps))
}

/// Evaluate the two covering conditions at every term, find the least
/// index from which both hold, and cross-check them against
/// `d_H(Z_n, Z_inf) < eps` term by term.
pub fn verify_family_continuity(f: &SequentialFamily, eps: f64) -> Result<ContinuityReport> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidParameter(format!("eps {eps} not in (0, 1]")));
    }
    let space = f.limit().ambient();
    let limit = f.limit().members();
    let residuals = f.residuals();
    let mut rows = Vec::with_capacity(f.len());
    let mut equivalence = Report::new();
    for (k, (t, &dh)) in f.terms().iter().zip(&residuals).enumerate() {
        let row = ContinuityRow {
            n: k + 1,
            term_covered: covered_by(space, t.members(), limit, eps),
            limit_covered: covered_by(space, limit, t.members(), eps),
            hausdorff: dh,
        };
        if (row.term_covered && row.limit_covered) != (dh < eps) {
            equivalence.fail(
                "continuity/equivalence",
                format!(
                    "n={}: covering ({}, {}) but d_H={dh} vs eps={eps}",
                    row.n, row.term_covered, row.limit_covered
                ),
                (dh - eps).abs(),
            );
        }
        rows.push(row);
    }
    let good = |r: &ContinuityRow| r.term_covered && r.limit_covered;
    let threshold = if rows.last().is_some_and(good) {
        let bad_tail = rows.iter().rposition(|r| !good(r));
        Some(bad_tail.map_or(1, |i| i + 2))
    } else {
        None
    };
    let tail_residual = residuals[f.tail_start()..].iter().copied().fold(0.0, f64::max);
    Ok(ContinuityReport {
        eps,
        rows,
        threshold,
        tail_residual,
        equivalence,
    })
}

/// Check that the nonempty subsets of `net` form an `eps`-net of the
/// nonempty elements of `H`: each nonempty `Z` is within `eps` of some
/// nonempty subset of the net. The search over subsets is exhaustive.
pub fn verify_compactness_net(e: &HSpaceEnum, eps: f64, net: &CompactSet) -> Result<Report> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps {eps} must be positive")));
    }
    let net_mask = e
        .index_of(net)
        .ok_or_else(|| Error::InvalidParameter("net is not a subset of the enumerated space".into()))?;
    if net_mask == 0 && e.points() > 0 {
        return Err(Error::InvalidParameter("empty net".into()));
    }
    for x in 0..e.points() {
        let d = bits(net_mask).map(|y| e.x(x, y)).fold(f64::INFINITY, f64::min);
        if d > eps {
            return Err(Error::InvalidParameter(format!(
                "net does not cover {} within {eps}",
                e.finite().labels()[x]
            )));
        }
    }
    let subsets: Vec<usize> = (1..e.len()).filter(|s| s & !net_mask == 0).collect();
    let per_z: Vec<Option<(usize, f64)>> = (1..e.len())
        .into_par_iter()
        .map(|z| {
            let best = subsets.iter().map(|&s| e.d(z, s)).fold(f64::INFINITY, f64::min);
            (best > eps).then_some((z, best))
        })
        .collect();
    let mut report = Report::new();
    for (z, best) in per_z.into_iter().flatten() {
        report.fail(
            "compactness-net",
            format!("{} is {best} from every subset of the net", e.name(z)),
            best - eps,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hausdorff::hausdorff_distance;
    use crate::metric::CoordMetric;

    fn interval(xs: &[f64]) -> Arc<Space> {
        let pts = xs.iter().map(|&x| vec![x]).collect();
        Space::finite("I", FiniteSpace::from_points(pts, &CoordMetric::EuclidCutoff).unwrap())
    }

    #[test]
    fn small_enumerations() {
        let e0 = enumerate_finite(FiniteSpace::uniform(0, 0.5).unwrap()).unwrap();
        assert_eq!(e0.len(), 1);
        assert!(e0.elements()[0].is_empty());

        let e1 = enumerate_finite(FiniteSpace::uniform(1, 0.5).unwrap()).unwrap();
        assert_eq!(e1.len(), 2);
        assert_eq!([e1.d(0, 0), e1.d(0, 1), e1.d(1, 0), e1.d(1, 1)], [0.0, 1.0, 1.0, 0.0]);

        let e2 = enumerate_finite(FiniteSpace::from_lower_triangle(2, None, &[0.6]).unwrap()).unwrap();
        // masks: 1={x}, 2={y}, 3={x,y}
        assert_eq!(e2.d(1, 2), 0.6);
        assert_eq!(e2.d(1, 3), 0.6);
        assert_eq!(e2.d(2, 3), 0.6);
    }

    #[test]
    fn capacity_guard() {
        let big = FiniteSpace::uniform(MAX_ENUM_POINTS + 1, 0.5).unwrap();
        assert!(matches!(enumerate_finite(big), Err(Error::Capacity { .. })));
        assert!(enumerate_h(&Space::coordinate("R", 1, CoordMetric::EuclidCutoff)).is_err());
    }

    #[test]
    fn dmat_matches_direct_computation() {
        let x = interval(&[0.0, 0.2, 0.5, 0.9]);
        let e = enumerate_h(&x).unwrap();
        for i in 0..e.len() {
            for j in 0..e.len() {
                let d = hausdorff_distance(&e.elements()[i], &e.elements()[j]).unwrap();
                assert_eq!(e.d(i, j), d);
            }
        }
        assert_eq!(e.index_of(&e.elements()[11]), Some(11));
    }

    #[test]
    fn universal_family_pairs() {
        let e = enumerate_finite(FiniteSpace::uniform(3, 0.5).unwrap()).unwrap();
        let u = UniversalFamily::over(&e);
        assert_eq!(u.pairs().len(), 3 * 4);
        assert!(u.pairs().iter().all(|&(z, x)| z >> x & 1 == 1));
    }

    #[test]
    fn z_closed_on_uniform_space() {
        let e = enumerate_finite(FiniteSpace::uniform(3, 0.5).unwrap()).unwrap();
        let u = UniversalFamily::over(&e);
        assert!(verify_z_closed(&e, &u).is_empty());
    }

    #[test]
    fn z_closed_flags_pseudometrics() {
        // distinct points at distance 0 break closedness
        let s = FiniteSpace::from_lower_triangle(2, None, &[0.0]).unwrap();
        let e = enumerate_finite(s).unwrap();
        let u = UniversalFamily::over(&e);
        assert!(!verify_z_closed(&e, &u).is_empty());
    }

    #[test]
    fn pi1_open_on_interval() {
        let e = enumerate_h(&interval(&[0.0, 0.15, 0.4])).unwrap();
        let u = UniversalFamily::over(&e);
        let radii: Vec<f64> = (1..=10).map(|k| k as f64 / 10.0).collect();
        assert!(verify_pi1_open(&e, &u, &radii).unwrap().is_empty());
        assert!(verify_pi1_open(&e, &u, &[0.0]).is_err());
        assert!(verify_pi1_open(&e, &u, &[1.5]).is_err());
    }

    fn line_space() -> Arc<Space> {
        Space::coordinate("[-1,1]", 1, CoordMetric::EuclidCutoff)
    }

    fn set(space: &Arc<Space>, xs: &[f64]) -> CompactSet {
        CompactSet::from_coords(space.clone(), xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn proper_constant_family() {
        let x = line_space();
        let f = SequentialFamily::new(vec![set(&x, &[0.3]); 10], set(&x, &[0.3])).unwrap();
        let picks = vec![Point::Coords(vec![0.3]); 10];
        match verify_pi1_proper(&f, &picks, 0.05).unwrap() {
            ProperOutcome::Accumulates { point, hits, tail, .. } => {
                assert_eq!(point, Point::Coords(vec![0.3]));
                assert_eq!(hits, tail);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn proper_shrinking_singletons() {
        let x = line_space();
        let terms = (1..=100).map(|n| set(&x, &[1.0 / n as f64])).collect();
        let f = SequentialFamily::new(terms, set(&x, &[0.0])).unwrap();
        let picks: Vec<Point> = (1..=100).map(|n| Point::Coords(vec![1.0 / n as f64])).collect();
        match verify_pi1_proper(&f, &picks, 0.05).unwrap() {
            ProperOutcome::Accumulates { point, .. } => assert_eq!(point, Point::Coords(vec![0.0])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn proper_hypothesis_failure() {
        let x = line_space();
        let terms = (1..=20).map(|n| set(&x, &[if n % 2 == 0 { 0.0 } else { 1.0 }])).collect();
        let f = SequentialFamily::new(terms, set(&x, &[0.0])).unwrap();
        let picks: Vec<Point> = f.terms().iter().map(|t| t.members()[0].clone()).collect();
        assert!(matches!(
            verify_pi1_proper(&f, &picks, 0.05).unwrap(),
            ProperOutcome::HypothesisFailed { .. }
        ));
        // picks must come from the terms
        let bad = vec![Point::Coords(vec![0.5]); 20];
        assert!(verify_pi1_proper(&f, &bad, 0.05).is_err());
    }

    #[test]
    fn proper_with_spread_limit() {
        // Z_n = Z_inf = three separated points, picks cycle through them.
        let x = line_space();
        let z = set(&x, &[-0.5, 0.0, 0.5]);
        let f = SequentialFamily::new(vec![z.clone(); 30], z).unwrap();
        let picks: Vec<Point> = (0..30).map(|k| Point::Coords(vec![[-0.5, 0.0, 0.5][k % 3]])).collect();
        assert!(matches!(
            verify_pi1_proper(&f, &picks, 0.1).unwrap(),
            ProperOutcome::Accumulates { hits: 5, required: 5, .. }
        ));
    }

    #[test]
    fn continuity_thresholds() {
        let x = line_space();
        let f = SequentialFamily::new(vec![set(&x, &[0.2, 0.7]); 5], set(&x, &[0.2, 0.7])).unwrap();
        let r = verify_family_continuity(&f, 0.01).unwrap();
        assert_eq!(r.threshold, Some(1));
        assert!(r.passed());

        let terms = (1..=40).map(|n| set(&x, &[0.0, 1.0 / n as f64])).collect();
        let f = SequentialFamily::new(terms, set(&x, &[0.0])).unwrap();
        let r = verify_family_continuity(&f, 0.1).unwrap();
        // 1/n < 0.1 exactly when n >= 11
        assert_eq!(r.threshold, Some(11));
        assert!(r.equivalence.is_empty());

        let terms = (1..=19).map(|n| set(&x, &[if n % 2 == 0 { 0.0 } else { 1.0 }])).collect();
        let f = SequentialFamily::new(terms, set(&x, &[0.0])).unwrap();
        let r = verify_family_continuity(&f, 0.1).unwrap();
        assert_eq!(r.threshold, None);
        assert_eq!(r.tail_residual, 1.0);
        assert!(verify_family_continuity(&f, 0.0).is_err());
    }

    #[test]
    fn continuity_with_empty_terms() {
        let x = line_space();
        let mut terms = vec![CompactSet::empty(x.clone()); 3];
        terms.extend(vec![set(&x, &[0.5]); 3]);
        let f = SequentialFamily::new(terms, set(&x, &[0.5])).unwrap();
        let r = verify_family_continuity(&f, 0.3).unwrap();
        assert_eq!(r.threshold, Some(4));
        assert!(r.rows[0].term_covered && !r.rows[0].limit_covered);
        assert!(r.equivalence.is_empty());
    }

    #[test]
    fn compactness_net_examples() {
        let xs: Vec<f64> = (0..8).map(|i| i as f64 / 7.0).collect();
        let x = interval(&xs);
        let e = enumerate_h(&x).unwrap();
        let net = epsilon_net(&CompactSet::whole(x.clone()).unwrap(), 0.15).unwrap();
        assert_eq!(net.len(), 4);
        assert!(verify_compactness_net(&e, 0.15, &net).unwrap().is_empty());

        let whole = CompactSet::whole(x.clone()).unwrap();
        assert!(verify_compactness_net(&e, 1e-9, &whole).unwrap().is_empty());

        let single = CompactSet::from_ids(x.clone(), [3]).unwrap();
        assert!(verify_compactness_net(&e, 1.0, &single).unwrap().is_empty());
        // not a net at this radius
        assert!(verify_compactness_net(&e, 0.15, &single).is_err());
    }
}
