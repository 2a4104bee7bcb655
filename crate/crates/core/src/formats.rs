//! JSON documents read and written by the command line.
//!
//! * Finite space: `{"n": 3, "labels": ["a", "b", "c"], "dist": [d10, d20, d21]}`
//!   with `dist` the strict lower triangle in row-major order.
//! * Point cloud: an array of coordinate vectors, or for finite spaces an
//!   array of labels or indices. An empty or blank file is the empty set.
//! * Action: `{"snap": 1e-9, "generators": [{"kind": "rotation", "k": 1, "n": 4}, ...]}`.
//!   Kinds are `identity`, `rotation {k, n}`, `scale {c, fine?, coarse?}`,
//!   `flow {dt, fine?, coarse?}` and `permutation {table}`. With `fine` or
//!   `coarse`, a scale or flow expands to the steps `c^(±2^j)` or
//!   `±dt 2^j` for `-fine <= j <= coarse`; without them, the single map `c`
//!   or `dt` is added.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{FiniteSpace, Point, Space, SpaceKind};
use crate::quotient::{GroupAction, Generator};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteSpaceDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub dist: Vec<f64>,
}

impl FiniteSpaceDoc {
    pub fn from_space(s: &FiniteSpace) -> Self {
        Self {
            n: s.len(),
            labels: Some(s.labels().to_vec()),
            dist: s.lower_triangle(),
        }
    }

    pub fn into_space(self) -> Result<FiniteSpace> {
        FiniteSpace::from_lower_triangle(self.n, self.labels, &self.dist)
    }
}

pub fn parse_finite_space(text: &str) -> Result<FiniteSpace> {
    serde_json::from_str::<FiniteSpaceDoc>(text)?.into_space()
}

pub fn write_finite_space(s: &FiniteSpace) -> String {
    serde_json::to_string_pretty(&FiniteSpaceDoc::from_space(s)).expect("finite space serializes")
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum CloudEntry {
    Coords(Vec<f64>),
    Index(usize),
    Label(String),
}

fn parse_entries(text: &str) -> Result<Vec<CloudEntry>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(serde_json::from_str(text)?)
}

/// Coordinate vectors of a point-cloud document.
pub fn parse_coords(text: &str) -> Result<Vec<Vec<f64>>> {
    parse_entries(text)?
        .into_iter()
        .enumerate()
        .map(|(i, e)| match e {
            CloudEntry::Coords(c) => Ok(c),
            _ => Err(Error::Parse(format!("entry {i} is not a coordinate vector"))),
        })
        .collect()
}

/// Points of `space` listed in a point-cloud document.
pub fn parse_points(text: &str, space: &Space) -> Result<Vec<Point>> {
    let entries = parse_entries(text)?;
    let mut out = Vec::with_capacity(entries.len());
    for (i, e) in entries.into_iter().enumerate() {
        let p = match (e, space.kind()) {
            (CloudEntry::Coords(c), SpaceKind::Coordinate { .. }) => Point::Coords(c),
            (CloudEntry::Index(k), SpaceKind::Finite(_)) => Point::Id(k),
            (CloudEntry::Label(l), SpaceKind::Finite(f)) => {
                Point::Id(f.label_index(&l).ok_or_else(|| Error::Parse(format!("entry {i}: unknown label `{l}`")))?)
            }
            (CloudEntry::Coords(c), SpaceKind::Finite(f)) if f.coords().is_some() => {
                let metric = space.coord_metric();
                Point::Id(
                    f.snap(&c, &metric, 0.0)
                        .ok_or_else(|| Error::Parse(format!("entry {i}: {c:?} is not a sample point")))?,
                )
            }
            _ => return Err(Error::Parse(format!("entry {i} does not match space `{}`", space.name()))),
        };
        space.check_point(&p)?;
        out.push(p);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Identity,
    Rotation {
        k: i64,
        n: u32,
    },
    Scale {
        c: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fine: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coarse: Option<u32>,
    },
    Flow {
        dt: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fine: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coarse: Option<u32>,
    },
    Permutation {
        table: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub spec: GeneratorSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snap: Option<f64>,
    pub generators: Vec<GeneratorDoc>,
}

impl ActionDoc {
    pub fn has_permutations(&self) -> bool {
        self.generators
            .iter()
            .any(|g| matches!(g.spec, GeneratorSpec::Permutation { .. }))
    }

    pub fn into_action(self) -> Result<GroupAction> {
        let mut action = GroupAction::new();
        if let Some(s) = self.snap {
            if !(s >= 0.0) {
                return Err(Error::InvalidParameter(format!("snap {s} must be non-negative")));
            }
            action = action.with_snap(s);
        }
        for (i, g) in self.generators.into_iter().enumerate() {
            let name = |default: String| g.label.clone().unwrap_or(default);
            match g.spec {
                GeneratorSpec::Identity => action = action.with(name(format!("g{i}:identity")), Generator::identity()),
                GeneratorSpec::Rotation { k, n } => {
                    if n == 0 {
                        return Err(Error::Parse(format!("generator {i}: rotation order must be positive")));
                    }
                    action = action.with(name(format!("g{i}:rotation({k}/{n})")), Generator::rotation(k, n));
                }
                GeneratorSpec::Scale { c, fine, coarse } => {
                    if !(c > 0.0 && c.is_finite()) {
                        return Err(Error::Parse(format!("generator {i}: scale {c} must be positive")));
                    }
                    for (label, t) in steps(&name(format!("g{i}:scale")), fine, coarse) {
                        action = action.with(label, Generator::halfline_scale(c.powf(t)));
                    }
                }
                GeneratorSpec::Flow { dt, fine, coarse } => {
                    if !dt.is_finite() {
                        return Err(Error::Parse(format!("generator {i}: flow time {dt} must be finite")));
                    }
                    for (label, t) in steps(&name(format!("g{i}:flow")), fine, coarse) {
                        action = action.with(label, Generator::circle_flow(dt * t));
                    }
                }
                GeneratorSpec::Permutation { table } => {
                    action = action.with(name(format!("g{i}:permutation")), Generator::Permutation(table));
                }
            }
        }
        if action.generators().is_empty() {
            return Err(Error::Parse("action has no generators".into()));
        }
        Ok(action)
    }
}

/// Exponents for a one-parameter generator: `1` alone, or `±2^j` for
/// `-fine <= j <= coarse`.
fn steps(label: &str, fine: Option<u32>, coarse: Option<u32>) -> Vec<(String, f64)> {
    if fine.is_none() && coarse.is_none() {
        return vec![(label.to_string(), 1.0)];
    }
    let (fine, coarse) = (fine.unwrap_or(0) as i32, coarse.unwrap_or(0) as i32);
    (-fine..=coarse)
        .flat_map(|j| {
            let t = 2f64.powi(j);
            [(format!("{label}(+{t})"), t), (format!("{label}(-{t})"), -t)]
        })
        .collect()
}

pub fn parse_action(text: &str) -> Result<ActionDoc> {
    Ok(serde_json::from_str(text)?)
}
