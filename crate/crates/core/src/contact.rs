//! Contact-graph extraction, grid-point classification and endpoint weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CpgError, Result};
use crate::graph::SimpleGraph;
use crate::grid::{CpgRepresentation, GridPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointTag {
    /// Endpoint of four paths.
    TypeI,
    /// Endpoint of two paths, interior of a third that runs straight through.
    TypeIIa,
    /// Endpoint of two paths, interior of a third that bends there.
    TypeIIb,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClass {
    pub point: GridPoint,
    pub tag: PointTag,
    pub ends: Vec<String>,
    pub through: Option<String>,
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(pub u32);

impl HalfInt {
    pub const fn from_halves(halves: u32) -> Self {
        Self(halves)
    }

    pub const fn whole(n: u32) -> Self {
        Self(2 * n)
    }

    pub const fn halves(self) -> u32 {
        self.0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt(0), |a, b| a + b)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Occupants {
    ends: Vec<usize>,
    through: Vec<usize>,
}

/// Point-to-path incidence for one representation.
#[derive(Debug, Clone)]
pub struct ContactIndex<'a> {
    rep: &'a CpgRepresentation,
    points: BTreeMap<GridPoint, Occupants>,
}

impl<'a> ContactIndex<'a> {
    pub fn new(rep: &'a CpgRepresentation) -> Self {
        let mut points: BTreeMap<GridPoint, Occupants> = BTreeMap::new();
        for (idx, path) in rep.paths.iter().enumerate() {
            let Ok(pts) = path.expand() else { continue };
            let last = pts.len() - 1;
            for (i, p) in pts.into_iter().enumerate() {
                let occ = points.entry(p).or_default();
                if i == 0 || i == last {
                    occ.ends.push(idx);
                } else {
                    occ.through.push(idx);
                }
            }
        }
        Self { rep, points }
    }

    fn label(&self, idx: usize) -> &'a str {
        &self.rep.paths[idx].vertex
    }

    /// Every lattice point lying on at least one path.
    pub fn occupied_points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        self.points.keys().copied()
    }

    pub fn classify(&self, p: GridPoint) -> PointClass {
        let empty = Occupants::default();
        let occ = self.points.get(&p).unwrap_or(&empty);
        let mut ends: Vec<String> = occ.ends.iter().map(|&i| self.label(i).to_string()).collect();
        ends.sort();
        let through = occ.through.first().copied();
        let tag = match (occ.ends.len(), occ.through.len()) {
            (4, 0) => PointTag::TypeI,
            (2, 1) => {
                if self.rep.paths[through.unwrap()].bends_at(p) {
                    PointTag::TypeIIb
                } else {
                    PointTag::TypeIIa
                }
            }
            _ => PointTag::Plain,
        };
        PointClass {
            point: p,
            tag,
            ends,
            through: through.map(|i| self.label(i).to_string()),
        }
    }

    /// Number of paths meeting at `p`, choose two.
    pub fn tau(&self, p: GridPoint) -> u64 {
        let j = self.points.get(&p).map_or(0, |o| (o.ends.len() + o.through.len()) as u64);
        j * j.saturating_sub(1) / 2
    }

    /// For every unordered pair of distinct paths, the number of lattice points
    /// they share where at least one of them ends.
    pub fn touch_counts(&self) -> BTreeMap<(String, String), usize> {
        let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
        for occ in self.points.values() {
            let all: Vec<(usize, bool)> = occ
                .ends
                .iter()
                .map(|&i| (i, true))
                .chain(occ.through.iter().map(|&i| (i, false)))
                .collect();
            for (x, &(i, end_i)) in all.iter().enumerate() {
                for &(j, end_j) in &all[x + 1..] {
                    if i == j || !(end_i || end_j) {
                        continue;
                    }
                    let (a, b) = (self.label(i), self.label(j));
                    let key = if a <= b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
                    *counts.entry(key).or_default() += 1;
                }
            }
        }
        counts
    }

    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in self.rep.labels() {
            g.add_vertex(v);
        }
        for (a, b) in self.touch_counts().keys() {
            g.add_edge(a, b).expect("labels are vertices");
        }
        g
    }

    /// `w_u^i` for endpoint `i` (1 = first corner, 2 = last corner).
    pub fn endpoint_weight(&self, vertex: &str, i: u8) -> Result<HalfInt> {
        let idx = self
            .rep
            .paths
            .iter()
            .position(|p| p.vertex == vertex)
            .ok_or_else(|| CpgError::UnknownVertex(vertex.to_string()))?;
        let (q1, q2) = self.rep.paths[idx].endpoints();
        let q = match i {
            1 => q1,
            2 => q2,
            other => return Err(CpgError::EndpointIndex(other)),
        };
        let occ = self.points.get(&q).cloned().unwrap_or_default();
        let interior = occ.through.iter().filter(|&&j| j != idx).count() as u32;
        let shared_ends = occ.ends.iter().filter(|&&j| j != idx).count() as u32;
        Ok(HalfInt(2 * interior + shared_ends))
    }
}

pub fn classify_point(rep: &CpgRepresentation, p: GridPoint) -> PointClass {
    ContactIndex::new(rep).classify(p)
}

pub fn contact_graph(rep: &CpgRepresentation) -> SimpleGraph {
    ContactIndex::new(rep).graph()
}

pub fn tau(rep: &CpgRepresentation, p: GridPoint) -> u64 {
    ContactIndex::new(rep).tau(p)
}

pub fn endpoint_weight(rep: &CpgRepresentation, vertex: &str, i: u8) -> Result<HalfInt> {
    ContactIndex::new(rep).endpoint_weight(vertex, i)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexWeight {
    pub w1: HalfInt,
    pub w2: HalfInt,
    pub w: HalfInt,
}

/// Endpoint weights and the edge-count comparison. All weights are doubled
/// integers: a serialized `3` means 3/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub weights_doubled: BTreeMap<String, VertexWeight>,
    pub sum_doubled: HalfInt,
    pub edge_count: usize,
    pub equality: bool,
    pub multi_touch_pairs: Vec<(String, String, usize)>,
    /// Internal-consistency failures of the endpoint-weight bounds; always
    /// empty for a correct implementation on a valid representation.
    pub violations: Vec<String>,
}

impl WeightReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn weight_audit(rep: &CpgRepresentation) -> WeightReport {
    let index = ContactIndex::new(rep);
    let mut weights = BTreeMap::new();
    let mut violations = Vec::new();
    for path in &rep.paths {
        let (q1, q2) = path.endpoints();
        let w1 = index.endpoint_weight(&path.vertex, 1).expect("path exists");
        let w2 = index.endpoint_weight(&path.vertex, 2).expect("path exists");
        for (q, w) in [(q1, w1), (q2, w2)] {
            if w.halves() > 3 {
                violations.push(format!("weight {w} of `{}` at {q} exceeds 3/2", path.vertex));
            }
            let tag = index.classify(q).tag;
            let special = matches!(tag, PointTag::TypeI | PointTag::TypeIIa | PointTag::TypeIIb);
            if (w.halves() == 3) != special {
                violations.push(format!("weight {w} of `{}` at {q} disagrees with point class {tag:?}", path.vertex));
            }
        }
        weights.insert(path.vertex.clone(), VertexWeight { w1, w2, w: w1 + w2 });
    }
    let sum: HalfInt = weights.values().map(|w| w.w).sum();
    let touches = index.touch_counts();
    let edge_count = touches.len();
    let multi: Vec<(String, String, usize)> = touches
        .iter()
        .filter(|(_, &c)| c >= 2)
        .map(|((a, b), &c)| (a.clone(), b.clone(), c))
        .collect();
    let equality = 2 * edge_count as u32 == sum.halves();
    if 2 * edge_count as u32 > sum.halves() {
        violations.push(format!("|E| = {edge_count} exceeds the weight sum {sum}"));
    }
    if equality != multi.is_empty() {
        violations.push(format!(
            "equality is {equality} but {} pairs touch more than once",
            multi.len()
        ));
    }
    WeightReport {
        weights_doubled: weights,
        sum_doubled: sum,
        edge_count,
        equality,
        multi_touch_pairs: multi,
        violations,
    }
}

/// Paths touching `vertex` at more than one lattice point.
pub fn multi_touch_partners(rep: &CpgRepresentation, vertex: &str) -> BTreeSet<String> {
    ContactIndex::new(rep)
        .touch_counts()
        .into_iter()
        .filter(|(_, c)| *c >= 2)
        .filter_map(|((a, b), _)| {
            if a == vertex {
                Some(b)
            } else if b == vertex {
                Some(a)
            } else {
                None
            }
        })
        .collect()
}
