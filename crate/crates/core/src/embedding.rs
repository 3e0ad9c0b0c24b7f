//! Orthogonal grid embeddings: vertices on lattice points, edges as
//! interiorly disjoint rectilinear polylines.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{CpgError, Result};
use crate::graph::SimpleGraph;

/// A point `(x, y)` of the drawing plane, `y` pointing up.
pub type Point2 = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    North,
    South,
    East,
    West,
}

impl Direction {
    /// Direction of the move `a -> b`, if it is a nonzero axis-aligned move.
    pub fn of(a: Point2, b: Point2) -> Option<Direction> {
        match (a.0 == b.0, a.1 == b.1) {
            (true, false) => Some(if b.1 > a.1 { Direction::North } else { Direction::South }),
            (false, true) => Some(if b.0 > a.0 { Direction::East } else { Direction::West }),
            _ => None,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction::North | Direction::South)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedEdge {
    pub u: String,
    pub v: String,
    pub polyline: Vec<Point2>,
}

impl EmbeddedEdge {
    pub fn bends(&self) -> usize {
        self.polyline.len().saturating_sub(2)
    }

    /// Lattice points in order from `u` to `v`.
    pub fn expand(&self) -> Vec<Point2> {
        let mut out = vec![self.polyline[0]];
        for w in self.polyline.windows(2) {
            let (dx, dy) = ((w[1].0 - w[0].0).signum(), (w[1].1 - w[0].1).signum());
            let mut p = w[0];
            while p != w[1] {
                p = (p.0 + dx, p.1 + dy);
                out.push(p);
            }
        }
        out
    }

    /// Direction in which the polyline leaves `u`.
    pub fn first_direction(&self) -> Direction {
        Direction::of(self.polyline[0], self.polyline[1]).expect("validated polyline")
    }

    /// Direction in which the polyline leaves `v` (walking backwards).
    pub fn last_direction(&self) -> Direction {
        let n = self.polyline.len();
        Direction::of(self.polyline[n - 1], self.polyline[n - 2]).expect("validated polyline")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogonalEmbedding {
    pub vertices: BTreeMap<String, Point2>,
    pub edges: Vec<EmbeddedEdge>,
}

impl OrthogonalEmbedding {
    pub fn graph(&self) -> Result<SimpleGraph> {
        let mut g = SimpleGraph::new();
        for v in self.vertices.keys() {
            g.add_vertex(v.clone());
        }
        for e in &self.edges {
            g.add_edge(&e.u, &e.v)?;
        }
        Ok(g)
    }

    /// Checks every embedding invariant, at most 4 bends per edge.
    pub fn validate(&self) -> Result<()> {
        check_polylines(&self.vertices, &self.edges, 4, CpgError::InvalidEmbedding)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding serializes")
    }
}

/// Shared validation for embeddings and rectilinear drawings.
pub(crate) fn check_polylines(
    vertices: &BTreeMap<String, Point2>,
    edges: &[EmbeddedEdge],
    max_bends: usize,
    err: fn(String) -> CpgError,
) -> Result<()> {
    let mut at: HashMap<Point2, &str> = HashMap::new();
    for (v, &p) in vertices {
        if let Some(other) = at.insert(p, v) {
            return Err(err(format!("vertices `{other}` and `{v}` share the point {p:?}")));
        }
    }
    let mut pairs = HashSet::new();
    let mut unit_edges: HashMap<(Point2, Point2), usize> = HashMap::new();
    let mut interior: HashMap<Point2, usize> = HashMap::new();
    let mut degree: HashMap<&str, usize> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        let name = format!("{}-{}", e.u, e.v);
        let (Some(&pu), Some(&pv)) = (vertices.get(&e.u), vertices.get(&e.v)) else {
            return Err(err(format!("edge {name} names an unknown vertex")));
        };
        if e.u == e.v {
            return Err(err(format!("self-loop at `{}`", e.u)));
        }
        let key = if e.u < e.v { (e.u.as_str(), e.v.as_str()) } else { (e.v.as_str(), e.u.as_str()) };
        if !pairs.insert(key) {
            return Err(err(format!("duplicate edge {name}")));
        }
        if e.polyline.len() < 2 || e.polyline[0] != pu || e.polyline[e.polyline.len() - 1] != pv {
            return Err(err(format!("polyline of {name} must run from {pu:?} to {pv:?}")));
        }
        let mut prev = None;
        for w in e.polyline.windows(2) {
            let d = Direction::of(w[0], w[1]).ok_or_else(|| err(format!("segment {:?}-{:?} of {name} is not axis-aligned", w[0], w[1])))?;
            if prev.is_some_and(|p: Direction| p.is_vertical() == d.is_vertical()) {
                return Err(err(format!("corner {:?} of {name} is not a bend", w[0])));
            }
            prev = Some(d);
        }
        if e.bends() > max_bends {
            return Err(err(format!("edge {name} has {} bends, at most {max_bends} allowed", e.bends())));
        }
        let points = e.expand();
        let mut own = HashSet::new();
        if !points.iter().all(|p| own.insert(*p)) {
            return Err(err(format!("polyline of {name} is not simple")));
        }
        for w in points.windows(2) {
            let key = if w[0] <= w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
            if let Some(j) = unit_edges.insert(key, i) {
                return Err(err(format!("edges {name} and {}-{} share a unit edge", edges[j].u, edges[j].v)));
            }
        }
        for p in &points[1..points.len() - 1] {
            if let Some(v) = at.get(p) {
                return Err(err(format!("edge {name} passes through vertex `{v}`")));
            }
            if let Some(j) = interior.insert(*p, i) {
                return Err(err(format!("edges {name} and {}-{} cross at {p:?}", edges[j].u, edges[j].v)));
            }
        }
        *degree.entry(e.u.as_str()).or_default() += 1;
        *degree.entry(e.v.as_str()).or_default() += 1;
    }
    if let Some((v, d)) = degree.iter().find(|(_, &d)| d > 4) {
        return Err(err(format!("vertex `{v}` has degree {d}")));
    }
    Ok(())
}
