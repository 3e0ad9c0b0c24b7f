//! Lattice geometry: grid points, rectilinear paths and representations.
//!
//! A representation stores each path as its corner list. The first and last
//! corners are the endpoints, every intermediate corner is a 90 degree bend.
//! Expansion to the full lattice-point sequence happens on demand.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CpgError, Result};

/// A lattice point, serialized as `[row, col]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct GridPoint {
    pub row: u32,
    pub col: u32,
}

impl GridPoint {
    pub const fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }
}

impl From<[u32; 2]> for GridPoint {
    fn from([row, col]: [u32; 2]) -> Self {
        Self { row, col }
    }
}

impl From<GridPoint> for [u32; 2] {
    fn from(p: GridPoint) -> Self {
        [p.row, p.col]
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Constant row, varying column.
    Horizontal,
    /// Constant column, varying row.
    Vertical,
}

/// Axis of the segment `a -> b`, or `None` unless they differ in exactly one coordinate.
pub fn segment_axis(a: GridPoint, b: GridPoint) -> Option<Axis> {
    match (a.row == b.row, a.col == b.col) {
        (true, false) => Some(Axis::Horizontal),
        (false, true) => Some(Axis::Vertical),
        _ => None,
    }
}

/// A unit grid edge with its endpoints in canonical order.
pub(crate) fn unit_edge(a: GridPoint, b: GridPoint) -> (GridPoint, GridPoint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPath {
    pub vertex: String,
    pub corners: Vec<GridPoint>,
}

impl GridPath {
    pub fn new(vertex: impl Into<String>, corners: Vec<GridPoint>) -> Self {
        Self {
            vertex: vertex.into(),
            corners,
        }
    }

    pub fn endpoints(&self) -> (GridPoint, GridPoint) {
        (self.corners[0], self.corners[self.corners.len() - 1])
    }

    /// Checks the corner-list invariants: at least one grid edge, axis-aligned
    /// segments, and a genuine direction change at every intermediate corner.
    pub fn check_corners(&self) -> Result<()> {
        let degenerate = |reason: String| CpgError::DegeneratePath {
            vertex: self.vertex.clone(),
            reason,
        };
        if self.corners.len() < 2 {
            return Err(degenerate("fewer than two corners".into()));
        }
        let mut prev_axis = None;
        for w in self.corners.windows(2) {
            let axis = segment_axis(w[0], w[1]).ok_or_else(|| {
                degenerate(format!("segment {}-{} is not a nonzero axis-aligned move", w[0], w[1]))
            })?;
            if prev_axis == Some(axis) {
                return Err(degenerate(format!("corner {} is not a bend", w[0])));
            }
            prev_axis = Some(axis);
        }
        Ok(())
    }

    /// Every lattice point on the path in traversal order.
    pub fn expand(&self) -> Result<Vec<GridPoint>> {
        self.check_corners()?;
        let mut out = vec![self.corners[0]];
        for w in self.corners.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (dr, dc) = (step(a.row, b.row), step(a.col, b.col));
            let mut p = a;
            while p != b {
                p = GridPoint::new((p.row as i64 + dr) as u32, (p.col as i64 + dc) as u32);
                out.push(p);
            }
        }
        Ok(out)
    }

    pub fn bend_count(&self) -> usize {
        self.corners.len().saturating_sub(2)
    }

    /// Number of unit grid edges.
    pub fn length(&self) -> u64 {
        self.corners
            .windows(2)
            .map(|w| w[0].row.abs_diff(w[1].row) as u64 + w[0].col.abs_diff(w[1].col) as u64)
            .sum()
    }

    /// The corners of this path form a bend at `p` (an intermediate corner).
    pub fn bends_at(&self, p: GridPoint) -> bool {
        let n = self.corners.len();
        n > 2 && self.corners[1..n - 1].contains(&p)
    }
}

fn step(from: u32, to: u32) -> i64 {
    (to as i64 - from as i64).signum()
}

/// A family of paths on a `rows x cols` grid, keyed by vertex label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRepresentation")]
pub struct CpgRepresentation {
    pub rows: u32,
    pub cols: u32,
    pub paths: Vec<GridPath>,
}

#[derive(Deserialize)]
struct RawRepresentation {
    rows: u32,
    cols: u32,
    paths: Vec<GridPath>,
}

impl TryFrom<RawRepresentation> for CpgRepresentation {
    type Error = CpgError;

    fn try_from(raw: RawRepresentation) -> Result<Self> {
        CpgRepresentation::new(raw.rows, raw.cols, raw.paths)
    }
}

impl CpgRepresentation {
    pub fn new(rows: u32, cols: u32, paths: Vec<GridPath>) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &paths {
            if !seen.insert(p.vertex.as_str()) {
                return Err(CpgError::DuplicateVertex(p.vertex.clone()));
            }
        }
        Ok(Self { rows, cols, paths })
    }

    /// Builds a representation on the smallest grid containing all corners.
    pub fn fitted(paths: Vec<GridPath>) -> Result<Self> {
        let rows = paths.iter().flat_map(|p| p.corners.iter()).map(|c| c.row + 1).max().unwrap_or(0);
        let cols = paths.iter().flat_map(|p| p.corners.iter()).map(|c| c.col + 1).max().unwrap_or(0);
        Self::new(rows, cols, paths)
    }

    pub fn path(&self, vertex: &str) -> Option<&GridPath> {
        self.paths.iter().find(|p| p.vertex == vertex)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.paths.iter().map(|p| p.vertex.as_str())
    }

    pub fn max_bends(&self) -> usize {
        self.paths.iter().map(GridPath::bend_count).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation serializes")
    }

    /// Structural validation; violations are returned as data.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut point_use: HashMap<GridPoint, Vec<(usize, bool)>> = HashMap::new();
        let mut edge_use: HashMap<(GridPoint, GridPoint), Vec<usize>> = HashMap::new();

        for (idx, path) in self.paths.iter().enumerate() {
            let points = match path.expand() {
                Ok(points) => points,
                Err(e) => {
                    violations.push(Violation {
                        kind: ViolationKind::DegeneratePath,
                        location: Location::Path,
                        vertices: vec![path.vertex.clone()],
                        detail: e.to_string(),
                    });
                    continue;
                }
            };
            if let Some(c) = path.corners.iter().find(|c| c.row >= self.rows || c.col >= self.cols) {
                violations.push(Violation {
                    kind: ViolationKind::OutOfBounds,
                    location: Location::Point { point: *c },
                    vertices: vec![path.vertex.clone()],
                    detail: format!("grid is {}x{}", self.rows, self.cols),
                });
            }
            let mut own = HashSet::new();
            let mut simple = true;
            for p in &points {
                if !own.insert(*p) {
                    violations.push(Violation {
                        kind: ViolationKind::SelfIntersection,
                        location: Location::Point { point: *p },
                        vertices: vec![path.vertex.clone()],
                        detail: "path revisits a lattice point".into(),
                    });
                    simple = false;
                    break;
                }
            }
            if !simple {
                continue;
            }
            let last = points.len() - 1;
            for (i, p) in points.iter().enumerate() {
                point_use.entry(*p).or_default().push((idx, i == 0 || i == last));
            }
            for w in points.windows(2) {
                edge_use.entry(unit_edge(w[0], w[1])).or_default().push(idx);
            }
        }

        for (&(a, b), users) in &edge_use {
            if users.len() > 1 {
                violations.push(Violation {
                    kind: ViolationKind::EdgeOverlap,
                    location: Location::Edge { from: a, to: b },
                    vertices: self.sorted_labels(users.iter().copied()),
                    detail: "unit grid edge used by several paths".into(),
                });
            }
        }
        for (&p, users) in &point_use {
            let through: Vec<usize> = users.iter().filter(|(_, end)| !end).map(|(i, _)| *i).collect();
            if through.len() > 1 {
                violations.push(Violation {
                    kind: ViolationKind::InteriorCrossing,
                    location: Location::Point { point: p },
                    vertices: self.sorted_labels(through.into_iter()),
                    detail: "point interior to several paths".into(),
                });
            }
        }
        violations.sort();
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    fn sorted_labels(&self, idx: impl Iterator<Item = usize>) -> Vec<String> {
        let set: BTreeSet<String> = idx.map(|i| self.paths[i].vertex.clone()).collect();
        set.into_iter().collect()
    }

    /// Drops every row and column that holds no path corner and renumbers the
    /// rest in order. Vertical (horizontal) runs through a dropped row (column)
    /// only shrink, so the set of shared lattice points and their endpoint
    /// status is preserved exactly.
    pub fn compact(&self) -> CpgRepresentation {
        let rows: BTreeSet<u32> = self.paths.iter().flat_map(|p| p.corners.iter().map(|c| c.row)).collect();
        let cols: BTreeSet<u32> = self.paths.iter().flat_map(|p| p.corners.iter().map(|c| c.col)).collect();
        let row_rank: BTreeMap<u32, u32> = rows.iter().enumerate().map(|(i, r)| (*r, i as u32)).collect();
        let col_rank: BTreeMap<u32, u32> = cols.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect();
        let paths = self
            .paths
            .iter()
            .map(|p| GridPath {
                vertex: p.vertex.clone(),
                corners: p.corners.iter().map(|c| GridPoint::new(row_rank[&c.row], col_rank[&c.col])).collect(),
            })
            .collect();
        CpgRepresentation {
            rows: rows.len() as u32,
            cols: cols.len() as u32,
            paths,
        }
    }

    /// Moves every corner by `(dr, dc)`, growing the grid to fit.
    pub fn translated(&self, dr: u32, dc: u32) -> CpgRepresentation {
        CpgRepresentation {
            rows: self.rows + dr,
            cols: self.cols + dc,
            paths: self
                .paths
                .iter()
                .map(|p| GridPath {
                    vertex: p.vertex.clone(),
                    corners: p.corners.iter().map(|c| GridPoint::new(c.row + dr, c.col + dc)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    EdgeOverlap,
    InteriorCrossing,
    SelfIntersection,
    OutOfBounds,
    DegeneratePath,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "kebab-case")]
pub enum Location {
    Point { point: GridPoint },
    Edge { from: GridPoint, to: GridPoint },
    Path,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Location,
    pub vertices: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(r: u32, c: u32) -> GridPoint {
        GridPoint::new(r, c)
    }

    fn path(v: &str, corners: &[(u32, u32)]) -> GridPath {
        GridPath::new(v, corners.iter().map(|&(r, c)| gp(r, c)).collect())
    }

    fn cross() -> CpgRepresentation {
        CpgRepresentation::new(
            3,
            3,
            vec![
                path("W", &[(1, 0), (1, 1)]),
                path("E", &[(1, 2), (1, 1)]),
                path("S", &[(0, 1), (1, 1)]),
                path("N", &[(2, 1), (1, 1)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn expand_straight_segment() {
        let p = path("u", &[(0, 0), (0, 3)]);
        assert_eq!(p.expand().unwrap(), vec![gp(0, 0), gp(0, 1), gp(0, 2), gp(0, 3)]);
        assert_eq!(p.bend_count(), 0);
    }

    #[test]
    fn expand_one_bend() {
        let p = path("u", &[(1, 1), (1, 2), (3, 2)]);
        let pts = p.expand().unwrap();
        assert_eq!(pts, vec![gp(1, 1), gp(1, 2), gp(2, 2), gp(3, 2)]);
        assert_eq!(p.bend_count(), 1);
        assert!(p.bends_at(gp(1, 2)));
    }

    #[test]
    fn zero_length_is_degenerate() {
        let p = path("u", &[(0, 0), (0, 0)]);
        assert!(matches!(p.expand(), Err(CpgError::DegeneratePath { .. })));
        let single = path("u", &[(0, 0)]);
        assert!(single.expand().is_err());
    }

    #[test]
    fn collinear_corner_and_diagonal_are_degenerate() {
        assert!(path("u", &[(0, 0), (0, 1), (0, 3)]).expand().is_err());
        assert!(path("u", &[(0, 0), (1, 1)]).expand().is_err());
    }

    #[test]
    fn cross_validates() {
        let r = cross().validate();
        assert!(r.ok, "{:?}", r.violations);
        assert_eq!(cross().max_bends(), 0);
    }

    #[test]
    fn shared_edge_is_reported() {
        let rep = CpgRepresentation::new(1, 3, vec![path("a", &[(0, 0), (0, 1)]), path("b", &[(0, 0), (0, 2)])]).unwrap();
        let r = rep.validate();
        assert!(!r.ok);
        assert!(r.has(ViolationKind::EdgeOverlap));
        let v = r.violations.iter().find(|v| v.kind == ViolationKind::EdgeOverlap).unwrap();
        assert_eq!(v.location, Location::Edge { from: gp(0, 0), to: gp(0, 1) });
        assert_eq!(v.vertices, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn interior_crossing_is_reported() {
        let rep = CpgRepresentation::new(3, 3, vec![path("h", &[(1, 0), (1, 2)]), path("v", &[(0, 1), (2, 1)])]).unwrap();
        let r = rep.validate();
        assert!(r.has(ViolationKind::InteriorCrossing));
        assert!(!r.has(ViolationKind::EdgeOverlap));
    }

    #[test]
    fn bends_touching_at_a_point_is_a_crossing() {
        // two bent paths whose bend points coincide
        let rep = CpgRepresentation::new(
            3,
            3,
            vec![path("a", &[(1, 0), (1, 1), (2, 1)]), path("b", &[(1, 2), (1, 1), (0, 1)])],
        )
        .unwrap();
        assert!(rep.validate().has(ViolationKind::InteriorCrossing));
    }

    #[test]
    fn self_intersection_and_bounds() {
        let loop_path = path("u", &[(0, 0), (0, 2), (2, 2), (2, 1), (0, 1)]);
        let rep = CpgRepresentation::new(3, 3, vec![loop_path]).unwrap();
        assert!(rep.validate().has(ViolationKind::SelfIntersection));

        let rep = CpgRepresentation::new(2, 2, vec![path("u", &[(0, 0), (0, 5)])]).unwrap();
        assert!(rep.validate().has(ViolationKind::OutOfBounds));

        let rep = CpgRepresentation::new(2, 2, vec![path("u", &[(0, 0), (0, 0)])]).unwrap();
        assert!(rep.validate().has(ViolationKind::DegeneratePath));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let e = CpgRepresentation::new(2, 2, vec![path("u", &[(0, 0), (0, 1)]), path("u", &[(1, 0), (1, 1)])]);
        assert_eq!(e, Err(CpgError::DuplicateVertex("u".into())));
    }

    #[test]
    fn compact_removes_unused_lines_and_translates() {
        let far = cross().translated(50, 50);
        let far = CpgRepresentation { rows: 100, cols: 100, ..far };
        let c = far.compact();
        assert_eq!(c, cross());

        let rep = CpgRepresentation::new(100, 100, vec![path("a", &[(0, 0), (0, 40)]), path("b", &[(2, 40), (0, 40)])]).unwrap();
        let c = rep.compact();
        assert_eq!((c.rows, c.cols), (2, 2));
        assert_eq!(c.compact(), c);
    }

    #[test]
    fn json_shape_round_trips() {
        let json = r#"{"rows":3,"cols":3,"paths":[{"vertex":"a","corners":[[0,0],[0,2],[2,2]]}]}"#;
        let rep: CpgRepresentation = serde_json::from_str(json).unwrap();
        assert_eq!(rep.paths[0].corners[1], gp(0, 2));
        assert_eq!(serde_json::to_string(&rep).unwrap(), json);

        let dup = r#"{"rows":1,"cols":2,"paths":[{"vertex":"a","corners":[[0,0],[0,1]]},{"vertex":"a","corners":[[0,0],[0,1]]}]}"#;
        assert!(serde_json::from_str::<CpgRepresentation>(dup).is_err());
    }
}
