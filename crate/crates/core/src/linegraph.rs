//! Line graphs and the correspondence between rectilinear drawings and
//! 0-bend contact representations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::contact::ContactIndex;
use crate::embedding::{check_polylines, EmbeddedEdge, Point2};
use crate::error::{CpgError, Result};
use crate::graph::SimpleGraph;
use crate::grid::{CpgRepresentation, GridPath, GridPoint};

/// Label of the line-graph vertex for edge `uv`: the endpoints in sorted order.
pub fn edge_label(u: &str, v: &str) -> String {
    if u <= v {
        format!("{u}-{v}")
    } else {
        format!("{v}-{u}")
    }
}

pub fn line_graph(g: &SimpleGraph) -> SimpleGraph {
    let mut incident: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let mut lg = SimpleGraph::new();
    for (u, v) in g.edges() {
        let e = edge_label(u, v);
        lg.add_vertex(e.clone());
        incident.entry(u).or_default().push(e.clone());
        incident.entry(v).or_default().push(e);
    }
    for list in incident.values() {
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                lg.add_edge(a, b).expect("labels were added");
            }
        }
    }
    lg
}

/// True iff no vertex has three pairwise nonadjacent neighbours.
pub fn is_claw_free(g: &SimpleGraph) -> bool {
    let ig = g.indexed();
    (0..ig.len()).all(|v| {
        let n = &ig.adj[v];
        (0..n.len()).all(|i| {
            (i + 1..n.len()).all(|j| {
                ig.adjacent(n[i], n[j])
                    || (j + 1..n.len()).all(|k| ig.adjacent(n[i], n[k]) || ig.adjacent(n[j], n[k]))
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawnEdge {
    pub u: String,
    pub v: String,
    pub polyline: Vec<Point2>,
    /// Name of the edge; defaults to [`edge_label`] of its endpoints.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl DrawnEdge {
    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| edge_label(&self.u, &self.v))
    }
}

/// A planar drawing with every edge a single horizontal or vertical segment.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectilinearDrawing {
    pub vertices: BTreeMap<String, Point2>,
    pub edges: Vec<DrawnEdge>,
}

impl RectilinearDrawing {
    pub fn validate(&self) -> Result<()> {
        let edges: Vec<EmbeddedEdge> = self
            .edges
            .iter()
            .map(|e| EmbeddedEdge { u: e.u.clone(), v: e.v.clone(), polyline: e.polyline.clone() })
            .collect();
        if let Some(e) = self.edges.iter().find(|e| e.polyline.len() != 2) {
            return Err(CpgError::InvalidDrawing(format!("edge {} is not a single segment", e.name())));
        }
        let names: BTreeSet<String> = self.edges.iter().map(DrawnEdge::name).collect();
        if names.len() != self.edges.len() {
            return Err(CpgError::InvalidDrawing("edge labels are not distinct".into()));
        }
        check_polylines(&self.vertices, &edges, 0, CpgError::InvalidDrawing)
    }

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

    /// Line graph of the drawn graph with vertices named by the edge labels.
    pub fn labeled_line_graph(&self) -> SimpleGraph {
        let mut lg = SimpleGraph::new();
        let mut incident: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        for e in &self.edges {
            lg.add_vertex(e.name());
            incident.entry(&e.u).or_default().push(e.name());
            incident.entry(&e.v).or_default().push(e.name());
        }
        for list in incident.values() {
            for (i, a) in list.iter().enumerate() {
                for b in &list[i + 1..] {
                    lg.add_edge(a, b).expect("labels were added");
                }
            }
        }
        lg
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("drawing serializes")
    }
}

/// One 0-bend path per drawn segment, labelled by the edge name.
pub fn rep_from_rectilinear(d: &RectilinearDrawing) -> Result<CpgRepresentation> {
    d.validate()?;
    let min_x = d.vertices.values().map(|p| p.0).min().unwrap_or(0);
    let min_y = d.vertices.values().map(|p| p.1).min().unwrap_or(0);
    let at = |(x, y): Point2| GridPoint::new((y - min_y) as u32, (x - min_x) as u32);
    let paths = d
        .edges
        .iter()
        .map(|e| GridPath::new(e.name(), vec![at(d.vertices[&e.u]), at(d.vertices[&e.v])]))
        .collect();
    CpgRepresentation::fitted(paths)
}

fn point_name(p: GridPoint) -> String {
    format!("r{}c{}", p.row, p.col)
}

/// Shrinks every path of a 0-bend representation to the span of its contact
/// points and reads the result as a rectilinear drawing whose edges carry the
/// path labels.
pub fn rectilinear_from_rep(rep: &CpgRepresentation) -> Result<RectilinearDrawing> {
    if rep.max_bends() > 0 {
        return Err(CpgError::TooManyBends { bends: rep.max_bends(), allowed: 0 });
    }
    let report = rep.validate();
    if !report.ok {
        return Err(CpgError::InvalidRepresentation(format!("{} violations", report.violations.len())));
    }
    let index = ContactIndex::new(rep);
    let shared: BTreeSet<GridPoint> = index
        .occupied_points()
        .filter(|&p| {
            let c = index.classify(p);
            c.ends.len() + usize::from(c.through.is_some()) >= 2
        })
        .collect();
    let mut d = RectilinearDrawing::default();
    for path in &rep.paths {
        let points = path.expand()?;
        let contacts: Vec<usize> = (0..points.len()).filter(|&i| shared.contains(&points[i])).collect();
        let (i, j) = match contacts.as_slice() {
            [] => (0, 1),
            [i] if *i + 1 < points.len() => (*i, i + 1),
            [i] => (*i, i - 1),
            [i, j] => (*i, *j),
            _ => {
                return Err(CpgError::Precondition(format!(
                    "path `{}` has {} contact points, more than a claw-free contact graph allows",
                    path.vertex,
                    contacts.len()
                )))
            }
        };
        let (p, q) = (points[i], points[j]);
        for r in [p, q] {
            d.vertices.insert(point_name(r), (r.col as i64, r.row as i64));
        }
        d.edges.push(DrawnEdge {
            u: point_name(p),
            v: point_name(q),
            polyline: vec![(p.col as i64, p.row as i64), (q.col as i64, q.row as i64)],
            label: Some(path.vertex.clone()),
        });
    }
    d.validate()?;
    Ok(d)
}
