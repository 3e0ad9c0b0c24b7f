//! Named fixture constructions, each with its expected
//! extraction and certificate outcomes, plus the 6-regular family generator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embedding::{EmbeddedEdge, OrthogonalEmbedding, Point2};
use crate::error::{CpgError, Result};
use crate::graph::SimpleGraph;
use crate::grid::{CpgRepresentation, GridPath, GridPoint};
use crate::linegraph::edge_label;
use crate::reduction::{gadget_h, gadget_h_prime, gadget_h_rep};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    /// Contact graph of the representation (or of the derived family).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extraction: Option<SimpleGraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_bends: Option<usize>,
    pub k7_free: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg3_bound_passes: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k33_minor: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three_colorable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<SimpleGraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<CpgRepresentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<OrthogonalEmbedding>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("entry serializes")
    }

    /// The graph the entry is about: the explicit graph, else the embedded
    /// graph, else the expected extraction.
    pub fn subject_graph(&self) -> Option<SimpleGraph> {
        self.graph
            .clone()
            .or_else(|| self.embedding.as_ref().and_then(|e| e.graph().ok()))
            .or_else(|| self.expected.extraction.clone())
    }
}

/// Builds a representation from Cartesian coordinates `(x, y)`, mapping them to
/// row `y` and column `x`.
fn rep_xy(paths: &[(&str, &[(u32, u32)])]) -> CpgRepresentation {
    CpgRepresentation::fitted(
        paths
            .iter()
            .map(|(v, pts)| GridPath::new(*v, pts.iter().map(|&(x, y)| GridPoint::new(y, x)).collect()))
            .collect(),
    )
    .expect("distinct labels")
}

fn graph(edges: &[(&str, &str)]) -> SimpleGraph {
    SimpleGraph::from_edges::<&str>(&[], edges).expect("static edge list")
}

fn embedding(vertices: &[(&str, Point2)], edges: &[(&str, &str, &[Point2])]) -> OrthogonalEmbedding {
    OrthogonalEmbedding {
        vertices: vertices.iter().map(|(v, p)| (v.to_string(), *p)).collect(),
        edges: edges
            .iter()
            .map(|(u, v, pl)| EmbeddedEdge { u: u.to_string(), v: v.to_string(), polyline: pl.to_vec() })
            .collect(),
    }
}

pub fn k4_cross() -> CpgRepresentation {
    rep_xy(&[("W", &[(0, 1), (1, 1)]), ("E", &[(2, 1), (1, 1)]), ("S", &[(1, 0), (1, 1)]), ("N", &[(1, 2), (1, 1)])])
}

pub fn fig3_rep() -> CpgRepresentation {
    rep_xy(&[
        ("1", &[(0, 1), (2, 1)]),
        ("2", &[(0, 2), (2, 2)]),
        ("3", &[(0, 0), (2, 0)]),
        ("4", &[(2, 0), (2, 2)]),
        ("5", &[(0, 0), (0, 2)]),
        ("6", &[(1, 1), (1, 2)]),
        ("7", &[(1, 0), (1, 1)]),
    ])
}

pub fn fig3_graph() -> SimpleGraph {
    graph(&[
        ("1", "4"),
        ("1", "5"),
        ("1", "6"),
        ("1", "7"),
        ("2", "4"),
        ("2", "5"),
        ("2", "6"),
        ("3", "4"),
        ("3", "5"),
        ("3", "7"),
        ("6", "7"),
    ])
}

pub fn fig5_graph() -> SimpleGraph {
    graph(&[
        ("1", "2"),
        ("1", "3"),
        ("1", "4"),
        ("1", "5"),
        ("1", "6"),
        ("2", "3"),
        ("2", "4"),
        ("2", "5"),
        ("2", "7"),
        ("3", "4"),
        ("3", "6"),
        ("3", "7"),
        ("4", "5"),
        ("4", "6"),
        ("4", "7"),
    ])
}

pub fn fig5_rep() -> CpgRepresentation {
    rep_xy(&[
        ("1", &[(3, 1), (3, 0), (5, 0), (5, 1)]),
        ("2", &[(3, 1), (3, 2), (4, 2)]),
        ("3", &[(4, 2), (5, 2), (5, 1)]),
        ("4", &[(3, 1), (4, 1), (4, 2)]),
        ("5", &[(3, 1), (2, 1)]),
        ("6", &[(4, 1), (5, 1)]),
        ("7", &[(4, 2), (4, 3)]),
    ])
}

pub fn fig6a_graph() -> SimpleGraph {
    graph(&[
        ("a", "b"),
        ("a", "c"),
        ("a", "d"),
        ("a", "j"),
        ("a", "k"),
        ("a", "l"),
        ("a", "1"),
        ("a", "2"),
        ("a", "3"),
        ("a", "4"),
        ("a", "5"),
        ("a", "6"),
        ("b", "e"),
        ("b", "j"),
        ("b", "k"),
        ("b", "5"),
        ("b", "6"),
        ("b", "9"),
        ("b", "10"),
        ("c", "f"),
        ("c", "k"),
        ("c", "l"),
        ("c", "3"),
        ("c", "4"),
        ("c", "7"),
        ("c", "8"),
        ("d", "g"),
        ("d", "j"),
        ("d", "l"),
        ("d", "1"),
        ("d", "2"),
        ("e", "h"),
        ("e", "j"),
        ("e", "k"),
        ("e", "9"),
        ("e", "10"),
        ("f", "i"),
        ("f", "k"),
        ("f", "l"),
        ("f", "7"),
        ("f", "8"),
        ("g", "j"),
        ("g", "l"),
        ("h", "j"),
        ("h", "k"),
        ("i", "k"),
        ("i", "l"),
        ("j", "k"),
        ("j", "l"),
        ("j", "1"),
        ("j", "6"),
        ("j", "10"),
        ("k", "l"),
        ("k", "4"),
        ("k", "5"),
        ("k", "8"),
        ("k", "9"),
        ("l", "2"),
        ("l", "3"),
        ("l", "7"),
    ])
}

pub fn fig7_rep() -> CpgRepresentation {
    rep_xy(&[
        ("1", &[(1, 1), (0, 1), (0, 4), (3, 4)]),
        ("2", &[(1, 1), (2, 1), (2, 3), (3, 3)]),
        ("3", &[(1, 4), (1, 2), (2, 2)]),
        ("4", &[(1, 4), (1, 5), (3, 5), (3, 2)]),
        ("5", &[(1, 2), (1, 0), (3, 0), (3, 2)]),
        ("6", &[(2, 2), (4, 2), (4, 4), (3, 4)]),
    ])
}

pub fn gadget_h_prime_rep() -> CpgRepresentation {
    let full = gadget_h_rep();
    let keep: Vec<GridPath> = full.paths.into_iter().filter(|p| !matches!(p.vertex.as_str(), "a" | "1" | "2" | "3")).collect();
    CpgRepresentation::new(full.rows, full.cols, keep).expect("distinct labels")
}

pub fn orth_k4() -> OrthogonalEmbedding {
    embedding(
        &[("a", (0, 0)), ("b", (4, 0)), ("c", (2, 2)), ("d", (2, 5))],
        &[
            ("a", "b", &[(0, 0), (4, 0)]),
            ("a", "c", &[(0, 0), (0, 2), (2, 2)]),
            ("b", "c", &[(4, 0), (4, 2), (2, 2)]),
            ("c", "d", &[(2, 2), (2, 5)]),
            ("a", "d", &[(0, 0), (-1, 0), (-1, 5), (2, 5)]),
            ("b", "d", &[(4, 0), (5, 0), (5, 5), (2, 5)]),
        ],
    )
}

pub fn orth_c5() -> OrthogonalEmbedding {
    embedding(
        &[("v0", (0, 0)), ("v1", (4, 0)), ("v2", (4, 3)), ("v3", (2, 5)), ("v4", (0, 3))],
        &[
            ("v0", "v1", &[(0, 0), (4, 0)]),
            ("v1", "v2", &[(4, 0), (4, 3)]),
            ("v2", "v3", &[(4, 3), (3, 3), (3, 5), (2, 5)]),
            ("v3", "v4", &[(2, 5), (0, 5), (0, 3)]),
            ("v4", "v0", &[(0, 3), (0, 0)]),
        ],
    )
}

/// The local example around a vertex `u` whose edges exercise every case of
/// the reduction: a bent edge arriving from the west, a straight horizontal
/// edge, a straight vertical edge and a 4-bend edge leaving upward.
pub fn orth_fullexample() -> OrthogonalEmbedding {
    embedding(
        &[("v", (0, 0)), ("u", (12, 5)), ("x", (20, 5)), ("w", (21, 17)), ("y", (12, -2))],
        &[
            ("v", "u", &[(0, 0), (6, 0), (6, 5), (12, 5)]),
            ("u", "x", &[(12, 5), (20, 5)]),
            ("y", "u", &[(12, -2), (12, 5)]),
            ("u", "w", &[(12, 5), (12, 10), (17, 10), (17, 14), (21, 14), (21, 17)]),
        ],
    )
}

/// The octahedron: apexes `T`, `B` over the square `1 2 3 4`.
pub fn octahedron() -> SimpleGraph {
    graph(&[
        ("1", "2"),
        ("2", "3"),
        ("3", "4"),
        ("1", "4"),
        ("T", "1"),
        ("T", "2"),
        ("T", "3"),
        ("T", "4"),
        ("B", "1"),
        ("B", "2"),
        ("B", "3"),
        ("B", "4"),
    ])
}

pub fn orth_octahedron() -> OrthogonalEmbedding {
    embedding(
        &[("T", (5, 5)), ("B", (5, -4)), ("1", (2, 0)), ("2", (8, 0)), ("3", (8, 10)), ("4", (2, 10))],
        &[
            ("1", "2", &[(2, 0), (8, 0)]),
            ("2", "3", &[(8, 0), (10, 0), (10, 10), (8, 10)]),
            ("3", "4", &[(8, 10), (2, 10)]),
            ("4", "1", &[(2, 10), (0, 10), (0, 0), (2, 0)]),
            ("T", "1", &[(5, 5), (5, 2), (2, 2), (2, 0)]),
            ("T", "2", &[(5, 5), (8, 5), (8, 0)]),
            ("T", "3", &[(5, 5), (5, 8), (8, 8), (8, 10)]),
            ("T", "4", &[(5, 5), (2, 5), (2, 10)]),
            ("B", "1", &[(5, -4), (5, -2), (2, -2), (2, 0)]),
            ("B", "2", &[(5, -4), (8, -4), (8, 0)]),
            ("B", "3", &[(5, -4), (5, -6), (12, -6), (12, 12), (8, 12), (8, 10)]),
            ("B", "4", &[(5, -4), (-2, -4), (-2, 12), (2, 12), (2, 10)]),
        ],
    )
}

/// Contact representation of L(G) for a 4-regular G: every edge polyline
/// becomes a path, so each vertex point is an endpoint of four paths.
pub fn six_regular_family(emb: &OrthogonalEmbedding) -> Result<CpgRepresentation> {
    emb.validate()?;
    let g = emb.graph()?;
    if !g.is_regular(4) {
        return Err(CpgError::InvalidGraph("the embedded graph is not 4-regular".into()));
    }
    let min_x = emb.edges.iter().flat_map(|e| e.polyline.iter().map(|p| p.0)).min().unwrap_or(0);
    let min_y = emb.edges.iter().flat_map(|e| e.polyline.iter().map(|p| p.1)).min().unwrap_or(0);
    let paths = emb
        .edges
        .iter()
        .map(|e| {
            let corners = e.polyline.iter().map(|&(x, y)| GridPoint::new((y - min_y) as u32, (x - min_x) as u32)).collect();
            GridPath::new(edge_label(&e.u, &e.v), corners)
        })
        .collect();
    CpgRepresentation::fitted(paths)
}

fn entry(name: &str, description: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        graph: None,
        rep: None,
        embedding: None,
        expected: Expected { k7_free: true, ..Expected::default() },
    }
}

pub fn fixtures() -> Vec<CatalogEntry> {
    let k4_labels = |labels: [&str; 4]| {
        let map = (1..=4).map(|i| (i.to_string(), labels[i - 1].to_string())).collect();
        SimpleGraph::complete(4).relabeled(&map).expect("injective")
    };
    let mut out = Vec::new();

    let mut e = entry("fig2_k4_cross", "Four unit segments ending at one type I point: K4 with no bends.");
    e.rep = Some(k4_cross());
    e.expected.extraction = Some(k4_labels(["W", "E", "S", "N"]));
    e.expected.max_bends = Some(0);
    e.expected.k33_minor = Some(false);
    e.expected.three_colorable = Some(false);
    out.push(e);

    let mut e = entry("fig3_nonplanar_b0", "A 0-bend representation of a graph with a K3,3 minor.");
    e.rep = Some(fig3_rep());
    e.expected.extraction = Some(fig3_graph());
    e.expected.max_bends = Some(0);
    e.expected.k33_minor = Some(true);
    e.expected.three_colorable = Some(true);
    out.push(e);

    let mut e = entry("fig5_maxplanar", "A maximally planar graph on 7 vertices with a 2-bend representation.");
    e.graph = Some(fig5_graph());
    e.rep = Some(fig5_rep());
    e.expected.extraction = Some(fig5_graph());
    e.expected.max_bends = Some(2);
    e.expected.deg3_bound_passes = Some(true);
    e.expected.three_colorable = Some(false);
    out.push(e);

    let mut e = entry("fig6a_not_cpg", "A maximally planar graph with 13 vertices of degree 3, hence not a contact graph.");
    e.graph = Some(fig6a_graph());
    e.expected.deg3_bound_passes = Some(false);
    out.push(e);

    let mut e = entry("fig7_k6_b2", "A 2-bend representation of K6.");
    e.rep = Some(fig7_rep());
    e.expected.extraction = Some(SimpleGraph::complete(6));
    e.expected.max_bends = Some(2);
    e.expected.three_colorable = Some(false);
    out.push(e);

    let mut e = entry("gadget_h", "Gadget H on roles a, b, c, 1..10 with its 0-bend representation.");
    e.graph = Some(gadget_h());
    e.rep = Some(gadget_h_rep());
    e.expected.extraction = Some(gadget_h());
    e.expected.max_bends = Some(0);
    e.expected.three_colorable = Some(true);
    out.push(e);

    let mut e = entry("gadget_h_prime", "Gadget H', induced by b, c, 4..10 in H.");
    e.graph = Some(gadget_h_prime());
    e.rep = Some(gadget_h_prime_rep());
    e.expected.extraction = Some(gadget_h_prime());
    e.expected.max_bends = Some(0);
    e.expected.three_colorable = Some(true);
    out.push(e);

    let mut e = entry("orth_k4", "Orthogonal embedding of K4 with at most 2 bends per edge.");
    e.embedding = Some(orth_k4());
    e.expected.three_colorable = Some(false);
    out.push(e);

    let mut e = entry("orth_c5", "Orthogonal embedding of the 5-cycle.");
    e.embedding = Some(orth_c5());
    e.expected.three_colorable = Some(true);
    out.push(e);

    let mut e = entry("orth_fullexample", "Local embedding around a vertex u used to illustrate the reduction.");
    e.embedding = Some(orth_fullexample());
    e.expected.three_colorable = Some(true);
    out.push(e);

    let mut e = entry("octahedron", "The octahedron with an orthogonal embedding; its edge paths represent the 6-regular L(octahedron).");
    e.graph = Some(octahedron());
    e.embedding = Some(orth_octahedron());
    e.expected.extraction = Some(crate::linegraph::line_graph(&octahedron()));
    e.expected.three_colorable = Some(true);
    out.push(e);

    out
}

pub fn fixture(name: &str) -> Option<CatalogEntry> {
    fixtures().into_iter().find(|e| e.name == name)
}

pub fn names() -> Vec<String> {
    fixtures().into_iter().map(|e| e.name).collect()
}

/// Catalog entries keyed by name.
pub fn by_name() -> BTreeMap<String, CatalogEntry> {
    fixtures().into_iter().map(|e| (e.name.clone(), e)).collect()
}
