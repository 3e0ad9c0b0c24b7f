//! Reduction from 3-colorability of planar graphs of maximum degree 4 to
//! 3-colorability of 0-bend contact graphs, with the forcing gadgets H and H′.
//!
//! Geometry after scaling by `S` (even, at least 8): every original lattice
//! unit becomes `S` grid units, and each edge polyline owns the band of
//! half-width `w = S/2 - 1` around it. Vertical paths for vertices and for
//! interior vertical segments live on the polyline columns; each gadget
//! occupies three consecutive rows on one side of a horizontal segment.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::certify::{Certificate, Claim, Witness};
use crate::coloring::{extend_precolored, verify_coloring, Coloring};
use crate::contact::contact_graph;
use crate::embedding::{Direction, OrthogonalEmbedding};
use crate::error::{CpgError, Result};
use crate::graph::SimpleGraph;
use crate::grid::{CpgRepresentation, GridPath, GridPoint};

const H_EDGES: [(&str, &str); 24] = [
    ("a", "1"),
    ("a", "2"),
    ("a", "3"),
    ("1", "b"),
    ("1", "4"),
    ("2", "b"),
    ("2", "6"),
    ("3", "b"),
    ("3", "8"),
    ("b", "4"),
    ("b", "6"),
    ("b", "8"),
    ("4", "5"),
    ("4", "7"),
    ("6", "7"),
    ("6", "c"),
    ("6", "9"),
    ("8", "9"),
    ("8", "10"),
    ("7", "5"),
    ("7", "9"),
    ("9", "10"),
    ("5", "c"),
    ("10", "c"),
];

const H_PRIME_ROLES: [&str; 9] = ["b", "c", "4", "5", "6", "7", "8", "9", "10"];

/// The gadget H on roles `a, b, c, 1..10`.
pub fn gadget_h() -> SimpleGraph {
    SimpleGraph::from_edges::<&str>(&[], &H_EDGES).expect("static edge list")
}

/// H′, the subgraph of H induced by `b, c, 4..10`.
pub fn gadget_h_prime() -> SimpleGraph {
    gadget_h().induced_subgraph(H_PRIME_ROLES)
}

/// The 0-bend representation of H with half-integer coordinates doubled.
pub fn gadget_h_rep() -> CpgRepresentation {
    // (x, y) with y up, mapped to row = y, col = x
    let seg = |v: &str, (x0, y0): (u32, u32), (x1, y1): (u32, u32)| {
        GridPath::new(v, vec![GridPoint::new(y0, x0), GridPoint::new(y1, x1)])
    };
    CpgRepresentation::new(
        10,
        9,
        vec![
            seg("a", (2, 3), (2, 9)),
            seg("b", (4, 3), (4, 9)),
            seg("c", (8, 3), (8, 9)),
            seg("1", (2, 8), (4, 8)),
            seg("2", (2, 6), (4, 6)),
            seg("3", (2, 4), (4, 4)),
            seg("4", (4, 8), (6, 8)),
            seg("5", (6, 8), (8, 8)),
            seg("6", (4, 6), (8, 6)),
            seg("7", (6, 6), (6, 8)),
            seg("8", (4, 4), (6, 4)),
            seg("9", (6, 4), (6, 6)),
            seg("10", (6, 4), (8, 4)),
        ],
    )
    .expect("distinct labels")
}

/// All proper 3-colorings of `g`, found by running through every one of the
/// `3^n` assignments.
fn all_three_colorings(g: &SimpleGraph) -> (Vec<String>, Vec<Vec<u8>>) {
    let ig = g.indexed();
    let n = ig.len();
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| ig.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v))).collect();
    let mut colors = vec![0u8; n];
    let mut out = Vec::new();
    loop {
        if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
            out.push(colors.clone());
        }
        let mut i = 0;
        while i < n && colors[i] == 2 {
            colors[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        colors[i] += 1;
    }
    (ig.labels, out)
}

/// Exhaustively checks the color-forcing behaviour of H and H′.
pub fn verify_gadget_claims() -> Certificate {
    let (h_labels, h_cols) = all_three_colorings(&gadget_h());
    let (p_labels, p_cols) = all_three_colorings(&gadget_h_prime());
    let at = |labels: &[String], role: &str| labels.iter().position(|l| l == role).unwrap();
    let (ha, hb, hc) = (at(&h_labels, "a"), at(&h_labels, "b"), at(&h_labels, "c"));
    let (pb, pc) = (at(&p_labels, "b"), at(&p_labels, "c"));

    let prime_forces = p_cols.iter().all(|c| c[pb] != c[pc]);
    let h_forces = h_cols.iter().all(|c| c[ha] == c[hb] && c[hb] != c[hc]);
    let pairs: Vec<(u8, u8)> = (0..3).flat_map(|x| (0..3).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let prime_extends = pairs.iter().all(|&(x, y)| p_cols.iter().any(|c| c[pb] == x && c[pc] == y));
    let h_extends = pairs.iter().all(|&(x, y)| h_cols.iter().any(|c| c[hb] == x && c[hc] == y));
    let checks = vec![
        ("every 3-coloring of H' separates b and c".to_string(), prime_forces),
        ("every 3-coloring of H has c(a) = c(b) != c(c)".to_string(), h_forces),
        ("distinct colors on b, c extend to H'".to_string(), prime_extends),
        ("distinct colors on b, c extend to H".to_string(), h_extends),
    ];
    let pass = checks.iter().all(|(_, ok)| *ok);
    Certificate::new(
        Claim::GadgetClaims,
        pass,
        Witness::Gadget { checks, h_colorings: h_cols.len() as u64, h_prime_colorings: p_cols.len() as u64 },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GadgetKind {
    H,
    #[serde(rename = "H'")]
    HPrime,
}

impl GadgetKind {
    fn tag(self) -> &'static str {
        match self {
            GadgetKind::H => "H",
            GadgetKind::HPrime => "H'",
        }
    }
}

/// Where a vertex of G′ comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    Vertex { vertex: String },
    InteriorSegment { edge: (String, String), index: usize },
    Gadget { edge: (String, String), pair: usize, gadget: GadgetKind, role: String },
}

/// One inserted gadget; `roles` maps every gadget role, identified ones
/// included, to its G′ label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetInstance {
    pub edge: (String, String),
    pub pair: usize,
    pub kind: GadgetKind,
    pub roles: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutput {
    pub graph: SimpleGraph,
    pub gprime: SimpleGraph,
    pub rep: CpgRepresentation,
    pub provenance: BTreeMap<String, Origin>,
    pub gadgets: Vec<GadgetInstance>,
    pub scale: u32,
}

impl ReductionOutput {
    pub fn count(&self, kind: GadgetKind) -> usize {
        self.gadgets.iter().filter(|g| g.kind == kind).count()
    }

    pub fn copy_of(vertex: &str) -> String {
        copy_label(vertex)
    }
}

fn copy_label(v: &str) -> String {
    format!("v:{v}")
}

pub const DEFAULT_SCALE: u32 = 8;
pub const MAX_SCALE: u32 = 256;

pub fn reduce_3col(emb: &OrthogonalEmbedding) -> Result<ReductionOutput> {
    reduce_3col_from(emb, DEFAULT_SCALE)
}

/// Tries `scale`, doubling it whenever the construction does not fit.
pub fn reduce_3col_from(emb: &OrthogonalEmbedding, scale: u32) -> Result<ReductionOutput> {
    let mut s = scale.max(1);
    loop {
        match reduce_at_scale(emb, s) {
            Err(CpgError::RegionTooSmall { .. }) if s < MAX_SCALE => s *= 2,
            other => return other,
        }
    }
}

struct Builder {
    paths: Vec<GridPath>,
    gprime: SimpleGraph,
    provenance: BTreeMap<String, Origin>,
    gadgets: Vec<GadgetInstance>,
}

impl Builder {
    fn vertical(&mut self, label: &str, col: i64, lo: i64, hi: i64) {
        self.paths.push(GridPath::new(label, vec![pt(lo, col), pt(hi, col)]));
    }

    fn horizontal(&mut self, label: &str, row: i64, c0: i64, c1: i64) {
        self.paths.push(GridPath::new(label, vec![pt(row, c0), pt(row, c1)]));
    }

    fn add_node(&mut self, label: &str, origin: Origin) {
        self.gprime.add_vertex(label);
        self.provenance.insert(label.to_string(), origin);
    }
}

fn pt(row: i64, col: i64) -> GridPoint {
    GridPoint::new(row as u32, col as u32)
}

/// One horizontal segment of an edge polyline with its gadget.
struct Span {
    row: i64,
    /// Side of `row` the gadget uses: +1 above, -1 below.
    half: i64,
}

struct EdgePlan {
    edge: (String, String),
    /// Vertical paths met along the edge: (G′ label, column).
    carriers: Vec<(String, i64)>,
    spans: Vec<Span>,
}

/// One attempt at a fixed scale.
pub fn reduce_at_scale(emb: &OrthogonalEmbedding, scale: u32) -> Result<ReductionOutput> {
    emb.validate()?;
    if scale < 8 || scale % 2 == 1 {
        return Err(CpgError::RegionTooSmall { scale, detail: "scale must be even and at least 8".into() });
    }
    let graph = emb.graph()?;
    let s = scale as i64;
    let w = s / 2 - 1;
    let all_points = emb.vertices.values().copied().chain(emb.edges.iter().flat_map(|e| e.polyline.iter().copied()));
    let (min_x, min_y) = all_points.fold((i64::MAX, i64::MAX), |(mx, my), (x, y)| (mx.min(x), my.min(y)));
    let sx = |x: i64| s * (x - min_x) + s;
    let sy = |y: i64| s * (y - min_y) + s;

    let mut b = Builder { paths: Vec::new(), gprime: SimpleGraph::new(), provenance: BTreeMap::new(), gadgets: Vec::new() };
    let mut extent: BTreeMap<&str, (i64, i64)> = BTreeMap::new();
    for (v, &(_, y)) in &emb.vertices {
        extent.insert(v, (sy(y) - w, sy(y) + w));
        b.add_node(&copy_label(v), Origin::Vertex { vertex: v.clone() });
    }

    let mut plans = Vec::new();
    // (vertex, side) -> (plan index, span index) for spans on the vertex row
    let mut row_spans: BTreeMap<(&str, Direction), (usize, usize)> = BTreeMap::new();
    for e in &emb.edges {
        let pts: Vec<(i64, i64)> = e.polyline.iter().map(|&(x, y)| (sx(x), sy(y))).collect();
        let last = pts.len() - 1;
        let (first_dir, last_dir) = (e.first_direction(), e.last_direction());
        if last == 1 && first_dir.is_vertical() {
            let mid = (pts[0].1 + pts[1].1) / 2;
            let (low, high) = if pts[0].1 < pts[1].1 { (&e.u, &e.v) } else { (&e.v, &e.u) };
            extent.get_mut(low.as_str()).unwrap().1 = mid;
            extent.get_mut(high.as_str()).unwrap().0 = mid;
            b.gprime.add_edge(&copy_label(&e.u), &copy_label(&e.v))?;
            continue;
        }
        let label = format!("{}-{}", e.u, e.v);
        let edge = (e.u.clone(), e.v.clone());
        let mut carriers = vec![(copy_label(&e.u), pts[0].0)];
        let mut spans = Vec::new();
        for i in 0..last {
            let (p, q) = (pts[i], pts[i + 1]);
            if p.0 == q.0 {
                if i > 0 && i + 1 < last {
                    let name = format!("s:{label}:{}", carriers.len());
                    b.add_node(&name, Origin::InteriorSegment { edge: edge.clone(), index: carriers.len() });
                    b.vertical(&name, p.0, p.1.min(q.1) - w, p.1.max(q.1) + w);
                    carriers.push((name, p.0));
                }
            } else {
                spans.push(Span { row: p.1, half: 1 });
            }
        }
        carriers.push((copy_label(&e.v), pts[last].0));
        if spans.len() + 1 != carriers.len() {
            return Err(CpgError::Inconsistent(format!("edge {label} does not alternate between vertical carriers and horizontal runs")));
        }
        if first_dir.is_vertical() {
            let corner = pts[1].1;
            let ext = extent.get_mut(e.u.as_str()).unwrap();
            if first_dir == Direction::North { ext.1 = corner + w } else { ext.0 = corner - w }
        } else {
            row_spans.insert((e.u.as_str(), first_dir), (plans.len(), 0));
        }
        if last_dir.is_vertical() {
            let corner = pts[last - 1].1;
            let ext = extent.get_mut(e.v.as_str()).unwrap();
            if last_dir == Direction::North { ext.1 = corner + w } else { ext.0 = corner - w }
        } else {
            row_spans.insert((e.v.as_str(), last_dir), (plans.len(), spans.len() - 1));
        }
        plans.push(EdgePlan { edge, carriers, spans });
    }

    // Gadgets hanging off the same vertex row from the east and the west
    // must use opposite halves. Each span has at most two such neighbours
    // and chains run monotonically eastward, so two-coloring always succeeds.
    let mut conflicts: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for v in emb.vertices.keys() {
        if let (Some(&east), Some(&west)) = (row_spans.get(&(v.as_str(), Direction::East)), row_spans.get(&(v.as_str(), Direction::West))) {
            conflicts.entry(east).or_default().push(west);
            conflicts.entry(west).or_default().push(east);
        }
    }
    let mut half: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for &start in conflicts.keys() {
        if half.contains_key(&start) {
            continue;
        }
        half.insert(start, 1);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &conflicts[&x] {
                match half.get(&y) {
                    None => {
                        half.insert(y, -half[&x]);
                        queue.push_back(y);
                    }
                    Some(&h) if h == half[&x] => {
                        return Err(CpgError::Inconsistent("gadget sides cannot be separated".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    for (&(p, i), &h) in &half {
        plans[p].spans[i].half = h;
    }

    for (v, &(x, _)) in &emb.vertices {
        let (lo, hi) = extent[v.as_str()];
        b.vertical(&copy_label(v), sx(x), lo, hi);
    }
    for plan in &plans {
        for (j, span) in plan.spans.iter().enumerate() {
            let kind = if j == 0 { GadgetKind::HPrime } else { GadgetKind::H };
            add_gadget(&mut b, plan, j, span, kind)?;
        }
    }

    let rep = CpgRepresentation::fitted(b.paths)?;
    let report = rep.validate();
    if let Some(v) = report.violations.first() {
        return Err(CpgError::RegionTooSmall { scale, detail: format!("{:?} at {:?} among {:?}", v.kind, v.location, v.vertices) });
    }
    let extracted = contact_graph(&rep);
    if extracted != b.gprime {
        let stray = extracted.edges().find(|(x, y)| !b.gprime.has_edge(x, y)).map(|(x, y)| format!("unexpected contact {x} ~ {y}"));
        let missing = b.gprime.edges().find(|(x, y)| !extracted.has_edge(x, y)).map(|(x, y)| format!("missing contact {x} ~ {y}"));
        return Err(CpgError::RegionTooSmall { scale, detail: stray.or(missing).unwrap_or_else(|| "vertex sets differ".into()) });
    }
    Ok(ReductionOutput { graph, gprime: b.gprime, rep, provenance: b.provenance, gadgets: b.gadgets, scale })
}

fn add_gadget(b: &mut Builder, plan: &EdgePlan, j: usize, span: &Span, kind: GadgetKind) -> Result<()> {
    let (left_label, xb) = plan.carriers[j].clone();
    let (right_label, xo) = plan.carriers[j + 1].clone();
    let prefix = format!("g:{}-{}:{}:{}", plan.edge.0, plan.edge.1, j + 1, kind.tag());
    let r = |i: i64| span.row + span.half * i;
    let (r0, r1, r2) = (r(1), r(2), r(3));

    let mut roles: BTreeMap<String, String> = BTreeMap::new();
    roles.insert("b".into(), left_label);
    let (template, mid, far) = match kind {
        GadgetKind::HPrime => {
            roles.insert("c".into(), right_label);
            (gadget_h_prime(), (xb + xo) / 2, xo)
        }
        GadgetKind::H => {
            roles.insert("a".into(), right_label);
            let away = if xb > xo { 1 } else { -1 };
            (gadget_h(), xb + away, xb + 2 * away)
        }
    };
    for role in template.vertices() {
        if !roles.contains_key(role) {
            let name = format!("{prefix}:{role}");
            b.add_node(
                &name,
                Origin::Gadget { edge: plan.edge.clone(), pair: j + 1, gadget: kind, role: role.to_string() },
            );
            roles.insert(role.to_string(), name);
        }
    }
    for (x, y) in template.edges() {
        b.gprime.add_edge(&roles[x], &roles[y])?;
    }

    let name = |role: &str| roles[role].clone();
    if kind == GadgetKind::H {
        b.horizontal(&name("1"), r2, xo, xb);
        b.horizontal(&name("2"), r1, xo, xb);
        b.horizontal(&name("3"), r0, xo, xb);
        b.vertical(&name("c"), far, r0.min(r2), r0.max(r2));
    }
    b.horizontal(&name("8"), r0, xb, mid);
    b.horizontal(&name("6"), r1, xb, far);
    b.horizontal(&name("4"), r2, xb, mid);
    b.vertical(&name("9"), mid, r0.min(r1), r0.max(r1));
    b.vertical(&name("7"), mid, r1.min(r2), r1.max(r2));
    b.horizontal(&name("10"), r0, mid, far);
    b.horizontal(&name("5"), r2, mid, far);

    b.gadgets.push(GadgetInstance { edge: plan.edge.clone(), pair: j + 1, kind, roles });
    Ok(())
}

fn check_three_coloring(g: &SimpleGraph, coloring: &Coloring) -> Result<()> {
    if !verify_coloring(g, coloring)? {
        return Err(CpgError::ImproperColoring("some edge joins equal colors".into()));
    }
    if let Some((v, c)) = coloring.colors.iter().find(|(_, &c)| c >= 3) {
        return Err(CpgError::ImproperColoring(format!("vertex `{v}` uses color {c} outside 0..3")));
    }
    Ok(())
}

/// Reads a coloring of G off the vertex copies in a proper 3-coloring of G′.
pub fn restrict_coloring(out: &ReductionOutput, coloring: &Coloring) -> Result<Coloring> {
    check_three_coloring(&out.gprime, coloring)?;
    Ok(Coloring {
        colors: out.graph.vertices().map(|v| (v.to_string(), coloring.colors[&copy_label(v)])).collect(),
    })
}

/// Extends a proper 3-coloring of G to G′: interior segments repeat the
/// far endpoint's color and each gadget is completed by exhaustive search.
pub fn extend_coloring(out: &ReductionOutput, coloring: &Coloring) -> Result<Coloring> {
    check_three_coloring(&out.graph, coloring)?;
    let mut colors: BTreeMap<String, usize> = BTreeMap::new();
    for (label, origin) in &out.provenance {
        match origin {
            Origin::Vertex { vertex } => {
                colors.insert(label.clone(), coloring.colors[vertex]);
            }
            Origin::InteriorSegment { edge, .. } => {
                colors.insert(label.clone(), coloring.colors[&edge.1]);
            }
            Origin::Gadget { .. } => {}
        }
    }
    for gadget in &out.gadgets {
        let (template, fixed_roles) = match gadget.kind {
            GadgetKind::H => (gadget_h(), ["a", "b"]),
            GadgetKind::HPrime => (gadget_h_prime(), ["b", "c"]),
        };
        let fixed: BTreeMap<String, usize> = fixed_roles.iter().map(|r| (r.to_string(), colors[&gadget.roles[*r]])).collect();
        let local = extend_precolored(&template, 3, &fixed)?.ok_or_else(|| {
            CpgError::ImproperColoring(format!("gadget {} on edge {:?} cannot be completed", gadget.kind.tag(), gadget.edge))
        })?;
        for (role, label) in &gadget.roles {
            colors.entry(label.clone()).or_insert(local.colors[role]);
        }
    }
    let result = Coloring { colors };
    check_three_coloring(&out.gprime, &result)?;
    Ok(result)
}
