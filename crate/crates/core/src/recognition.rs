//! Bounded exhaustive search for contact representations with at most `k`
//! bends per path.
//!
//! Coordinates are handled as order types: a new coordinate either reuses an
//! existing line or falls strictly between two of them. Contacts and validity
//! depend only on this order, so enumerating order types is the same as
//! enumerating all compacted grids. Paths are built segment by segment and
//! checked against everything placed so far.
//!
//! Two normalizations cut the search without losing completeness:
//! * Shrinking a path to the stretch between its first and last contact points
//!   keeps the contact graph, so every path whose neighbours are all placed
//!   must end at contact points (a path with a single contact point is a
//!   straight stub ending there).
//! * The first path of each component starts at the origin heading east and
//!   every path is written from its lexicographically smaller end.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contact::contact_graph;
use crate::error::{CpgError, Result};
use crate::graph::{IndexedGraph, SimpleGraph};
use crate::grid::{CpgRepresentation, GridPath, GridPoint};

/// Largest graph the search accepts.
pub const RECOGNITION_LIMIT: usize = 12;
/// Largest bend bound the search accepts.
pub const MAX_SEARCH_BENDS: usize = 4;
pub const DEFAULT_BUDGET: u64 = 200_000_000;

const GAP: i64 = 1 << 50;
/// Node budget of the first randomized probe; later probes grow by half.
const PROBE_NODES: u64 = 50_000;

/// Placed paths of one component: vertex index and corner keys.
type Piece = Vec<(usize, Vec<(i64, i64)>)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBounds {
    pub bends: usize,
    /// Distinct lines allowed per axis.
    pub lines_per_axis: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found { rep: CpgRepresentation },
    UnsatWithinBounds { bounds: GridBounds },
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
    /// False when an unsat answer rests on an unproven grid bound.
    pub exhaustive: bool,
}

impl SearchReport {
    pub fn found(&self) -> Option<&CpgRepresentation> {
        match &self.outcome {
            SearchOutcome::Found { rep } => Some(rep),
            _ => None,
        }
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self.outcome, SearchOutcome::UnsatWithinBounds { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub bends: usize,
    pub budget: u64,
    /// Overrides the default number of lines per axis.
    pub grid_bound: Option<usize>,
}

impl SearchOptions {
    pub fn new(bends: usize) -> Self {
        SearchOptions { bends, budget: DEFAULT_BUDGET, grid_bound: None }
    }

    /// `3n` lines for straight paths, `(k + 2) n` otherwise.
    pub fn default_bound(bends: usize, n: usize) -> usize {
        if bends == 0 {
            3 * n
        } else {
            (bends + 2) * n
        }
    }
}

pub fn recognize_b0(g: &SimpleGraph, budget: u64) -> Result<SearchReport> {
    recognize(g, &SearchOptions { bends: 0, budget, grid_bound: None })
}

pub fn recognize_bk(g: &SimpleGraph, k: usize, budget: u64) -> Result<SearchReport> {
    recognize(g, &SearchOptions { bends: k, budget, grid_bound: None })
}

pub fn recognize(g: &SimpleGraph, opts: &SearchOptions) -> Result<SearchReport> {
    let n = g.vertex_count();
    if n > RECOGNITION_LIMIT {
        return Err(CpgError::SizeLimit { size: n, limit: RECOGNITION_LIMIT });
    }
    if opts.bends > MAX_SEARCH_BENDS {
        return Err(CpgError::TooManyBends { bends: opts.bends, allowed: MAX_SEARCH_BENDS });
    }
    let bound = opts.grid_bound.unwrap_or_else(|| SearchOptions::default_bound(opts.bends, n));
    let bounds = GridBounds { bends: opts.bends, lines_per_axis: bound };
    let start = Instant::now();
    let ig = g.indexed();
    let mut nodes = 0u64;
    let mut pieces: Vec<Piece> = Vec::new();
    let mut verdict = None;
    'components: for comp in ig.components() {
        // Short randomized probes first: a representation, when one exists, is
        // usually reached far sooner than by one deterministic sweep. Any run
        // that finishes without a budget cut has covered every branch.
        let mut probe = PROBE_NODES;
        for attempt in 0u64.. {
            let left = opts.budget.saturating_sub(nodes);
            let last = probe >= left / 2;
            let mut s = Search::new(&ig, &comp, opts.bends, bound, if last { left } else { probe });
            if attempt > 0 {
                s.rng = Some(ChaCha8Rng::seed_from_u64(attempt));
            }
            let r = s.run();
            nodes += s.nodes.min(s.budget);
            match r {
                Step::Found => {
                    pieces.push(comp.iter().map(|&v| (v, s.paths[v].clone())).collect());
                    continue 'components;
                }
                Step::Exhausted => {
                    verdict = Some(SearchOutcome::UnsatWithinBounds { bounds });
                    break 'components;
                }
                Step::OutOfBudget if last => {
                    verdict = Some(SearchOutcome::BudgetExceeded { budget: opts.budget });
                    break 'components;
                }
                Step::OutOfBudget => probe += probe / 2,
            }
        }
    }
    let outcome = match verdict {
        Some(o) => o,
        None => {
            let rep = assemble(&ig, &pieces)?;
            let report = rep.validate();
            if !report.ok || contact_graph(&rep) != *g {
                return Err(CpgError::Inconsistent("search produced a representation that does not realize the graph".into()));
            }
            SearchOutcome::Found { rep }
        }
    };
    let stats = SearchStats { nodes, elapsed_ms: start.elapsed().as_millis() as u64 };
    let exhaustive = opts.bends == 0 && opts.grid_bound.is_none_or(|b| b >= 3 * n);
    Ok(SearchReport { outcome, stats, exhaustive })
}

/// Maps the order-type coordinates of each component to grid lines and
/// places the components side by side.
fn assemble(ig: &IndexedGraph, pieces: &[Piece]) -> Result<CpgRepresentation> {
    let mut paths = Vec::new();
    let mut offset = 0u32;
    for piece in pieces {
        let mut xs: Vec<i64> = piece.iter().flat_map(|(_, c)| c.iter().map(|p| p.0)).collect();
        let mut ys: Vec<i64> = piece.iter().flat_map(|(_, c)| c.iter().map(|p| p.1)).collect();
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        let rank = |v: &[i64], k: i64| v.binary_search(&k).expect("coordinate was collected") as u32;
        for (v, corners) in piece {
            let pts = corners.iter().map(|&(x, y)| GridPoint::new(rank(&ys, y), offset + rank(&xs, x))).collect();
            paths.push(GridPath::new(ig.labels[*v].clone(), pts));
        }
        offset += xs.len() as u32 + 1;
    }
    CpgRepresentation::fitted(paths)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Apart,
    Touch((i64, i64)),
    Clash,
}

type Seg = ((i64, i64), (i64, i64));

/// Relation between segment `s` of a path being built and a placed path `q`.
/// `s_ends` flags whether each end of `s` is an endpoint of its path.
fn seg_vs_path(s: Seg, s_ends: (bool, bool), q: &[(i64, i64)], out: &mut Vec<(i64, i64)>) -> bool {
    let (q0, ql) = (q[0], q[q.len() - 1]);
    for t in q.windows(2) {
        match seg_meet(s, (t[0], t[1])) {
            Rel::Apart => {}
            Rel::Clash => return false,
            Rel::Touch(p) => {
                let s_end = (p == s.0 && s_ends.0) || (p == s.1 && s_ends.1);
                let q_end = p == q0 || p == ql;
                if !s_end && !q_end {
                    return false;
                }
                out.push(p);
            }
        }
    }
    true
}

/// Intersection of two axis-parallel segments: nothing, one point, or a
/// positive-length overlap (reported as a clash).
fn seg_meet(s: Seg, t: Seg) -> Rel {
    let s_h = s.0 .1 == s.1 .1;
    let t_h = t.0 .1 == t.1 .1;
    let span = |a: i64, b: i64| (a.min(b), a.max(b));
    match (s_h, t_h) {
        (true, true) | (false, false) => {
            let (fixed_s, fixed_t, (a0, a1), (b0, b1)) = if s_h {
                (s.0 .1, t.0 .1, span(s.0 .0, s.1 .0), span(t.0 .0, t.1 .0))
            } else {
                (s.0 .0, t.0 .0, span(s.0 .1, s.1 .1), span(t.0 .1, t.1 .1))
            };
            if fixed_s != fixed_t {
                return Rel::Apart;
            }
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            match lo.cmp(&hi) {
                std::cmp::Ordering::Greater => Rel::Apart,
                std::cmp::Ordering::Less => Rel::Clash,
                std::cmp::Ordering::Equal => Rel::Touch(if s_h { (lo, fixed_s) } else { (fixed_s, lo) }),
            }
        }
        _ => {
            let (h, v) = if s_h { (s, t) } else { (t, s) };
            let (x0, x1) = span(h.0 .0, h.1 .0);
            let (y0, y1) = span(v.0 .1, v.1 .1);
            let (x, y) = (v.0 .0, h.0 .1);
            if (x0..=x1).contains(&x) && (y0..=y1).contains(&y) {
                Rel::Touch((x, y))
            } else {
                Rel::Apart
            }
        }
    }
}

/// True iff the polyline `q` has a point on the line `coord = value`
/// (`horizontal` selects a row).
fn meets_line(q: &[(i64, i64)], horizontal: bool, value: i64) -> bool {
    q.windows(2).any(|t| {
        let (a, b) = if horizontal { (t[0].1, t[1].1) } else { (t[0].0, t[1].0) };
        a.min(b) <= value && value <= a.max(b)
    })
}

/// Sorted distinct line coordinates of one axis.
#[derive(Debug, Default, Clone)]
struct Lines(Vec<i64>);

impl Lines {
    /// Existing lines first, then every gap.
    fn choices(&self) -> Vec<(i64, bool)> {
        let v = &self.0;
        if v.is_empty() {
            return vec![(0, true)];
        }
        let mut out: Vec<(i64, bool)> = v.iter().map(|&x| (x, false)).collect();
        out.push((v[0] - GAP, true));
        for w in v.windows(2) {
            debug_assert!(w[1] - w[0] >= 2, "order-type gap exhausted");
            out.push((w[0] + (w[1] - w[0]) / 2, true));
        }
        out.push((v[v.len() - 1] + GAP, true));
        out
    }

    fn insert(&mut self, x: i64) {
        let i = self.0.partition_point(|&y| y < x);
        self.0.insert(i, x);
    }

    fn remove(&mut self, x: i64) {
        let i = self.0.binary_search(&x).expect("line present");
        self.0.remove(i);
    }
}

struct Search<'a> {
    ig: &'a IndexedGraph,
    order: Vec<usize>,
    placed: Vec<bool>,
    paths: Vec<Vec<(i64, i64)>>,
    /// Contact points recorded per vertex, tagged with the partner.
    contacts: Vec<Vec<(usize, (i64, i64))>>,
    xs: Lines,
    ys: Lines,
    bends: usize,
    bound: usize,
    budget: u64,
    nodes: u64,
    /// Shuffles branch order in randomized probes.
    rng: Option<ChaCha8Rng>,
}

/// Shape of the path under construction.
struct Shape {
    v: usize,
    nbends: usize,
    start_h: bool,
    carrier0: i64,
    /// Coordinate of each corner along its outgoing segment's axis, then the
    /// final coordinate.
    e: Vec<i64>,
    corners: Vec<(i64, i64)>,
    touched: u64,
    points: Vec<(usize, (i64, i64))>,
}

impl Shape {
    fn seg_horizontal(&self, j: usize) -> bool {
        self.start_h == j.is_multiple_of(2)
    }
}

impl<'a> Search<'a> {
    fn new(ig: &'a IndexedGraph, comp: &[usize], bends: usize, bound: usize, budget: u64) -> Self {
        let n = ig.len();
        // BFS from a vertex of maximum degree, so each later vertex has a placed neighbour.
        let root = *comp.iter().max_by_key(|&&v| (ig.adj[v].len(), std::cmp::Reverse(v))).expect("nonempty component");
        let mut order = vec![root];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            let mut next: Vec<usize> = ig.adj[v].iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| (std::cmp::Reverse(ig.adj[w].len()), w));
            for w in next {
                seen[w] = true;
                order.push(w);
            }
            i += 1;
        }
        Search {
            ig,
            order,
            placed: vec![false; n],
            paths: vec![Vec::new(); n],
            contacts: vec![Vec::new(); n],
            xs: Lines::default(),
            ys: Lines::default(),
            bends,
            bound,
            budget,
            nodes: 0,
            rng: None,
        }
    }

    fn run(&mut self) -> Step {
        if self.order.len() == 1 {
            self.paths[self.order[0]] = vec![(0, 0), (1, 0)];
            return Step::Found;
        }
        self.place(0)
    }

    fn shuffled<T>(&mut self, mut v: Vec<T>) -> Vec<T> {
        if let Some(rng) = &mut self.rng {
            v.shuffle(rng);
        }
        v
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn lines(&mut self, horizontal_coord: bool) -> &mut Lines {
        // A y coordinate lives on the rows, an x coordinate on the columns.
        if horizontal_coord {
            &mut self.ys
        } else {
            &mut self.xs
        }
    }

    fn place(&mut self, idx: usize) -> Step {
        if idx == self.order.len() {
            return Step::Found;
        }
        let v = self.order[idx];
        let root = idx == 0;
        let shapes: Vec<(usize, bool)> =
            (0..=self.bends).flat_map(|b| [(b, true), (b, false)]).filter(|&(_, h)| h || !root).collect();
        for (nbends, start_h) in self.shuffled(shapes) {
            {
                let mut shape = Shape {
                    v,
                    nbends,
                    start_h,
                    carrier0: 0,
                    e: Vec::new(),
                    corners: Vec::new(),
                    touched: 0,
                    points: Vec::new(),
                };
                // carrier0 is a y coordinate when the first segment is horizontal.
                let cands = if root { vec![(0, true)] } else { {
                    let c = self.lines(start_h).choices();
                    self.shuffled(c)
                } };
                for (c, fresh) in cands {
                    if !self.tick() {
                        return Step::OutOfBudget;
                    }
                    if fresh && self.lines(start_h).0.len() >= self.bound {
                        continue;
                    }
                    if nbends == 0 && !self.line_reaches_neighbours(v, 0, start_h, c) {
                        continue;
                    }
                    if fresh {
                        self.lines(start_h).insert(c);
                    }
                    shape.carrier0 = c;
                    let r = self.choose(&mut shape, idx);
                    if fresh {
                        self.lines(start_h).remove(c);
                    }
                    if r != Step::Exhausted {
                        return r;
                    }
                }
            }
        }
        Step::Exhausted
    }

    /// True iff every placed neighbour not yet touched meets the given line.
    fn line_reaches_neighbours(&self, v: usize, touched: u64, horizontal: bool, value: i64) -> bool {
        self.ig.adj[v]
            .iter()
            .all(|&w| !self.placed[w] || touched >> w & 1 == 1 || meets_line(&self.paths[w], horizontal, value))
    }

    /// Chooses the next coordinate `e[j]` of the shape.
    fn choose(&mut self, shape: &mut Shape, idx: usize) -> Step {
        let j = shape.e.len();
        let last = shape.nbends + 1;
        // e[0] and e[1] run along segment 0; e[j] for j >= 1 ends segment j - 1.
        let seg = if j == 0 { 0 } else { j - 1 };
        let seg_h = shape.seg_horizontal(seg);
        // A horizontal segment varies x, so its coordinates are columns.
        let on_rows = !seg_h;
        let prev = match j {
            0 => None,
            1 => Some(shape.e[0]),
            _ => Some(if j - 1 == 1 { shape.carrier0 } else { shape.e[j - 2] }),
        };
        let cands = if idx == 0 && j == 0 { vec![(0, true)] } else { {
            let c = self.lines(on_rows).choices();
            self.shuffled(c)
        } };
        for (c, fresh) in cands {
            if Some(c) == prev {
                continue;
            }
            if !self.tick() {
                return Step::OutOfBudget;
            }
            if fresh && self.lines(on_rows).0.len() >= self.bound {
                continue;
            }
            // Straight paths are written left to right or bottom to top.
            if shape.nbends == 0 && j == 1 && c < shape.e[0] {
                continue;
            }
            let saved = (shape.touched, shape.points.len(), shape.corners.len());
            shape.e.push(c);
            let corner = if j == 0 {
                if seg_h {
                    (c, shape.carrier0)
                } else {
                    (shape.carrier0, c)
                }
            } else {
                let perp = if j == 1 { shape.carrier0 } else { shape.e[j - 1] };
                if seg_h {
                    (c, perp)
                } else {
                    (perp, c)
                }
            };
            shape.corners.push(corner);
            if fresh {
                self.lines(on_rows).insert(c);
            }
            let ok = if j == 0 {
                self.check_start(shape)
            } else {
                // e[j] with 1 <= j <= nbends is also the carrier of segment j.
                self.check_segment(shape, j - 1, j == last)
                    && (j != shape.nbends || self.line_reaches_neighbours(shape.v, shape.touched, shape.seg_horizontal(j), c))
            };
            let r = if !ok {
                Step::Exhausted
            } else if j == last {
                self.finish(shape, idx)
            } else {
                self.choose(shape, idx)
            };
            if fresh {
                self.lines(on_rows).remove(c);
            }
            shape.e.pop();
            shape.corners.truncate(saved.2);
            shape.points.truncate(saved.1);
            shape.touched = saved.0;
            if r != Step::Exhausted {
                return r;
            }
        }
        Step::Exhausted
    }

    /// The start point may only lie on neighbours. When every neighbour is
    /// already placed and there are at least four of them, the contacts span
    /// two or more points (one point hosts at most four paths), so the start
    /// must be one of them.
    fn check_start(&self, shape: &Shape) -> bool {
        let p = shape.corners[0];
        let on = |w: usize| self.paths[w].windows(2).any(|t| seg_meet((p, p), (t[0], t[1])) != Rel::Apart);
        let mut hit = false;
        for &w in &self.order {
            if self.placed[w] && on(w) {
                if !self.ig.adjacent(shape.v, w) {
                    return false;
                }
                hit = true;
            }
        }
        let nbrs = &self.ig.adj[shape.v];
        hit || nbrs.len() < 4 || nbrs.iter().any(|&w| !self.placed[w])
    }

    fn check_segment(&self, shape: &mut Shape, seg: usize, is_last: bool) -> bool {
        let s = (shape.corners[seg], shape.corners[seg + 1]);
        // Non-adjacent segments of the same path must not meet.
        for t in 0..seg.saturating_sub(1) {
            if seg_meet(s, (shape.corners[t], shape.corners[t + 1])) != Rel::Apart {
                return false;
            }
        }
        let mut pts = Vec::new();
        for &w in &self.order {
            if !self.placed[w] {
                continue;
            }
            pts.clear();
            if !seg_vs_path(s, (seg == 0, is_last), &self.paths[w], &mut pts) {
                return false;
            }
            if !pts.is_empty() {
                if !self.ig.adjacent(shape.v, w) {
                    return false;
                }
                shape.touched |= 1 << w;
                shape.points.extend(pts.iter().map(|&p| (w, p)));
            }
        }
        true
    }

    fn finish(&mut self, shape: &Shape, idx: usize) -> Step {
        let v = shape.v;
        let (first, last) = (shape.corners[0], shape.corners[shape.corners.len() - 1]);
        if first > last {
            return Step::Exhausted;
        }
        let need: u64 = self.ig.adj[v].iter().filter(|&&w| self.placed[w]).map(|&w| 1u64 << w).sum();
        if shape.touched & need != need {
            return Step::Exhausted;
        }
        self.placed[v] = true;
        self.paths[v] = shape.corners.clone();
        let mut dedup = shape.points.clone();
        dedup.sort_unstable();
        dedup.dedup();
        for &(w, p) in &dedup {
            self.contacts[v].push((w, p));
            self.contacts[w].push((v, p));
        }
        let ok = std::iter::once(v)
            .chain(self.ig.adj[v].iter().copied().filter(|&w| self.placed[w]))
            .all(|u| !self.complete(u) || self.normalized(u));
        let r = if ok { self.place(idx + 1) } else { Step::Exhausted };
        for &(w, p) in dedup.iter().rev() {
            let i = self.contacts[w].iter().rposition(|&c| c == (v, p)).expect("recorded");
            self.contacts[w].remove(i);
        }
        self.contacts[v].clear();
        self.placed[v] = false;
        r
    }

    fn complete(&self, u: usize) -> bool {
        self.placed[u] && self.ig.adj[u].iter().all(|&w| self.placed[w])
    }

    fn normalized(&self, u: usize) -> bool {
        let path = &self.paths[u];
        let mut pts: Vec<(i64, i64)> = self.contacts[u].iter().map(|c| c.1).collect();
        pts.sort_unstable();
        pts.dedup();
        let (a, b) = (path[0], path[path.len() - 1]);
        match pts.len() {
            0 => true,
            1 => path.len() == 2 && (a == pts[0] || b == pts[0]),
            _ => pts.contains(&a) && pts.contains(&b),
        }
    }
}
