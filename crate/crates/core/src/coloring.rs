//! Constructive colorings and an exact small-instance colorability oracle.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{CpgError, Result};
use crate::graph::{IndexedGraph, SimpleGraph};
use crate::grid::{segment_axis, Axis, CpgRepresentation};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub colors: BTreeMap<String, usize>,
}

impl Coloring {
    pub fn get(&self, v: &str) -> Option<usize> {
        self.colors.get(v).copied()
    }

    /// Number of distinct colors used.
    pub fn color_count(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coloring serializes")
    }

    fn from_indexed(ig: &IndexedGraph, colors: &[usize]) -> Self {
        Self {
            colors: ig.labels.iter().cloned().zip(colors.iter().copied()).collect(),
        }
    }
}

/// (vertical, line) -> [(start, end, label)]
type Runs<'a> = BTreeMap<(bool, u32), Vec<(u32, u32, &'a str)>>;

/// True iff every edge joins distinct colors. Every vertex must be colored.
pub fn verify_coloring(g: &SimpleGraph, coloring: &Coloring) -> Result<bool> {
    if let Some(v) = g.vertices().find(|v| !coloring.colors.contains_key(*v)) {
        return Err(CpgError::MissingColor(v.to_string()));
    }
    Ok(g.edges().all(|(u, v)| coloring.colors[u] != coloring.colors[v]))
}

/// Four-coloring of a 0-bend representation: horizontal paths get {0,1},
/// vertical paths {2,3}, alternating along each grid line.
pub fn color_b0(rep: &CpgRepresentation) -> Result<Coloring> {
    if rep.max_bends() > 0 {
        return Err(CpgError::TooManyBends { bends: rep.max_bends(), allowed: 0 });
    }
    let mut lines: Runs = BTreeMap::new();
    for path in &rep.paths {
        path.check_corners()?;
        let (a, b) = path.endpoints();
        match segment_axis(a, b).expect("checked above") {
            Axis::Horizontal => lines.entry((false, a.row)).or_default().push((a.col.min(b.col), a.col.max(b.col), &path.vertex)),
            Axis::Vertical => lines.entry((true, a.col)).or_default().push((a.row.min(b.row), a.row.max(b.row), &path.vertex)),
        }
    }
    let mut colors = BTreeMap::new();
    for ((vertical, _), mut segs) in lines {
        segs.sort();
        let base = if vertical { 2 } else { 0 };
        let mut prev: Option<(u32, usize)> = None;
        for (start, end, label) in segs {
            let parity = match prev {
                Some((prev_end, p)) if prev_end == start => 1 - p,
                _ => 0,
            };
            colors.insert(label.to_string(), base + parity);
            prev = Some((end, parity));
        }
    }
    Ok(Coloring { colors })
}

/// Six-coloring for graphs consistent with a contact representation:
/// peel vertices of degree at most 5, color what remains (a union of
/// 6-regular components other than K7) with a constructive Brooks step,
/// then re-insert the peeled vertices greedily.
pub fn color_cpg(g: &SimpleGraph) -> Result<Coloring> {
    let ig = g.indexed();
    let n = ig.len();
    let mut deg: Vec<usize> = ig.adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<usize> = (0..n).rev().filter(|&v| deg[v] <= 5).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &w in &ig.adj[v] {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 5 {
                    stack.push(w);
                }
            }
        }
    }

    let mut color: Vec<Option<usize>> = vec![None; n];
    let core: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    if !core.is_empty() {
        for comp in components_within(&ig, &core) {
            if comp.iter().any(|&v| deg[v] != 6) {
                return Err(CpgError::Hypothesis(format!(
                    "induced subgraph on {} vertices has minimum degree at least 6 and is not 6-regular",
                    comp.len()
                )));
            }
            if comp.len() == 7 {
                return Err(CpgError::Hypothesis("contains K7".into()));
            }
            for (v, c) in brooks(&ig, &comp, 6) {
                color[v] = Some(c);
            }
        }
    }
    for &v in order.iter().rev() {
        let used: BTreeSet<usize> = ig.adj[v].iter().filter_map(|&w| color[w]).collect();
        color[v] = Some((0..).find(|c| !used.contains(c)).unwrap());
    }
    let colors: Vec<usize> = color.into_iter().map(Option::unwrap).collect();
    Ok(Coloring::from_indexed(&ig, &colors))
}

fn components_within(ig: &IndexedGraph, set: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; ig.len()];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; ig.len()];
    let mut out = Vec::new();
    for &s in set {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &ig.adj[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// BFS distances from `root` inside `set`, `usize::MAX` when unreachable.
fn bfs_within(ig: &IndexedGraph, inside: &[bool], root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; ig.len()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &ig.adj[u] {
            if inside[w] && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn greedy_in_order(ig: &IndexedGraph, order: &[usize], color: &mut BTreeMap<usize, usize>) {
    for &v in order {
        let used: BTreeSet<usize> = ig.adj[v].iter().filter_map(|w| color.get(w).copied()).collect();
        color.insert(v, (0..).find(|c| !used.contains(c)).unwrap());
    }
}

/// Colors a connected graph of maximum degree `delta >= 3` that is not
/// complete with `delta` colors.
fn brooks(ig: &IndexedGraph, comp: &[usize], delta: usize) -> BTreeMap<usize, usize> {
    let mut inside = vec![false; ig.len()];
    for &v in comp {
        inside[v] = true;
    }
    let connected_without = |skip: &[usize]| -> bool {
        let mut ins = inside.clone();
        for &s in skip {
            ins[s] = false;
        }
        let Some(&root) = comp.iter().find(|v| ins[**v]) else { return true };
        let dist = bfs_within(ig, &ins, root);
        comp.iter().all(|&v| !ins[v] || dist[v] != usize::MAX)
    };

    if let Some(&cut) = comp.iter().find(|&&v| !connected_without(&[v])) {
        let mut ins = inside.clone();
        ins[cut] = false;
        let rest: Vec<usize> = comp.iter().copied().filter(|&v| v != cut).collect();
        let mut color = BTreeMap::new();
        for part in components_within_mask(ig, &ins, &rest) {
            let mut block_in = vec![false; ig.len()];
            for &v in &part {
                block_in[v] = true;
            }
            block_in[cut] = true;
            let dist = bfs_within(ig, &block_in, cut);
            let mut order = part.clone();
            order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
            order.push(cut);
            let mut local = BTreeMap::new();
            greedy_in_order(ig, &order, &mut local);
            let shift = local[&cut];
            // swap colors so the cut vertex gets 0 in every block
            for (v, c) in local {
                let c = if c == shift { 0 } else if c == 0 { shift } else { c };
                color.insert(v, c);
            }
        }
        debug_assert!(color.values().all(|&c| c < delta));
        return color;
    }

    for &v in comp {
        let nbrs: Vec<usize> = ig.adj[v].iter().copied().filter(|w| inside[*w]).collect();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if ig.adjacent(x, y) || !connected_without(&[x, y]) {
                    continue;
                }
                let mut ins = inside.clone();
                ins[x] = false;
                ins[y] = false;
                let dist = bfs_within(ig, &ins, v);
                let mut order: Vec<usize> = comp.iter().copied().filter(|&u| u != x && u != y && u != v).collect();
                order.sort_by_key(|&u| std::cmp::Reverse(dist[u]));
                let mut color = BTreeMap::from([(x, 0), (y, 0)]);
                order.push(v);
                greedy_in_order(ig, &order, &mut color);
                debug_assert!(color.values().all(|&c| c < delta));
                return color;
            }
        }
    }
    unreachable!("a 2-connected non-complete graph of degree at least 3 has a Brooks triple")
}

fn components_within_mask(ig: &IndexedGraph, inside: &[bool], set: &[usize]) -> Vec<Vec<usize>> {
    let kept: Vec<usize> = set.iter().copied().filter(|&v| inside[v]).collect();
    components_within(ig, &kept)
}

pub const COLORABILITY_LIMIT: usize = 512;

/// Exact k-colorability by backtracking. Returns a proper coloring or `None`
/// after exhausting the search.
pub fn is_k_colorable(g: &SimpleGraph, k: usize) -> Result<Option<Coloring>> {
    extend_precolored(g, k, &BTreeMap::new())
}

/// Like [`is_k_colorable`], with some vertices' colors fixed in advance.
pub fn extend_precolored(g: &SimpleGraph, k: usize, fixed: &BTreeMap<String, usize>) -> Result<Option<Coloring>> {
    let ig = g.indexed();
    if ig.len() > COLORABILITY_LIMIT {
        return Err(CpgError::SizeLimit { size: ig.len(), limit: COLORABILITY_LIMIT });
    }
    if k > 64 {
        return Err(CpgError::SizeLimit { size: k, limit: 64 });
    }
    if ig.is_empty() {
        return Ok(Some(Coloring::default()));
    }
    if k == 0 {
        return Ok(None);
    }
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut solver = Solver {
        adj: &ig.adj,
        full,
        domain: vec![full; ig.len()],
        color: vec![None; ig.len()],
        trail: Vec::new(),
    };
    for (v, &c) in fixed {
        let i = ig.index_of(v).ok_or_else(|| CpgError::UnknownVertex(v.clone()))?;
        if c >= k || solver.domain[i] >> c & 1 == 0 {
            return Ok(None);
        }
        if !solver.assign(i, c) {
            return Ok(None);
        }
    }
    let free: Vec<usize> = (0..ig.len()).filter(|&v| solver.color[v].is_none()).collect();
    if !solver.solve_set(&free) {
        return Ok(None);
    }
    let colors: Vec<usize> = solver.color.iter().map(|c| c.unwrap()).collect();
    Ok(Some(Coloring::from_indexed(&ig, &colors)))
}

enum Trail {
    Assign(usize),
    Remove(usize, usize),
}

struct Solver<'a> {
    adj: &'a [Vec<usize>],
    full: u64,
    domain: Vec<u64>,
    color: Vec<Option<usize>>,
    trail: Vec<Trail>,
}

impl Solver<'_> {
    /// Colors `v` with `c` and prunes neighbors; false on a wipe-out.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = Some(c);
        self.trail.push(Trail::Assign(v));
        let mut ok = true;
        for &w in &self.adj[v] {
            if self.color[w].is_none() && self.domain[w] >> c & 1 == 1 {
                self.domain[w] &= !(1 << c);
                self.trail.push(Trail::Remove(w, c));
                if self.domain[w] == 0 {
                    ok = false;
                }
            } else if self.color[w] == Some(c) {
                ok = false;
            }
        }
        ok
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Trail::Assign(v) => self.color[v] = None,
                Trail::Remove(w, c) => self.domain[w] |= 1 << c,
            }
        }
    }

    fn components(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let mut comp_of: BTreeMap<usize, Option<usize>> = set.iter().map(|&v| (v, None)).collect();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &s in set {
            if comp_of[&s].is_some() {
                continue;
            }
            let id = out.len();
            comp_of.insert(s, Some(id));
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if let Some(slot @ None) = comp_of.get_mut(&w) {
                        *slot = Some(id);
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Colors every vertex of `set`, solving independent pieces separately.
    fn solve_set(&mut self, set: &[usize]) -> bool {
        let mark = self.trail.len();
        let mut comps = self.components(set);
        comps.sort_by_key(Vec::len);
        for comp in comps {
            if !self.solve_component(&comp) {
                self.undo(mark);
                return false;
            }
        }
        true
    }

    fn solve_component(&mut self, comp: &[usize]) -> bool {
        let uncolored_degree = |s: &Self, v: usize| s.adj[v].iter().filter(|&&w| s.color[w].is_none()).count();
        let v = *comp
            .iter()
            .min_by_key(|&&v| (self.domain[v].count_ones(), std::cmp::Reverse(uncolored_degree(self, v)), v))
            .unwrap();
        let mut choices = self.domain[v];
        if comp.iter().all(|&u| self.domain[u] == self.full) {
            // nothing outside constrains this piece, so colors are interchangeable
            choices &= 1;
        }
        let rest: Vec<usize> = comp.iter().copied().filter(|&u| u != v).collect();
        while choices != 0 {
            let c = choices.trailing_zeros() as usize;
            choices &= choices - 1;
            let mark = self.trail.len();
            if self.assign(v, c) && self.solve_set(&rest) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GridPath, GridPoint};

    fn path(v: &str, corners: &[(u32, u32)]) -> GridPath {
        GridPath::new(v, corners.iter().map(|&(r, c)| GridPoint::new(r, c)).collect())
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
    fn verify_basics() {
        let k4 = SimpleGraph::complete(4);
        let four = Coloring { colors: (1..=4).map(|i| (i.to_string(), i - 1)).collect() };
        assert!(verify_coloring(&k4, &four).unwrap());
        let three = Coloring { colors: (1..=4).map(|i| (i.to_string(), i % 3)).collect() };
        assert!(!verify_coloring(&k4, &three).unwrap());
        let partial = Coloring { colors: BTreeMap::from([("1".to_string(), 0)]) };
        assert!(matches!(verify_coloring(&k4, &partial), Err(CpgError::MissingColor(_))));
    }

    #[test]
    fn b0_cross_and_single() {
        let c = color_b0(&cross()).unwrap();
        assert_eq!(c.get("W"), Some(0));
        assert_eq!(c.get("E"), Some(1));
        assert_eq!(c.get("S"), Some(2));
        assert_eq!(c.get("N"), Some(3));
        let single = CpgRepresentation::new(1, 3, vec![path("h", &[(0, 0), (0, 2)])]).unwrap();
        assert_eq!(color_b0(&single).unwrap().get("h"), Some(0));
        let bent = CpgRepresentation::new(2, 2, vec![path("b", &[(0, 0), (0, 1), (1, 1)])]).unwrap();
        assert!(matches!(color_b0(&bent), Err(CpgError::TooManyBends { .. })));
    }

    #[test]
    fn b0_alternates_only_on_contact() {
        let rep = CpgRepresentation::new(
            1,
            8,
            vec![path("a", &[(0, 0), (0, 1)]), path("b", &[(0, 1), (0, 2)]), path("c", &[(0, 4), (0, 5)]), path("d", &[(0, 5), (0, 7)])],
        )
        .unwrap();
        let c = color_b0(&rep).unwrap();
        assert_eq!((c.get("a"), c.get("b"), c.get("c"), c.get("d")), (Some(0), Some(1), Some(0), Some(1)));
    }

    #[test]
    fn six_coloring_k6_and_rejections() {
        let c = color_cpg(&SimpleGraph::complete(6)).unwrap();
        assert!(verify_coloring(&SimpleGraph::complete(6), &c).unwrap());
        assert_eq!(c.color_count(), 6);
        assert!(matches!(color_cpg(&SimpleGraph::complete(7)), Err(CpgError::Hypothesis(_))));
        assert!(matches!(color_cpg(&SimpleGraph::complete(8)), Err(CpgError::Hypothesis(_))));
    }

    fn circulant(n: usize, offsets: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for i in 0..n {
            g.add_vertex(i.to_string());
        }
        for i in 0..n {
            for &d in offsets {
                g.add_edge(&i.to_string(), &((i + d) % n).to_string()).unwrap();
            }
        }
        g
    }

    #[test]
    fn brooks_on_six_regular_graphs() {
        for n in [8, 9, 10, 13] {
            let g = circulant(n, &[1, 2, 3]);
            assert!(g.is_regular(6));
            let c = color_cpg(&g).unwrap();
            assert!(verify_coloring(&g, &c).unwrap());
            assert!(c.color_count() <= 6);
        }
    }

    #[test]
    fn brooks_with_cut_vertex() {
        // two 6-regular circulants joined through a degree-2 vertex: maximum
        // degree 7 with cut vertices, exercising the block branch directly
        let g = {
            let mut g = circulant(8, &[1, 2, 3]);
            for i in 0..8 {
                g.add_vertex(format!("x{i}"));
            }
            for i in 0..8 {
                for &d in &[1usize, 2, 3] {
                    g.add_edge(&format!("x{i}"), &format!("x{}", (i + d) % 8)).unwrap();
                }
            }
            g.add_vertex("c");
            g.add_edge("c", "0").unwrap();
            g.add_edge("c", "x0").unwrap();
            g
        };
        let ig = g.indexed();
        let comp: Vec<usize> = (0..ig.len()).collect();
        let color = brooks(&ig, &comp, 7);
        let colors: Vec<usize> = (0..ig.len()).map(|v| color[&v]).collect();
        assert!(verify_coloring(&g, &Coloring::from_indexed(&ig, &colors)).unwrap());
        assert!(colors.iter().all(|&c| c < 7));
    }

    #[test]
    fn exact_oracle() {
        assert!(is_k_colorable(&SimpleGraph::complete(4), 3).unwrap().is_none());
        let c5 = SimpleGraph::cycle(5);
        let c = is_k_colorable(&c5, 3).unwrap().unwrap();
        assert!(verify_coloring(&c5, &c).unwrap());
        assert!(is_k_colorable(&c5, 2).unwrap().is_none());
        assert!(is_k_colorable(&SimpleGraph::new(), 0).unwrap().is_some());
        let fixed = BTreeMap::from([("1".to_string(), 2), ("2".to_string(), 2)]);
        assert!(extend_precolored(&c5, 3, &fixed).unwrap().is_none());
        let fixed = BTreeMap::from([("1".to_string(), 2), ("3".to_string(), 2)]);
        let c = extend_precolored(&c5, 3, &fixed).unwrap().unwrap();
        assert_eq!(c.get("1"), Some(2));
        assert!(verify_coloring(&c5, &c).unwrap());
    }

    #[test]
    fn oracle_handles_disjoint_obstructions() {
        // many independent odd wheels are not 3-colorable; refusal must stay fast
        let mut g = SimpleGraph::new();
        for w in 0..30 {
            let hub = format!("h{w}");
            g.add_vertex(hub.clone());
            for i in 0..5 {
                g.add_vertex(format!("r{w}_{i}"));
            }
            for i in 0..5 {
                g.add_edge(&hub, &format!("r{w}_{i}")).unwrap();
                g.add_edge(&format!("r{w}_{i}"), &format!("r{w}_{}", (i + 1) % 5)).unwrap();
            }
        }
        assert!(is_k_colorable(&g, 3).unwrap().is_none());
        assert!(is_k_colorable(&g, 4).unwrap().is_some());
    }
}
