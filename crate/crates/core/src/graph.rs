//! Simple undirected labeled graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{CpgError, Result};

/// Undirected simple graph over string labels. Edges are stored with the
/// lexicographically smaller endpoint first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct SimpleGraph {
    vertices: BTreeSet<String>,
    edges: BTreeSet<(String, String)>,
}

#[derive(Deserialize)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl TryFrom<RawGraph> for SimpleGraph {
    type Error = CpgError;

    fn try_from(raw: RawGraph) -> Result<Self> {
        let mut g = SimpleGraph::new();
        for v in raw.vertices {
            g.add_vertex(v);
        }
        for (u, v) in raw.edges {
            g.add_edge(&u, &v)?;
        }
        Ok(g)
    }
}

fn ordered(u: &str, v: &str) -> (String, String) {
    if u <= v {
        (u.to_string(), v.to_string())
    } else {
        (v.to_string(), u.to_string())
    }
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) {
        self.vertices.insert(v.into());
    }

    /// Adds `uv`; both endpoints must already be vertices. Re-adding is a no-op.
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        if u == v {
            return Err(CpgError::InvalidGraph(format!("self-loop at `{u}`")));
        }
        for w in [u, v] {
            if !self.vertices.contains(w) {
                return Err(CpgError::InvalidGraph(format!("edge endpoint `{w}` is not a vertex")));
            }
        }
        self.edges.insert(ordered(u, v));
        Ok(())
    }

    /// Builds a graph from an edge list, adding endpoints as vertices.
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Self::new();
        for v in vertices {
            g.add_vertex(v.as_ref());
        }
        for (u, v) in edges {
            g.add_vertex(u.as_ref());
            g.add_vertex(v.as_ref());
            g.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(g)
    }

    /// Complete graph on labels `1..=n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::new();
        for i in 1..=n {
            g.add_vertex(i.to_string());
        }
        for i in 1..=n {
            for j in i + 1..=n {
                g.add_edge(&i.to_string(), &j.to_string()).unwrap();
            }
        }
        g
    }

    /// Cycle `1-2-...-n-1`.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new();
        for i in 1..=n {
            g.add_vertex(i.to_string());
        }
        for i in 1..=n {
            let j = i % n + 1;
            if i != j {
                g.add_edge(&i.to_string(), &j.to_string()).unwrap();
            }
        }
        g
    }

    /// Path `1-2-...-n` (n vertices).
    pub fn path(n: usize) -> Self {
        let mut g = Self::new();
        for i in 1..=n {
            g.add_vertex(i.to_string());
        }
        for i in 1..n {
            g.add_edge(&i.to_string(), &(i + 1).to_string()).unwrap();
        }
        g
    }

    /// Complete bipartite graph with sides `a1..am` and `b1..bn`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let mut g = Self::new();
        for i in 1..=m {
            g.add_vertex(format!("a{i}"));
        }
        for j in 1..=n {
            g.add_vertex(format!("b{j}"));
        }
        for i in 1..=m {
            for j in 1..=n {
                g.add_edge(&format!("a{i}"), &format!("b{j}")).unwrap();
            }
        }
        g
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(u, v)| (u.as_str(), v.as_str()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        self.edges.contains(&ordered(u, v))
    }

    pub fn neighbors(&self, v: &str) -> BTreeSet<&str> {
        self.edges
            .iter()
            .filter_map(|(a, b)| {
                if a == v {
                    Some(b.as_str())
                } else if b == v {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degrees(&self) -> BTreeMap<&str, usize> {
        let mut d: BTreeMap<&str, usize> = self.vertices().map(|v| (v, 0)).collect();
        for (u, v) in self.edges() {
            *d.get_mut(u).unwrap() += 1;
            *d.get_mut(v).unwrap() += 1;
        }
        d
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == v || b == v).count()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().values().all(|&d| d == k)
    }

    pub fn induced_subgraph<'a>(&self, keep: impl IntoIterator<Item = &'a str>) -> SimpleGraph {
        let keep: BTreeSet<&str> = keep.into_iter().filter(|v| self.contains(v)).collect();
        let mut g = SimpleGraph::new();
        for v in &keep {
            g.add_vertex(*v);
        }
        for (u, v) in self.edges() {
            if keep.contains(u) && keep.contains(v) {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Renames vertices through `map`; unmapped labels are kept.
    pub fn relabeled(&self, map: &HashMap<String, String>) -> Result<SimpleGraph> {
        let name = |v: &str| map.get(v).cloned().unwrap_or_else(|| v.to_string());
        let mut g = SimpleGraph::new();
        for v in self.vertices() {
            g.add_vertex(name(v));
        }
        if g.vertex_count() != self.vertex_count() {
            return Err(CpgError::InvalidGraph("relabeling is not injective".into()));
        }
        for (u, v) in self.edges() {
            g.add_edge(&name(u), &name(v))?;
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        self.indexed().components().len() <= 1
    }

    pub fn indexed(&self) -> IndexedGraph {
        IndexedGraph::from_graph(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }
}

/// Dense index view of a [`SimpleGraph`]; vertex `i` is the i-th label in sorted order.
#[derive(Debug, Clone)]
pub struct IndexedGraph {
    pub labels: Vec<String>,
    pub adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl IndexedGraph {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        let labels: Vec<String> = g.vertices().map(str::to_string).collect();
        let index: HashMap<String, usize> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut adj = vec![Vec::new(); labels.len()];
        for (u, v) in g.edges() {
            let (a, b) = (index[u], index[v]);
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { labels, adj, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Adjacency as bit rows; only valid for at most 64 vertices.
    pub fn bit_rows(&self) -> Vec<u64> {
        assert!(self.len() <= 64, "bit rows need at most 64 vertices");
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &j| m | (1 << j)))
            .collect()
    }

    /// Connected components, each sorted, in order of smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
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
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_families() {
        assert_eq!(SimpleGraph::complete(5).edge_count(), 10);
        assert_eq!(SimpleGraph::cycle(5).edge_count(), 5);
        assert!(SimpleGraph::cycle(5).is_regular(2));
        assert_eq!(SimpleGraph::complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(SimpleGraph::path(4).edge_count(), 3);
    }

    #[test]
    fn rejects_loops_and_dangling_edges() {
        let mut g = SimpleGraph::new();
        g.add_vertex("a");
        assert!(g.add_edge("a", "a").is_err());
        assert!(g.add_edge("a", "b").is_err());
        let bad = r#"{"vertices":["a"],"edges":[["a","b"]]}"#;
        assert!(serde_json::from_str::<SimpleGraph>(bad).is_err());
    }

    #[test]
    fn edges_are_unordered_and_deduplicated() {
        let g = SimpleGraph::from_edges(&["a", "b"], &[("b", "a"), ("a", "b")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge("a", "b") && g.has_edge("b", "a"));
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#);
    }

    #[test]
    fn components_and_induced() {
        let g = SimpleGraph::from_edges(&["x"], &[("a", "b"), ("c", "d"), ("d", "e")]).unwrap();
        assert_eq!(g.indexed().components().len(), 3);
        assert!(!g.is_connected());
        let h = g.induced_subgraph(["c", "d", "e", "zz"]);
        assert_eq!((h.vertex_count(), h.edge_count()), (3, 2));
    }
}
