//! Checkable certificates for the structural results on contact graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::contact::{ContactIndex, PointClass, PointTag};
use crate::error::{CpgError, Result};
use crate::graph::SimpleGraph;
use crate::grid::CpgRepresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    /// 6-regular or some vertex of degree at most 5.
    DegreeLemma,
    /// A 1-bend representation has a vertex of degree at most 5.
    B1Degree,
    K7Free,
    /// Planar graphs with a contact representation have few vertices of degree at most 3.
    MaxPlanarDeg3Bound,
    /// No type I or type II.a point, so the contact graph is planar.
    TriangleFreeHypothesis,
    K33Minor,
    /// Every 4-regular graph on 7 vertices has a K3,3 minor.
    FourRegularSevenK33,
    /// Color forcing inside the reduction gadgets.
    GadgetClaims,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Six branch sets, three per side, with every left/right pair adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K33Model {
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    SixRegular,
    LowDegreeVertex { vertex: String, degree: usize },
    /// Every degree is at least `min_degree` and `vertex` exceeds 6.
    HighDegrees { min_degree: usize, vertex: String, degree: usize },
    EmptyGraph,
    Clique { vertices: Vec<String> },
    LowDegreeCount { vertices: Vec<String>, count: usize, bound: i64, faces: i64 },
    Point { class: PointClass },
    PointsChecked { count: usize },
    Minor { model: K33Model },
    NoMinor,
    Enumeration { labeled_graphs: usize, classes: usize, without_minor: Vec<SimpleGraph> },
    Gadget { checks: Vec<(String, bool)>, h_colorings: u64, h_prime_colorings: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: Claim,
    pub verdict: Verdict,
    pub witness: Witness,
}

impl Certificate {
    pub fn new(claim: Claim, pass: bool, witness: Witness) -> Self {
        let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        Self { claim, verdict, witness }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn low_degree_vertex(g: &SimpleGraph, limit: usize) -> Option<(String, usize)> {
    g.degrees()
        .into_iter()
        .filter(|&(_, d)| d <= limit)
        .min_by_key(|&(v, d)| (d, v))
        .map(|(v, d)| (v.to_string(), d))
}

pub fn degree_certificate(g: &SimpleGraph) -> Certificate {
    if let Some((vertex, degree)) = low_degree_vertex(g, 5) {
        return Certificate::new(Claim::DegreeLemma, true, Witness::LowDegreeVertex { vertex, degree });
    }
    if g.vertex_count() == 0 {
        return Certificate::new(Claim::DegreeLemma, true, Witness::EmptyGraph);
    }
    if g.is_regular(6) {
        return Certificate::new(Claim::DegreeLemma, true, Witness::SixRegular);
    }
    let degrees = g.degrees();
    let min_degree = *degrees.values().min().unwrap();
    let (vertex, degree) = degrees.iter().find(|(_, &d)| d > 6).map(|(v, &d)| (v.to_string(), d)).unwrap();
    Certificate::new(Claim::DegreeLemma, false, Witness::HighDegrees { min_degree, vertex, degree })
}

/// Minimum-degree check for the extraction of a representation with at most one bend per path.
pub fn b1_degree_certificate(rep: &CpgRepresentation) -> Result<Certificate> {
    if rep.max_bends() > 1 {
        return Err(CpgError::TooManyBends { bends: rep.max_bends(), allowed: 1 });
    }
    let g = ContactIndex::new(rep).graph();
    if g.vertex_count() == 0 {
        return Ok(Certificate::new(Claim::B1Degree, true, Witness::EmptyGraph));
    }
    Ok(match low_degree_vertex(&g, 5) {
        Some((vertex, degree)) => Certificate::new(Claim::B1Degree, true, Witness::LowDegreeVertex { vertex, degree }),
        None => {
            let (vertex, degree) = g.degrees().into_iter().min_by_key(|&(v, d)| (d, v)).map(|(v, d)| (v.to_string(), d)).unwrap();
            Certificate::new(Claim::B1Degree, false, Witness::LowDegreeVertex { vertex, degree })
        }
    })
}

pub const CLIQUE_LIMIT: usize = 64;

/// A maximum clique, sorted by label.
pub fn maximum_clique(g: &SimpleGraph) -> Result<Vec<String>> {
    let ig = g.indexed();
    if ig.len() > CLIQUE_LIMIT {
        return Err(CpgError::SizeLimit { size: ig.len(), limit: CLIQUE_LIMIT });
    }
    let rows = ig.bit_rows();
    let all = if ig.len() == 64 { u64::MAX } else { (1u64 << ig.len()) - 1 };
    let mut best = 0u64;
    if all != 0 {
        expand_clique(&rows, 0, all, &mut best);
    }
    Ok(bits(best).map(|i| ig.labels[i].clone()).collect())
}

pub fn clique_number(g: &SimpleGraph) -> Result<usize> {
    maximum_clique(g).map(|c| c.len())
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Greedy coloring of `cand`: vertices in nondecreasing color order with their color numbers.
fn color_sort(rows: &[u64], cand: u64) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v) & !rows[v];
            uncolored &= !(1u64 << v);
            out.push((v, color));
        }
    }
    out
}

fn expand_clique(rows: &[u64], cur: u64, mut cand: u64, best: &mut u64) {
    let order = color_sort(rows, cand);
    for &(v, color) in order.iter().rev() {
        if cur.count_ones() + color <= best.count_ones() {
            return;
        }
        let next = cur | (1u64 << v);
        let sub = cand & rows[v];
        if sub == 0 {
            if next.count_ones() > best.count_ones() {
                *best = next;
            }
        } else {
            expand_clique(rows, next, sub, best);
        }
        cand &= !(1u64 << v);
    }
}

pub fn k7_check(g: &SimpleGraph) -> Result<Certificate> {
    let clique = maximum_clique(g)?;
    Ok(Certificate::new(Claim::K7Free, clique.len() <= 6, Witness::Clique { vertices: clique }))
}

/// Counts vertices of degree at most 3 against the face bound for a
/// connected planar graph (planarity is the caller's assertion).
pub fn maxplanar_deg3_bound(g: &SimpleGraph, faces: Option<i64>, maximally_planar: bool) -> Result<Certificate> {
    if !g.is_connected() {
        return Err(CpgError::Precondition("the degree-3 bound needs a connected graph".into()));
    }
    let (v, e) = (g.vertex_count() as i64, g.edge_count() as i64);
    if maximally_planar && e != 3 * v - 6 {
        return Err(CpgError::Inconsistent(format!("maximally planar flag set but |E| = {e} while 3|V|-6 = {}", 3 * v - 6)));
    }
    let faces = faces.unwrap_or(e - v + 2);
    let bound = if maximally_planar { 12 } else { 4 * v - 2 * faces + 4 };
    let vertices: Vec<String> = g.degrees().into_iter().filter(|&(_, d)| d <= 3).map(|(v, _)| v.to_string()).collect();
    let count = vertices.len();
    Ok(Certificate::new(
        Claim::MaxPlanarDeg3Bound,
        count as i64 <= bound,
        Witness::LowDegreeCount { vertices, count, bound, faces },
    ))
}

pub fn trianglefree_hypothesis(rep: &CpgRepresentation) -> Certificate {
    let index = ContactIndex::new(rep);
    let mut count = 0;
    for p in index.occupied_points() {
        let class = index.classify(p);
        if matches!(class.tag, PointTag::TypeI | PointTag::TypeIIa) {
            return Certificate::new(Claim::TriangleFreeHypothesis, false, Witness::Point { class });
        }
        count += 1;
    }
    Certificate::new(Claim::TriangleFreeHypothesis, true, Witness::PointsChecked { count })
}

pub const MINOR_LIMIT: usize = 12;

/// Searches for a K3,3 minor by partitioning each component into six
/// connected branch sets. In a connected graph any minor model extends to
/// one whose branch sets cover every vertex, so discards need not be tried.
pub fn has_k33_minor(g: &SimpleGraph) -> Result<Option<K33Model>> {
    let ig = g.indexed();
    if ig.len() > MINOR_LIMIT {
        return Err(CpgError::SizeLimit { size: ig.len(), limit: MINOR_LIMIT });
    }
    for comp in ig.components() {
        if comp.len() < 6 {
            continue;
        }
        let local: Vec<u16> = comp
            .iter()
            .map(|&v| {
                ig.adj[v]
                    .iter()
                    .map(|w| comp.binary_search(w).unwrap())
                    .fold(0u16, |m, j| m | (1 << j))
            })
            .collect();
        let mut search = PartitionSearch { adj: &local, blocks: [0; 6], found: None };
        search.assign(0, 0);
        if let Some((left, right)) = search.found {
            let names = |mask: u16| -> Vec<String> {
                let mut v: Vec<String> = (0..comp.len()).filter(|i| mask >> i & 1 == 1).map(|i| ig.labels[comp[i]].clone()).collect();
                v.sort();
                v
            };
            let model = K33Model {
                left: left.iter().map(|&m| names(m)).collect(),
                right: right.iter().map(|&m| names(m)).collect(),
            };
            debug_assert!(verify_k33_model(g, &model));
            return Ok(Some(model));
        }
    }
    Ok(None)
}

pub fn k33_certificate(g: &SimpleGraph) -> Result<Certificate> {
    Ok(match has_k33_minor(g)? {
        Some(model) => Certificate::new(Claim::K33Minor, true, Witness::Minor { model }),
        None => Certificate::new(Claim::K33Minor, false, Witness::NoMinor),
    })
}

struct PartitionSearch<'a> {
    adj: &'a [u16],
    blocks: [u16; 6],
    found: Option<([u16; 3], [u16; 3])>,
}

impl PartitionSearch<'_> {
    /// Restricted-growth assignment of vertex `v` given `used` open blocks.
    fn assign(&mut self, v: usize, used: usize) {
        if self.found.is_some() {
            return;
        }
        let n = self.adj.len();
        if n - v < 6 - used {
            return;
        }
        if v == n {
            self.check();
            return;
        }
        for b in 0..used {
            self.blocks[b] |= 1 << v;
            self.assign(v + 1, used);
            self.blocks[b] &= !(1 << v);
        }
        if used < 6 {
            self.blocks[used] = 1 << v;
            self.assign(v + 1, used + 1);
            self.blocks[used] = 0;
        }
    }

    fn check(&mut self) {
        if !self.blocks.iter().all(|&b| connected_mask(self.adj, b)) {
            return;
        }
        let reach: Vec<u16> = self
            .blocks
            .iter()
            .map(|&b| (0..self.adj.len()).filter(|i| b >> i & 1 == 1).fold(0u16, |m, i| m | self.adj[i]))
            .collect();
        let touch = |i: usize, j: usize| reach[i] & self.blocks[j] != 0;
        for x in 1..6 {
            for y in x + 1..6 {
                let left = [0, x, y];
                let right: Vec<usize> = (1..6).filter(|&z| z != x && z != y).collect();
                if left.iter().all(|&l| right.iter().all(|&r| touch(l, r))) {
                    self.found = Some((left.map(|i| self.blocks[i]), [right[0], right[1], right[2]].map(|i| self.blocks[i])));
                    return;
                }
            }
        }
    }
}

fn connected_mask(adj: &[u16], mask: u16) -> bool {
    if mask == 0 {
        return false;
    }
    let mut seen = mask & mask.wrapping_neg();
    loop {
        let grown = (0..adj.len()).filter(|i| seen >> i & 1 == 1).fold(seen, |m, i| m | (adj[i] & mask));
        if grown == seen {
            return seen == mask;
        }
        seen = grown;
    }
}

/// Checks a K3,3 model against `g` without trusting how it was found.
pub fn verify_k33_model(g: &SimpleGraph, model: &K33Model) -> bool {
    if model.left.len() != 3 || model.right.len() != 3 {
        return false;
    }
    let sets: Vec<&Vec<String>> = model.left.iter().chain(model.right.iter()).collect();
    let mut seen = BTreeSet::new();
    for set in &sets {
        if set.is_empty() {
            return false;
        }
        for v in set.iter() {
            if !g.contains(v) || !seen.insert(v.as_str()) {
                return false;
            }
        }
        if !g.induced_subgraph(set.iter().map(String::as_str)).is_connected() {
            return false;
        }
    }
    model.left.iter().all(|l| {
        model
            .right
            .iter()
            .all(|r| l.iter().any(|a| r.iter().any(|b| g.has_edge(a, b))))
    })
}

/// Enumerates every 4-regular graph on 7 labeled vertices, groups them into
/// isomorphism classes by canonical form and searches each class for a K3,3 minor.
pub fn check_4regular_7_lemma() -> Certificate {
    const N: usize = 7;
    let pairs: Vec<(usize, usize)> = (0..N).flat_map(|i| (i + 1..N).map(move |j| (i, j))).collect();
    let mut labeled = 0;
    let mut classes: BTreeSet<u32> = BTreeSet::new();
    let perms = permutations(N);
    for mask in 0u32..(1 << pairs.len()) {
        if mask.count_ones() != 14 {
            continue;
        }
        let mut deg = [0u8; N];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                deg[i] += 1;
                deg[j] += 1;
            }
        }
        if deg.iter().any(|&d| d != 4) {
            continue;
        }
        labeled += 1;
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0u32, |m, (_, &(i, j))| {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    m | 1 << pair_index(N, a, b)
                })
            })
            .min()
            .unwrap();
        classes.insert(canon);
    }
    let mut without_minor = Vec::new();
    for &canon in &classes {
        let mut g = SimpleGraph::new();
        for i in 1..=N {
            g.add_vertex(i.to_string());
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if canon >> k & 1 == 1 {
                g.add_edge(&(i + 1).to_string(), &(j + 1).to_string()).unwrap();
            }
        }
        if has_k33_minor(&g).expect("7 vertices is within the limit").is_none() {
            without_minor.push(g);
        }
    }
    Certificate::new(
        Claim::FourRegularSevenK33,
        without_minor.is_empty(),
        Witness::Enumeration { labeled_graphs: labeled, classes: classes.len(), without_minor },
    )
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // position of (i, j), i < j, in row-major upper-triangle order
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
