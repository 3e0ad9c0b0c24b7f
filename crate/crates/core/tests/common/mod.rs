//! Random instance generators and brute-force oracles shared by the
//! integration tests. The oracles deliberately avoid the library's own
//! geometry helpers.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use cpg::{CpgRepresentation, DrawnEdge, GridPath, GridPoint, RectilinearDrawing, SimpleGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const DIRS: [(i64, i64); 4] = [(0, 1), (0, -1), (1, 0), (-1, 0)];

/// Every lattice point of a corner list, in order.
pub fn points_of(corners: &[GridPoint]) -> Vec<(i64, i64)> {
    let mut out = vec![(corners[0].row as i64, corners[0].col as i64)];
    for w in corners.windows(2) {
        let (mut r, mut c) = (w[0].row as i64, w[0].col as i64);
        let (tr, tc) = (w[1].row as i64, w[1].col as i64);
        while (r, c) != (tr, tc) {
            r += (tr - r).signum();
            c += (tc - c).signum();
            out.push((r, c));
        }
    }
    out
}

/// A random path with at most `max_bends` bends inside a `size` x `size`
/// grid, starting at `start`.
fn random_path(rng: &mut ChaCha8Rng, start: (i64, i64), size: i64, max_bends: usize) -> Option<Vec<GridPoint>> {
    let bends = rng.gen_range(0..=max_bends);
    let mut corners = vec![start];
    let mut last_dir: Option<usize> = None;
    for _ in 0..=bends {
        let choices: Vec<usize> = (0..4)
            .filter(|&d| match last_dir {
                None => true,
                Some(l) => (DIRS[d].0 == 0) != (DIRS[l].0 == 0),
            })
            .collect();
        let d = choices[rng.gen_range(0..choices.len())];
        let len = rng.gen_range(1..=3);
        let (r, c) = *corners.last().unwrap();
        let next = (r + DIRS[d].0 * len, c + DIRS[d].1 * len);
        if next.0 < 0 || next.1 < 0 || next.0 >= size || next.1 >= size {
            return None;
        }
        corners.push(next);
        last_dir = Some(d);
    }
    let pts = points_of(&corners.iter().map(|&(r, c)| GridPoint::new(r as u32, c as u32)).collect::<Vec<_>>());
    let mut seen = HashSet::new();
    if !pts.iter().all(|p| seen.insert(*p)) {
        return None;
    }
    Some(corners.into_iter().map(|(r, c)| GridPoint::new(r as u32, c as u32)).collect())
}

/// A random valid representation: paths are proposed one at a time, often
/// starting on an existing path, and kept when the whole stays valid.
pub fn random_rep(rng: &mut ChaCha8Rng, n: usize, size: u32, max_bends: usize) -> CpgRepresentation {
    let size = size as i64;
    let mut paths: Vec<GridPath> = Vec::new();
    let mut occupied: Vec<(i64, i64)> = Vec::new();
    for _ in 0..n * 40 {
        if paths.len() == n {
            break;
        }
        let start = if !occupied.is_empty() && rng.gen_bool(0.6) {
            occupied[rng.gen_range(0..occupied.len())]
        } else {
            (rng.gen_range(0..size), rng.gen_range(0..size))
        };
        let Some(corners) = random_path(rng, start, size, max_bends) else { continue };
        let mut trial = paths.clone();
        trial.push(GridPath::new(format!("p{}", paths.len()), corners.clone()));
        let rep = CpgRepresentation::new(size as u32, size as u32, trial.clone()).unwrap();
        if rep.validate().ok {
            occupied.extend(points_of(&corners));
            paths = trial;
        }
    }
    CpgRepresentation::new(size as u32, size as u32, paths).unwrap()
}

/// A random valid rectilinear drawing: edges run from a vertex straight to
/// the first vertex in a random direction.
pub fn random_drawing(rng: &mut ChaCha8Rng, vertices: usize, size: i64) -> RectilinearDrawing {
    let mut d = RectilinearDrawing::default();
    while d.vertices.len() < vertices {
        let p = (rng.gen_range(0..size), rng.gen_range(0..size));
        if !d.vertices.values().any(|&q| q == p) {
            d.vertices.insert(format!("v{}", d.vertices.len()), p);
        }
    }
    let names: Vec<String> = d.vertices.keys().cloned().collect();
    for _ in 0..vertices * 4 {
        let u = &names[rng.gen_range(0..names.len())];
        let (dx, dy) = DIRS[rng.gen_range(0..4)];
        let mut p = d.vertices[u];
        let hit = loop {
            p = (p.0 + dx, p.1 + dy);
            if p.0 < 0 || p.1 < 0 || p.0 >= size || p.1 >= size {
                break None;
            }
            if let Some((v, _)) = d.vertices.iter().find(|(_, &q)| q == p) {
                break Some(v.clone());
            }
        };
        let Some(v) = hit else { continue };
        let mut trial = d.clone();
        trial.edges.push(DrawnEdge { u: u.clone(), v: v.clone(), polyline: vec![d.vertices[u], p], label: None });
        if trial.validate().is_ok() {
            d = trial;
        }
    }
    d
}

/// Contact graph by brute force over expanded point sets.
pub fn oracle_contact_graph(rep: &CpgRepresentation) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for p in &rep.paths {
        g.add_vertex(p.vertex.clone());
    }
    for (u, v, _) in oracle_touches(rep) {
        g.add_edge(&u, &v).unwrap();
    }
    g
}

/// Pairs of paths sharing at least one point, with the number of shared points.
pub fn oracle_touches(rep: &CpgRepresentation) -> Vec<(String, String, usize)> {
    let sets: Vec<BTreeSet<(i64, i64)>> = rep.paths.iter().map(|p| points_of(&p.corners).into_iter().collect()).collect();
    let mut out = Vec::new();
    for i in 0..rep.paths.len() {
        for j in i + 1..rep.paths.len() {
            let shared = sets[i].intersection(&sets[j]).count();
            if shared > 0 {
                out.push((rep.paths[i].vertex.clone(), rep.paths[j].vertex.clone(), shared));
            }
        }
    }
    out
}

/// Doubled endpoint weights: twice the number of paths with the endpoint in
/// their interior plus the number of other paths ending there.
pub fn oracle_weights(rep: &CpgRepresentation) -> BTreeMap<String, [u32; 2]> {
    let pts: Vec<Vec<(i64, i64)>> = rep.paths.iter().map(|p| points_of(&p.corners)).collect();
    let mut out = BTreeMap::new();
    for (i, p) in rep.paths.iter().enumerate() {
        let ends = [pts[i][0], pts[i][pts[i].len() - 1]];
        let mut w = [0u32; 2];
        for (k, q) in ends.iter().enumerate() {
            for (j, other) in pts.iter().enumerate() {
                if j == i {
                    continue;
                }
                let last = other.len() - 1;
                if other[1..last].contains(q) {
                    w[k] += 2;
                }
                if other[0] == *q || other[last] == *q {
                    w[k] += 1;
                }
            }
        }
        out.insert(p.vertex.clone(), w);
    }
    out
}

/// K3,3 minor test by exhaustive edge contraction: a graph has the minor iff
/// some sequence of contractions yields a graph with K3,3 as a subgraph.
/// Independent of the library's partition enumeration; fine up to 8 vertices.
pub fn oracle_k33_minor(g: &SimpleGraph) -> bool {
    let ig = g.indexed();
    let n = ig.len();
    let adj: Vec<u32> = (0..n).map(|v| ig.adj[v].iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut seen = HashSet::new();
    let mut stack = vec![adj];
    while let Some(a) = stack.pop() {
        if !seen.insert(a.clone()) {
            continue;
        }
        if has_k33_subgraph(&a) {
            return true;
        }
        for u in 0..a.len() {
            for v in u + 1..a.len() {
                if a[u] >> v & 1 == 1 {
                    stack.push(contract(&a, u, v));
                }
            }
        }
    }
    false
}

fn contract(a: &[u32], u: usize, v: usize) -> Vec<u32> {
    // Merge v into u (u < v), drop v and shift higher indices down.
    let squeeze = |m: u32| (m & ((1 << v) - 1)) | ((m >> (v + 1)) << v);
    (0..a.len())
        .filter(|&w| w != v)
        .map(|w| {
            let mut m = a[w];
            if w == u {
                m |= a[v];
            } else if m >> v & 1 == 1 {
                m |= 1 << u;
            }
            let idx = if w < v { w } else { w - 1 };
            squeeze(m & !(1 << v)) & !(1 << idx)
        })
        .collect()
}

fn has_k33_subgraph(a: &[u32]) -> bool {
    let n = a.len();
    if n < 6 {
        return false;
    }
    for six in 0u32..1 << n {
        if six.count_ones() != 6 {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&i| six >> i & 1 == 1).collect();
        // Fix vs[0] on the left side to skip mirrored splits.
        for rest in 0u32..1 << 5 {
            if rest.count_ones() != 2 {
                continue;
            }
            let left: Vec<usize> = std::iter::once(vs[0]).chain((0..5).filter(|&i| rest >> i & 1 == 1).map(|i| vs[i + 1])).collect();
            let right: Vec<usize> = (0..5).filter(|&i| rest >> i & 1 == 0).map(|i| vs[i + 1]).collect();
            if left.iter().all(|&l| right.iter().all(|&r| a[l] >> r & 1 == 1)) {
                return true;
            }
        }
    }
    false
}

/// Properness check written out edge by edge.
pub fn proper(g: &SimpleGraph, colors: &BTreeMap<String, usize>) -> bool {
    g.vertices().all(|v| colors.contains_key(v)) && g.edges().all(|(u, v)| colors[u] != colors[v])
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let mut g = SimpleGraph::new();
    for i in 0..n {
        g.add_vertex(i.to_string());
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(&i.to_string(), &j.to_string()).unwrap();
            }
        }
    }
    g
}
