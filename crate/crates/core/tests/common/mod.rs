//! Brute-force oracles shared by the integration tests. None of them use the
//! library's component machinery: they work on raw edge bitmasks.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use rigidcay::graph::SimpleGraph;

/// Every simple cycle of `graph`, as a bitmask over edge indices.
pub fn cycle_masks(graph: &SimpleGraph) -> Vec<u64> {
    assert!(graph.edge_count() <= 64);
    let adj = graph.adjacency();
    let mut found = HashSet::new();
    for start in 0..graph.vertex_count() {
        let mut on_path = vec![false; graph.vertex_count()];
        on_path[start] = true;
        extend(graph, &adj, start, start, 0, 0, &mut on_path, &mut found);
    }
    found.into_iter().collect()
}

#[allow(clippy::too_many_arguments)]
fn extend(
    graph: &SimpleGraph,
    adj: &[Vec<usize>],
    start: usize,
    at: usize,
    mask: u64,
    len: usize,
    on_path: &mut [bool],
    found: &mut HashSet<u64>,
) {
    for &next in &adj[at] {
        let bit = 1u64 << graph.edge_index(at, next).unwrap();
        if next == start && len >= 2 {
            found.insert(mask | bit);
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            extend(graph, adj, start, next, mask | bit, len + 1, on_path, found);
            on_path[next] = false;
        }
    }
}

fn all_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Surjective, and no cycle has exactly one edge of either color.
pub fn nac_by_cycles(cycles: &[u64], m: usize, blue: u64) -> bool {
    if blue == 0 || blue == all_mask(m) {
        return false;
    }
    cycles.iter().all(|&c| {
        let len = c.count_ones();
        let k = (c & blue).count_ones();
        k != 1 && k != len - 1
    })
}

fn reach(graph: &SimpleGraph, from: usize, blue: u64, want_blue: bool) -> Vec<bool> {
    let mut seen = vec![false; graph.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for (i, &(u, v)) in graph.edges().iter().enumerate() {
            if (blue >> i & 1 == 1) != want_blue {
                continue;
            }
            let y = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Surjective, and no two vertices joined by both a red path and a blue path.
pub fn good_by_paths(graph: &SimpleGraph, blue: u64) -> bool {
    let m = graph.edge_count();
    if blue == 0 || blue == all_mask(m) {
        return false;
    }
    (0..graph.vertex_count()).all(|u| {
        let red = reach(graph, u, blue, false);
        let bl = reach(graph, u, blue, true);
        (0..graph.vertex_count()).all(|v| v == u || !(red[v] && bl[v]))
    })
}

/// `(nac, good)` counts over all `2^|E|` colorings.
pub fn unpruned_counts(graph: &SimpleGraph) -> (u64, u64) {
    let m = graph.edge_count();
    let cycles = cycle_masks(graph);
    let mut counts = (0, 0);
    for blue in 0..(1u64 << m) {
        if nac_by_cycles(&cycles, m, blue) {
            counts.0 += 1;
            if good_by_paths(graph, blue) {
                counts.1 += 1;
            }
        }
    }
    counts
}

/// Edge mask induced by each vertex subset.
fn induced_masks(graph: &SimpleGraph) -> Vec<u64> {
    let n = graph.vertex_count();
    (0..1usize << n)
        .map(|vs| {
            graph
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, &(u, v))| vs >> u & 1 == 1 && vs >> v & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

fn sparse(induced: &[u64], edges: u64) -> bool {
    induced.iter().enumerate().all(|(vs, &mask)| {
        let k = vs.count_ones() as i64;
        k < 2 || (edges & mask).count_ones() as i64 <= 2 * k - 3
    })
}

/// Size of a largest (2,3)-sparse edge subset, by trying every subset.
pub fn max_sparse_exhaustive(graph: &SimpleGraph) -> usize {
    let m = graph.edge_count();
    assert!(m <= 20);
    let induced = induced_masks(graph);
    let cap = (2 * graph.vertex_count()).saturating_sub(3).min(m);
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); m + 1];
    for f in 0..(1u64 << m) {
        by_size[f.count_ones() as usize].push(f);
    }
    (0..=cap)
        .rev()
        .find(|&size| by_size[size].iter().any(|&f| sparse(&induced, f)))
        .unwrap_or(0)
}

/// Same quantity via the matroid greedy algorithm with a brute-force
/// independence test over all vertex subsets.
pub fn max_sparse_greedy(graph: &SimpleGraph) -> usize {
    let induced = induced_masks(graph);
    let mut chosen = 0u64;
    for i in 0..graph.edge_count() {
        if sparse(&induced, chosen | 1 << i) {
            chosen |= 1 << i;
        }
    }
    chosen.count_ones() as usize
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut seen = 1u32;
    loop {
        let before = seen;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 && (seen >> u & 1 == 1 || seen >> v & 1 == 1) {
                seen |= 1 << u | 1 << v;
            }
        }
        if seen == before {
            return seen.count_ones() as usize == n;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of every isomorphism class of connected graphs on
/// `2..=max_n` vertices (canonical form: smallest relabelled edge mask).
pub fn connected_graph_classes(max_n: usize) -> Vec<SimpleGraph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
        let perms: Vec<Vec<usize>> = permutations(n)
            .into_iter()
            .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
            .collect();
        let mut classes = HashSet::new();
        for mask in 1..(1u64 << pairs.len()) {
            if !connected_mask(n, &pairs, mask) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|img| {
                    img.iter()
                        .enumerate()
                        .filter(|&(i, _)| mask >> i & 1 == 1)
                        .fold(0u64, |acc, (_, &j)| acc | 1 << j)
                })
                .min()
                .unwrap();
            if classes.insert(canon) {
                let edges = pairs.iter().enumerate().filter(|&(i, _)| canon >> i & 1 == 1).map(|(_, &e)| e);
                out.push(SimpleGraph::new(n, edges).unwrap());
            }
        }
    }
    out
}

pub fn random_connected_graph(rng: &mut impl Rng, max_n: usize) -> SimpleGraph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p: f64 = rng.gen_range(0.25..0.9);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = SimpleGraph::new(n, edges).unwrap();
        if g.edge_count() > 0 && g.is_connected() {
            return g;
        }
    }
}
