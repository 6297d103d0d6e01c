//! Exhaustive backtracking search over red/blue edge colorings.
//!
//! The first edge in search order is fixed red; every NAC-coloring pairs with
//! its color swap, so counts are doubled back at the end. Two union-find
//! structures (red and blue subgraphs) grow with the assignment and are
//! rolled back on backtrack. A partial assignment is abandoned as soon as an
//! assigned edge lies inside a component of the opposite color, or an
//! unassigned edge already lies inside both a red and a blue component.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::union_find::UnionFind;

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_MAX_EXHAUSTIVE_EDGES: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    FirstAny,
    FirstGood,
    CountAll,
    EnumerateAll,
}

impl SearchMode {
    fn is_exhaustive(self) -> bool {
        matches!(self, SearchMode::CountAll | SearchMode::EnumerateAll)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Maximum number of edge assignments tried.
    pub budget: u64,
    pub max_exhaustive_edges: usize,
    pub workers: usize,
    /// Depth at which the assignment tree is split between workers.
    pub split_depth: usize,
}

impl SearchOptions {
    pub fn new(mode: SearchMode) -> Self {
        SearchOptions {
            mode,
            budget: DEFAULT_BUDGET,
            max_exhaustive_edges: DEFAULT_MAX_EXHAUSTIVE_EDGES,
            workers: 1,
            split_depth: 10,
        }
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    /// Found colorings: the witness for the first-* modes, every NAC-coloring
    /// (each followed by its swap) for enumerate-all, nothing for count-all.
    #[serde(skip)]
    pub colorings: Vec<EdgeColoring>,
    /// Number of NAC-colorings seen, swap partners included.
    pub nac_count: u64,
    /// Number of good NAC-colorings seen, swap partners included.
    pub good_count: u64,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
    pub nodes: u64,
}

impl SearchOutcome {
    pub fn is_partial(&self) -> bool {
        !self.complete
    }

    pub fn first(&self) -> Option<&EdgeColoring> {
        self.colorings.first()
    }
}

/// Search order: start from edge 0, then repeatedly take the edge with the
/// most endpoints already touched (lowest index on ties), so cycles close early.
fn search_order(graph: &SimpleGraph) -> Vec<usize> {
    let m = graph.edge_count();
    let mut touched = vec![false; graph.vertex_count()];
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let (u, v) = graph.edge(i);
                (touched[u] as u8 + touched[v] as u8, std::cmp::Reverse(i))
            })
            .expect("an unplaced edge remains");
        placed[next] = true;
        let (u, v) = graph.edge(next);
        touched[u] = true;
        touched[v] = true;
        order.push(next);
    }
    order
}

struct Shared {
    mode: SearchMode,
    budget: u64,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
}

impl Shared {
    /// Counts one node; false once the budget is spent or a first-* mode is done.
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

#[derive(Default)]
struct Found {
    colorings: Vec<EdgeColoring>,
    nac: u64,
    good: u64,
}

struct Worker<'a> {
    shared: &'a Shared,
    vertex_count: usize,
    /// Edges in search order.
    edges: Vec<Edge>,
    order: &'a [usize],
    red: UnionFind,
    blue: UnionFind,
    assigned: Vec<Option<Color>>,
    found: Found,
    pair_scratch: HashSet<(usize, usize)>,
}

impl<'a> Worker<'a> {
    fn new(shared: &'a Shared, graph: &SimpleGraph, order: &'a [usize]) -> Self {
        Worker {
            shared,
            vertex_count: graph.vertex_count(),
            edges: order.iter().map(|&i| graph.edge(i)).collect(),
            order,
            red: UnionFind::new(graph.vertex_count()),
            blue: UnionFind::new(graph.vertex_count()),
            assigned: vec![None; order.len()],
            found: Found::default(),
            pair_scratch: HashSet::new(),
        }
    }

    fn assign(&mut self, k: usize, color: Color) {
        let (u, v) = self.edges[k];
        self.assigned[k] = Some(color);
        match color {
            Color::Red => self.red.union(u, v),
            Color::Blue => self.blue.union(u, v),
        };
    }

    fn consistent(&mut self) -> bool {
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            let ok = match self.assigned[k] {
                Some(Color::Blue) => !self.red.same(u, v),
                Some(Color::Red) => !self.blue.same(u, v),
                None => !(self.red.same(u, v) && self.blue.same(u, v)),
            };
            if !ok {
                return false;
            }
        }
        if self.shared.mode == SearchMode::FirstGood {
            // components only grow, so a shared (red, blue) pair never goes away
            self.pair_scratch.clear();
            for v in 0..self.vertex_count {
                if !self.pair_scratch.insert((self.red.find(v), self.blue.find(v))) {
                    return false;
                }
            }
        }
        true
    }

    fn coloring(&self) -> EdgeColoring {
        let mut colors = vec![Color::Red; self.order.len()];
        for (k, &i) in self.order.iter().enumerate() {
            colors[i] = self.assigned[k].expect("complete assignment");
        }
        EdgeColoring::new(colors)
    }

    fn is_good_leaf(&mut self) -> bool {
        self.pair_scratch.clear();
        (0..self.vertex_count).all(|v| self.pair_scratch.insert((self.red.find(v), self.blue.find(v))))
    }

    fn leaf(&mut self) {
        if !self.assigned.contains(&Some(Color::Blue)) {
            return;
        }
        let good = self.is_good_leaf();
        match self.shared.mode {
            SearchMode::CountAll => {
                self.found.nac += 2;
                self.found.good += 2 * good as u64;
            }
            SearchMode::EnumerateAll => {
                self.found.nac += 2;
                self.found.good += 2 * good as u64;
                let c = self.coloring();
                let swapped = c.swapped();
                self.found.colorings.push(c);
                self.found.colorings.push(swapped);
            }
            SearchMode::FirstAny => {
                self.found.nac += 1;
                self.found.good += good as u64;
                self.found.colorings.push(self.coloring());
                self.shared.stop.store(true, Ordering::Relaxed);
            }
            SearchMode::FirstGood => {
                if good {
                    self.found.nac += 1;
                    self.found.good += 1;
                    self.found.colorings.push(self.coloring());
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    fn colors_at(k: usize) -> &'static [Color] {
        if k == 0 {
            &[Color::Red]
        } else {
            &[Color::Red, Color::Blue]
        }
    }

    /// Explores every completion of the current assignment from position `k`.
    fn dfs(&mut self, k: usize) {
        if k == self.edges.len() {
            self.leaf();
            return;
        }
        for &color in Self::colors_at(k) {
            if !self.shared.tick() {
                return;
            }
            let (rc, bc) = (self.red.checkpoint(), self.blue.checkpoint());
            self.assign(k, color);
            if self.consistent() {
                self.dfs(k + 1);
            }
            self.assigned[k] = None;
            self.red.rollback(rc);
            self.blue.rollback(bc);
        }
    }

    /// Collects consistent assignments of the first `depth` edges.
    fn prefixes(&mut self, k: usize, depth: usize, out: &mut Vec<Vec<Color>>) {
        if k == depth {
            out.push(self.assigned[..depth].iter().map(|c| c.expect("assigned")).collect());
            return;
        }
        for &color in Self::colors_at(k) {
            if !self.shared.tick() {
                return;
            }
            let (rc, bc) = (self.red.checkpoint(), self.blue.checkpoint());
            self.assign(k, color);
            if self.consistent() {
                self.prefixes(k + 1, depth, out);
            }
            self.assigned[k] = None;
            self.red.rollback(rc);
            self.blue.rollback(bc);
        }
    }
}

/// Searches the colorings of `graph` for NAC-colorings.
pub fn search_nac(graph: &SimpleGraph, options: &SearchOptions) -> Result<SearchOutcome> {
    let m = graph.edge_count();
    if options.mode.is_exhaustive() && m > options.max_exhaustive_edges {
        return Err(Error::capacity(
            format!("exhaustive coloring search on {m} edges"),
            m as u128,
            options.max_exhaustive_edges,
        ));
    }
    let shared = Shared {
        mode: options.mode,
        budget: options.budget,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
    };
    let order = search_order(graph);

    let found = if m == 0 {
        Found::default()
    } else if options.workers <= 1 {
        let mut worker = Worker::new(&shared, graph, &order);
        worker.dfs(0);
        worker.found
    } else {
        let depth = options.split_depth.clamp(1, m);
        let mut prefixes = Vec::new();
        Worker::new(&shared, graph, &order).prefixes(0, depth, &mut prefixes);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot start {} workers: {e}", options.workers)))?;
        let parts: Vec<Found> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| {
                    let mut worker = Worker::new(&shared, graph, &order);
                    for (k, &color) in prefix.iter().enumerate() {
                        worker.assign(k, color);
                    }
                    worker.dfs(prefix.len());
                    worker.found
                })
                .collect()
        });
        let mut merged = Found::default();
        for part in parts {
            merged.nac += part.nac;
            merged.good += part.good;
            merged.colorings.extend(part.colorings);
        }
        if matches!(options.mode, SearchMode::FirstAny | SearchMode::FirstGood) {
            merged.colorings.truncate(1);
            merged.nac = merged.nac.min(1);
            merged.good = merged.good.min(1);
        }
        merged
    };

    Ok(SearchOutcome {
        mode: options.mode,
        colorings: found.colorings,
        nac_count: found.nac,
        good_count: found.good,
        complete: !shared.exhausted.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed).min(options.budget),
    })
}
