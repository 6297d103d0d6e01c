//! Counting criteria, the (2,3)-pebble game, and the top-level classifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::io::ColoringJson;
use crate::nac::{search_nac, verdict, EdgeColoring, SearchMode, SearchOptions, DEFAULT_BUDGET};

fn laman_bound(graph: &SimpleGraph) -> i64 {
    2 * graph.vertex_count() as i64 - 3
}

/// `|E| < 2|V| - 3`, which forces a connected graph to be movable.
pub fn laman_count_movable(graph: &SimpleGraph) -> Result<bool> {
    if graph.vertex_count() < 2 {
        return Err(Error::InvalidInput("Laman count needs at least 2 vertices".into()));
    }
    if !graph.is_connected() {
        return Err(Error::InvalidInput("Laman count needs a connected graph".into()));
    }
    Ok((graph.edge_count() as i64) < laman_bound(graph))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PebbleResult {
    /// Size of a maximum (2,3)-sparse edge subset.
    pub rank: usize,
    pub independent_edges: Vec<Edge>,
}

/// The (2,3)-pebble game: two pebbles per vertex; an edge is accepted when
/// four pebbles can be gathered on its endpoints, and one of them is then
/// spent to cover it. Accepted edges form a maximum (2,3)-sparse subset.
struct PebbleGame {
    pebbles: Vec<u8>,
    /// `out[x]` lists `y` for accepted edges directed `x -> y` (covered by a pebble of `x`).
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
        }
    }

    /// Brings one free pebble to `target` along reversed directed paths,
    /// never passing through `blocked`.
    fn collect(&mut self, target: usize, blocked: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        parent[target] = target;
        parent[blocked] = blocked;
        let mut stack = vec![target];
        let mut found = None;
        'dfs: while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if parent[y] != usize::MAX {
                    continue;
                }
                parent[y] = x;
                if self.pebbles[y] > 0 {
                    found = Some(y);
                    break 'dfs;
                }
                stack.push(y);
            }
        }
        let Some(source) = found else {
            return false;
        };
        self.pebbles[source] -= 1;
        let mut y = source;
        while y != target {
            let x = parent[y];
            let pos = self.out[x].iter().position(|&z| z == y).expect("arc on path");
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[target] += 1;
        true
    }

    fn try_add(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] < 2 && self.collect(u, v) {}
        while self.pebbles[v] < 2 && self.collect(v, u) {}
        if self.pebbles[u] + self.pebbles[v] < 4 {
            return false;
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        true
    }
}

pub fn pebble_game_23(graph: &SimpleGraph) -> PebbleResult {
    let mut game = PebbleGame::new(graph.vertex_count());
    let independent_edges: Vec<Edge> = graph
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| game.try_add(u, v))
        .collect();
    PebbleResult {
        rank: independent_edges.len(),
        independent_edges,
    }
}

/// Contains a Laman subgraph on all of its vertices.
pub fn has_spanning_laman(graph: &SimpleGraph) -> bool {
    graph.vertex_count() >= 2 && pebble_game_23(graph).rank as i64 == laman_bound(graph)
}

/// `|E| = 2|V| - 3` and every subgraph satisfies `|E'| <= 2|V'| - 3`.
pub fn is_laman_graph(graph: &SimpleGraph) -> bool {
    graph.vertex_count() >= 2
        && graph.edge_count() as i64 == laman_bound(graph)
        && pebble_game_23(graph).rank == graph.edge_count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Rigid,
    Flexible,
    Movable,
    FlexibleMovabilityUnknown,
}

/// Why a graph was classified movable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MovabilityWitness {
    GoodNac,
    LamanCount { edges: usize, bound: i64 },
    NoSpanningLaman { rank: usize, bound: i64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigidityReport {
    pub vertices: usize,
    pub edges: usize,
    pub laman_count_movable: bool,
    pub pebble_rank: usize,
    pub has_spanning_laman: bool,
    pub nac_exists: bool,
    /// `None` when the search budget ran out before deciding.
    pub good_nac_exists: Option<bool>,
    pub classification: Classification,
    /// `yes`, `no`, or `unknown`.
    pub movable: String,
    pub partial: bool,
    pub search_nodes: u64,
    pub nac_certificate: Option<ColoringJson>,
    pub good_nac_certificate: Option<ColoringJson>,
    pub movability_witness: Option<MovabilityWitness>,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Node budget for each of the two coloring searches.
    pub budget: u64,
    pub workers: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Rigid when no NAC-coloring exists, flexible when one does, movable when
/// a good NAC-coloring exists or a Laman-type count forces it.
pub fn classify(graph: &SimpleGraph, options: &ClassifyOptions) -> Result<RigidityReport> {
    if graph.edge_count() == 0 {
        return Err(Error::InvalidInput("classification needs at least one edge".into()));
    }
    let laman_count = laman_count_movable(graph)?;
    let pebble = pebble_game_23(graph);
    let bound = laman_bound(graph);
    let spanning = pebble.rank as i64 == bound;

    let search = |mode| {
        search_nac(
            graph,
            &SearchOptions::new(mode).budget(options.budget).workers(options.workers),
        )
    };
    let any = search(SearchMode::FirstAny)?;
    let mut nodes = any.nodes;
    let mut partial = any.is_partial();
    let nac: Option<EdgeColoring> = any.first().cloned();

    let mut good: Option<EdgeColoring> = None;
    let mut good_nac_exists = if partial { None } else { Some(false) };
    if let Some(c) = &nac {
        if verdict(graph, c)?.is_good {
            good = Some(c.clone());
            good_nac_exists = Some(true);
        } else {
            let g = search(SearchMode::FirstGood)?;
            nodes += g.nodes;
            good = g.first().cloned();
            good_nac_exists = match (&good, g.complete) {
                (Some(_), _) => Some(true),
                (None, true) => Some(false),
                (None, false) => None,
            };
            partial |= g.is_partial();
        }
    }

    let movability_witness = if good.is_some() {
        Some(MovabilityWitness::GoodNac)
    } else if laman_count {
        Some(MovabilityWitness::LamanCount {
            edges: graph.edge_count(),
            bound,
        })
    } else if !spanning {
        Some(MovabilityWitness::NoSpanningLaman {
            rank: pebble.rank,
            bound,
        })
    } else {
        None
    };

    let classification = if movability_witness.is_some() {
        Classification::Movable
    } else if nac.is_some() {
        Classification::Flexible
    } else if any.complete {
        Classification::Rigid
    } else {
        Classification::FlexibleMovabilityUnknown
    };
    let movable = match classification {
        Classification::Movable => "yes",
        Classification::Rigid => "no",
        _ => "unknown",
    };

    Ok(RigidityReport {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        laman_count_movable: laman_count,
        pebble_rank: pebble.rank,
        has_spanning_laman: spanning,
        nac_exists: nac.is_some(),
        good_nac_exists,
        classification,
        movable: movable.to_string(),
        partial,
        search_nodes: nodes,
        nac_certificate: nac.as_ref().map(|c| ColoringJson::from_coloring(graph, c)),
        good_nac_certificate: good.as_ref().map(|c| ColoringJson::from_coloring(graph, c)),
        movability_witness,
    })
}
