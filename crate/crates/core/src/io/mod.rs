//! JSON interchange formats. DOT and SVG output lives in [`export`].
//!
//! Every document is written with sorted object keys, and graph edges are
//! written in canonical order, so load-then-save is byte-stable.

pub mod export;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flex::RealizationFrame;
use crate::graph::{Edge, Factor, SimpleGraph};
use crate::group::GroupDescriptor;
use crate::nac::EdgeColoring;

/// `{"vertices": n, "edges": [[u,v],...], "labels": {...}, "group": "<descriptor>"}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// Factor of origin per edge, present on cartesian products only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_factors: Option<Vec<Factor>>,
}

/// `{"red": [[u,v],...], "blue": [[u,v],...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub red: Vec<[usize; 2]>,
    pub blue: Vec<[usize; 2]>,
}

/// `{"angle": a, "positions": {"v": [x,y], ...}}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameJson {
    pub angle: f64,
    pub positions: BTreeMap<String, [f64; 2]>,
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    // serde_json::Value keeps object keys in a BTreeMap
    let value = serde_json::to_value(value)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what} JSON, line {} column {}: {e}", e.line(), e.column())))
}

impl GraphJson {
    pub fn from_graph(graph: &SimpleGraph) -> Self {
        GraphJson {
            vertices: graph.vertex_count(),
            edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: graph
                .labels()
                .map(|labels| labels.iter().enumerate().map(|(i, l)| (i.to_string(), l.clone())).collect())
                .unwrap_or_default(),
            group: graph.group().map(ToString::to_string),
            edge_factors: graph.edge_factors().map(<[Factor]>::to_vec),
        }
    }

    pub fn to_graph(&self) -> Result<SimpleGraph> {
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            if u == v || u >= self.vertices || v >= self.vertices {
                return Err(Error::Validation(format!(
                    "edge #{i} [{u},{v}] is a loop or references a vertex outside 0..{}",
                    self.vertices
                )));
            }
        }
        let mut graph = SimpleGraph::new(self.vertices, self.edges.iter().map(|&[u, v]| (u, v)))?;
        if let Some(factors) = &self.edge_factors {
            if factors.len() != self.edges.len() {
                return Err(Error::Validation(format!(
                    "{} edge_factors for {} edges",
                    factors.len(),
                    self.edges.len()
                )));
            }
            if graph.edge_count() != self.edges.len() {
                return Err(Error::Validation("edge_factors given but the edge list has duplicates".into()));
            }
            // tags follow the file's edge order; re-align them to canonical order
            let mut aligned = vec![Factor::First; graph.edge_count()];
            for (&[u, v], &f) in self.edges.iter().zip(factors) {
                aligned[graph.edge_index(u, v).expect("edge present")] = f;
            }
            graph = graph.with_edge_factors(aligned)?;
        }
        if !self.labels.is_empty() {
            let mut labels: Vec<String> = (0..self.vertices).map(|v| v.to_string()).collect();
            for (key, label) in &self.labels {
                let v: usize = key
                    .parse()
                    .ok()
                    .filter(|&v| v < self.vertices)
                    .ok_or_else(|| Error::Validation(format!("label key `{key}` is not a vertex id")))?;
                labels[v] = label.clone();
            }
            graph = graph.with_labels(labels)?;
        }
        if let Some(group) = &self.group {
            graph = graph.with_group(group.parse::<GroupDescriptor>()?);
        }
        Ok(graph)
    }
}

impl ColoringJson {
    pub fn from_coloring(graph: &SimpleGraph, coloring: &EdgeColoring) -> Self {
        let pairs = |c| coloring.edges_of(graph, c).into_iter().map(|(u, v)| [u, v]).collect();
        ColoringJson {
            red: pairs(crate::nac::Color::Red),
            blue: pairs(crate::nac::Color::Blue),
        }
    }

    pub fn to_coloring(&self, graph: &SimpleGraph) -> Result<EdgeColoring> {
        let check = |list: &[[usize; 2]], name: &str| -> Result<Vec<Edge>> {
            list.iter()
                .enumerate()
                .map(|(i, &[u, v])| {
                    if u >= graph.vertex_count() || v >= graph.vertex_count() {
                        Err(Error::Validation(format!(
                            "{name} edge #{i} [{u},{v}] uses an unknown vertex id (graph has {})",
                            graph.vertex_count()
                        )))
                    } else {
                        Ok((u, v))
                    }
                })
                .collect()
        };
        EdgeColoring::from_edge_lists(graph, &check(&self.red, "red")?, &check(&self.blue, "blue")?)
    }
}

impl FrameJson {
    pub fn from_frame(frame: &RealizationFrame) -> Self {
        FrameJson {
            angle: frame.angle,
            positions: frame
                .positions
                .iter()
                .enumerate()
                .map(|(v, p)| (v.to_string(), *p))
                .collect(),
        }
    }

    /// Positions indexed by vertex; keys must be exactly `0..n`.
    pub fn positions(&self) -> Result<Vec<[f64; 2]>> {
        let n = self.positions.len();
        let mut out = vec![[0.0; 2]; n];
        let mut seen = vec![false; n];
        for (key, p) in &self.positions {
            let v: usize = key
                .parse()
                .ok()
                .filter(|&v| v < n)
                .ok_or_else(|| Error::Validation(format!("frame position key `{key}` is not a vertex id")))?;
            out[v] = *p;
            seen[v] = true;
        }
        debug_assert!(seen.iter().all(|&s| s));
        Ok(out)
    }
}

pub fn graph_to_json(graph: &SimpleGraph) -> Result<String> {
    to_canonical_string(&GraphJson::from_graph(graph))
}

pub fn graph_from_json(text: &str) -> Result<SimpleGraph> {
    parse::<GraphJson>(text, "graph")?.to_graph()
}

pub fn coloring_to_json(graph: &SimpleGraph, coloring: &EdgeColoring) -> Result<String> {
    to_canonical_string(&ColoringJson::from_coloring(graph, coloring))
}

pub fn coloring_from_json(graph: &SimpleGraph, text: &str) -> Result<EdgeColoring> {
    parse::<ColoringJson>(text, "coloring")?.to_coloring(graph)
}

pub fn frame_from_json(text: &str) -> Result<FrameJson> {
    parse(text, "frame")
}

pub fn read_graph(path: &Path) -> Result<SimpleGraph> {
    graph_from_json(&std::fs::read_to_string(path)?)
}

pub fn read_coloring(graph: &SimpleGraph, path: &Path) -> Result<EdgeColoring> {
    coloring_from_json(graph, &std::fs::read_to_string(path)?)
}
