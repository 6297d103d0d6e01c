//! Finite simple graphs, Cayley graphs and cartesian products.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GeneratorSet, GroupDescriptor, GroupElement};
use crate::union_find::UnionFind;

/// Canonical undirected edge `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

/// Which factor of a cartesian product an edge comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    First,
    Second,
}

/// Undirected loopless graph on `0..vertex_count` with sorted, deduplicated edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
    group: Option<GroupDescriptor>,
    edge_factors: Option<Vec<Factor>>,
}

fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidInput(format!(
                    "edge ({u},{v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(SimpleGraph {
            vertex_count,
            edges: list,
            labels: None,
            group: None,
            edge_factors: None,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        SimpleGraph {
            vertex_count,
            edges: Vec::new(),
            labels: None,
            group: None,
            edge_factors: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_group(mut self, group: GroupDescriptor) -> Self {
        self.group = Some(group);
        self
    }

    pub fn with_edge_factors(mut self, factors: Vec<Factor>) -> Result<Self> {
        if factors.len() != self.edges.len() {
            return Err(Error::InvalidInput(format!(
                "{} factor tags for {} edges",
                factors.len(),
                self.edges.len()
            )));
        }
        self.edge_factors = Some(factors);
        Ok(self)
    }

    /// Copy with one more edge; labels and group survive, product tags do not.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = SimpleGraph::new(self.vertex_count, self.edges.iter().copied().chain([(u, v)]))?;
        g.labels = self.labels.clone();
        g.group = self.group.clone();
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn group(&self) -> Option<&GroupDescriptor> {
        self.group.as_ref()
    }

    pub fn edge_factors(&self) -> Option<&[Factor]> {
        self.edge_factors.as_deref()
    }

    /// Neighbor lists, each sorted.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || components(self, |_, _| true).component_count == 1
    }

    /// Two-colorability of the vertices; reported only, never required.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut side = vec![u8::MAX; self.vertex_count];
        for start in 0..self.vertex_count {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Vertex partition into connected components of a subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub component_of: Vec<usize>,
    pub component_count: usize,
}

impl ComponentPartition {
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (v, &c) in self.component_of.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Components of the spanning subgraph keeping the edges accepted by `keep`,
/// which receives the edge index and the edge.
pub fn components(graph: &SimpleGraph, keep: impl Fn(usize, Edge) -> bool) -> ComponentPartition {
    let mut uf = UnionFind::new(graph.vertex_count());
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        if keep(i, (u, v)) {
            uf.union(u, v);
        }
    }
    let (component_of, component_count) = uf.labels();
    ComponentPartition {
        component_of,
        component_count,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub is_regular: bool,
    pub degrees: Vec<usize>,
}

impl DegreeProfile {
    /// The common degree of a regular graph.
    pub fn regularity(&self) -> Option<usize> {
        match self.degrees.first() {
            Some(&d) if self.is_regular => Some(d),
            None => Some(0),
            _ => None,
        }
    }
}

pub fn degree_profile(graph: &SimpleGraph) -> DegreeProfile {
    let mut degrees = vec![0; graph.vertex_count()];
    for &(u, v) in graph.edges() {
        degrees[u] += 1;
        degrees[v] += 1;
    }
    let is_regular = degrees.windows(2).all(|w| w[0] == w[1]);
    DegreeProfile { is_regular, degrees }
}

pub fn complete_graph(n: usize) -> SimpleGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    SimpleGraph::new(n, edges).expect("complete graph edges are valid")
}

pub fn cycle_graph(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path_graph(n: usize) -> SimpleGraph {
    SimpleGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

/// Cartesian product; vertex `(x1, x2)` gets index `x1 * |V2| + x2` and every
/// edge is tagged with the factor it moves along.
pub fn cartesian_product(g1: &SimpleGraph, g2: &SimpleGraph) -> SimpleGraph {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let index = |x1: usize, x2: usize| x1 * n2 + x2;
    let mut tagged: Vec<(Edge, Factor)> = Vec::with_capacity(n1 * g2.edge_count() + n2 * g1.edge_count());
    for x1 in 0..n1 {
        for &(a, b) in g2.edges() {
            tagged.push(((index(x1, a), index(x1, b)), Factor::Second));
        }
    }
    for &(a, b) in g1.edges() {
        for x2 in 0..n2 {
            tagged.push(((index(a, x2), index(b, x2)), Factor::First));
        }
    }
    // row-major indexing keeps every pair canonical and distinct
    tagged.sort_unstable_by_key(|(e, _)| *e);

    let label = |g: &SimpleGraph, x: usize| match g.labels() {
        Some(labels) => labels[x].clone(),
        None => x.to_string(),
    };
    let labels = (0..n1)
        .flat_map(|x1| (0..n2).map(move |x2| (x1, x2)))
        .map(|(x1, x2)| format!("({},{})", label(g1, x1), label(g2, x2)))
        .collect();

    SimpleGraph {
        vertex_count: n1 * n2,
        edges: tagged.iter().map(|(e, _)| *e).collect(),
        labels: Some(labels),
        group: None,
        edge_factors: Some(tagged.into_iter().map(|(_, f)| f).collect()),
    }
}

/// A Cayley graph together with the group data it was built from.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub graph: SimpleGraph,
    pub generators: GeneratorSet,
    /// False when the generators miss part of the group; the graph is then disconnected.
    pub generates: bool,
}

impl CayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        self.generators.group()
    }

    /// The generator `s` with `v = s·u` for edge `(u, v)`.
    pub fn edge_generator(&self, edge: Edge) -> GroupElement {
        let group = self.group();
        group.multiply(GroupElement(edge.1), group.invert(GroupElement(edge.0)))
    }
}

/// Vertices are group elements, with an edge `{x, s·x}` for every `x` and `s`.
pub fn cayley_graph(gens: &GeneratorSet) -> Result<CayleyGraph> {
    if !gens.is_symmetric() {
        return Err(Error::InvalidGenerator(format!(
            "generator set {{{}}} is not closed under inversion",
            gens.labels().join(", ")
        )));
    }
    let group = gens.group();
    let mut edges = Vec::with_capacity(group.order() * gens.len());
    for x in group.elements() {
        for s in gens.iter() {
            let y = group.multiply(s, x);
            if x.0 < y.0 {
                edges.push((x.0, y.0));
            }
        }
    }
    let labels = group.elements().map(|g| group.element_label(g)).collect();
    let graph = SimpleGraph::new(group.order(), edges)?
        .with_labels(labels)?
        .with_group(group.descriptor().clone());
    Ok(CayleyGraph {
        graph,
        generators: gens.clone(),
        generates: gens.is_generating(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{elementary_generators, make_cyclic, make_sl};

    fn cayley(n: usize, gens: &str) -> CayleyGraph {
        let g = make_cyclic(n).unwrap();
        cayley_graph(&GeneratorSet::parse(&g, gens).unwrap().symmetric_closure()).unwrap()
    }

    #[test]
    fn cyclic_cayley_graphs() {
        let prism = cayley(6, "2,3");
        assert_eq!(prism.graph.vertex_count(), 6);
        assert_eq!(prism.graph.edge_count(), 9);
        assert_eq!(degree_profile(&prism.graph).regularity(), Some(3));
        assert!(prism.generates);

        let z12 = cayley(12, "2,3");
        assert_eq!(z12.graph.edge_count(), 24);
        assert_eq!(degree_profile(&z12.graph).regularity(), Some(4));
    }

    #[test]
    fn sl23_cayley_graph() {
        let g = make_sl(2, 3).unwrap();
        let s = elementary_generators(&g).unwrap().symmetric_closure();
        let c = cayley_graph(&s).unwrap();
        assert_eq!(c.graph.vertex_count(), 24);
        assert_eq!(c.graph.edge_count(), 48);
        assert_eq!(degree_profile(&c.graph).regularity(), Some(4));
    }

    #[test]
    fn asymmetric_generators_rejected() {
        let g = make_cyclic(6).unwrap();
        let s = GeneratorSet::parse(&g, "2").unwrap();
        assert!(matches!(cayley_graph(&s), Err(Error::InvalidGenerator(_))));
    }

    #[test]
    fn non_generating_is_flagged() {
        let c = cayley(6, "2");
        assert!(!c.generates);
        assert!(!c.graph.is_connected());
    }

    #[test]
    fn simple_families() {
        assert_eq!(complete_graph(2).edge_count(), 1);
        assert_eq!(complete_graph(3).edge_count(), 3);
        assert_eq!(complete_graph(4).edge_count(), 6);
        assert_eq!(cycle_graph(3).unwrap(), complete_graph(3));
        assert!(matches!(cycle_graph(2), Err(Error::InvalidParameter(_))));
        assert_eq!(cycle_graph(6).unwrap().edges(), cayley(6, "1").graph.edges());
        let c12 = cycle_graph(12).unwrap();
        assert!(c12.edge_count() < 2 * 12 - 3);
        assert!(c12.is_connected());
    }

    #[test]
    fn products() {
        let k2 = complete_graph(2);
        let sq = cartesian_product(&k2, &k2);
        // (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3: the square 0-1-3-2
        assert_eq!(sq.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(sq.edge_factors().unwrap(), &[Factor::Second, Factor::First, Factor::First, Factor::Second]);
        assert_eq!(degree_profile(&sq).regularity(), Some(2));

        let k4 = complete_graph(4);
        let p = cartesian_product(&k4, &k4);
        assert_eq!((p.vertex_count(), p.edge_count()), (16, 48));
        assert_eq!(degree_profile(&p).regularity(), Some(6));

        let k3 = complete_graph(3);
        assert_eq!(cartesian_product(&k3, &k3).edge_count(), 18);
    }

    #[test]
    fn component_counts() {
        let g = cycle_graph(5).unwrap();
        assert_eq!(components(&g, |_, _| true).component_count, 1);
        assert_eq!(components(&g, |_, _| false).component_count, 5);

        let prism = cayley(6, "2,3");
        let part = components(&prism.graph, |_, e| {
            let s = prism.edge_generator(e);
            s == GroupElement(2) || s == GroupElement(4)
        });
        assert_eq!(part.component_count, 2);
        assert_eq!(part.members(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
    }

    #[test]
    fn degrees() {
        assert_eq!(degree_profile(&complete_graph(3)).regularity(), Some(2));
        assert!(!degree_profile(&path_graph(3)).is_regular);
        let c3 = make_cyclic(3).unwrap();
        let g = crate::group::direct_product(&c3, &c3).unwrap();
        let s = GeneratorSet::parse(&g, "(1,0),(0,1)").unwrap().symmetric_closure();
        assert_eq!(degree_profile(&cayley_graph(&s).unwrap().graph).regularity(), Some(4));
    }

    #[test]
    fn loops_rejected() {
        assert!(matches!(SimpleGraph::new(3, [(1, 1)]), Err(Error::InvalidInput(_))));
        assert!(matches!(SimpleGraph::new(3, [(1, 3)]), Err(Error::InvalidInput(_))));
        let g = SimpleGraph::new(3, [(1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }
}
