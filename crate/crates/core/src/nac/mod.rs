//! Red/blue edge colorings and the NAC property.
//!
//! A coloring is NAC when both colors occur and no cycle has exactly one
//! edge of either color. The production check uses the equivalent component
//! form: every blue edge joins two different red components and every red
//! edge joins two different blue components. A NAC-coloring is good when no
//! red component shares two vertices with a blue component.

mod search;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, CayleyGraph, ComponentPartition, Edge, Factor, SimpleGraph};
use crate::group::GroupElement;

pub use search::{search_nac, SearchMode, SearchOptions, SearchOutcome, DEFAULT_BUDGET, DEFAULT_MAX_EXHAUSTIVE_EDGES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn swap(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// One color per edge, indexed like [`SimpleGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn from_fn(graph: &SimpleGraph, mut f: impl FnMut(usize, Edge) -> Color) -> Self {
        EdgeColoring {
            colors: graph.edges().iter().enumerate().map(|(i, &e)| f(i, e)).collect(),
        }
    }

    /// Bit `i` of `blue_mask` set means edge `i` is blue.
    pub fn from_blue_mask(edge_count: usize, blue_mask: u64) -> Self {
        EdgeColoring {
            colors: (0..edge_count)
                .map(|i| if blue_mask >> i & 1 == 1 { Color::Blue } else { Color::Red })
                .collect(),
        }
    }

    /// Builds a coloring from explicit red and blue edge lists, which must
    /// cover every edge of `graph` exactly once.
    pub fn from_edge_lists(graph: &SimpleGraph, red: &[Edge], blue: &[Edge]) -> Result<Self> {
        let mut colors: Vec<Option<Color>> = vec![None; graph.edge_count()];
        for (list, color) in [(red, Color::Red), (blue, Color::Blue)] {
            for &(u, v) in list {
                let i = graph
                    .edge_index(u, v)
                    .ok_or_else(|| Error::Validation(format!("colored edge ({u},{v}) is not an edge of the graph")))?;
                if colors[i].replace(color).is_some() {
                    return Err(Error::Validation(format!("edge ({u},{v}) is colored twice")));
                }
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    let (u, v) = graph.edge(i);
                    Error::Validation(format!("edge ({u},{v}) has no color"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeColoring { colors })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, edge_index: usize) -> Color {
        self.colors[edge_index]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    pub fn swapped(&self) -> Self {
        EdgeColoring {
            colors: self.colors.iter().map(|c| c.swap()).collect(),
        }
    }

    pub fn edges_of(&self, graph: &SimpleGraph, color: Color) -> Vec<Edge> {
        graph
            .edges()
            .iter()
            .zip(&self.colors)
            .filter(|(_, &c)| c == color)
            .map(|(&e, _)| e)
            .collect()
    }

    fn check_fits(&self, graph: &SimpleGraph) -> Result<()> {
        if self.colors.len() != graph.edge_count() {
            return Err(Error::InvalidColoring(format!(
                "coloring has {} entries for {} edges",
                self.colors.len(),
                graph.edge_count()
            )));
        }
        Ok(())
    }

    /// Components of the red (or blue) spanning subgraph.
    pub fn components(&self, graph: &SimpleGraph, color: Color) -> ComponentPartition {
        components(graph, |i, _| self.colors[i] == color)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NacVerdict {
    pub is_surjective: bool,
    /// A blue edge inside a red component, or a red edge inside a blue one.
    pub offending_edge: Option<Edge>,
    pub is_nac: bool,
    pub is_good: bool,
    /// Two vertices joined by both a red path and a blue path.
    pub witness_pair: Option<(usize, usize)>,
    pub red_components: usize,
    pub blue_components: usize,
}

/// Full NAC and goodness verdict for a coloring.
///
/// Goodness is decided from the component intersections alone
/// (surjective and every red/blue component pair shares at most one vertex),
/// independently of the offending-edge test.
pub fn verdict(graph: &SimpleGraph, coloring: &EdgeColoring) -> Result<NacVerdict> {
    if graph.edge_count() == 0 {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    coloring.check_fits(graph)?;

    let red = coloring.components(graph, Color::Red);
    let blue = coloring.components(graph, Color::Blue);
    let is_surjective = coloring.count(Color::Red) > 0 && coloring.count(Color::Blue) > 0;

    let offending_edge = graph
        .edges()
        .iter()
        .zip(coloring.colors())
        .find(|(&(u, v), &c)| match c {
            Color::Blue => red.component_of[u] == red.component_of[v],
            Color::Red => blue.component_of[u] == blue.component_of[v],
        })
        .map(|(&e, _)| e);

    let mut first_at: HashMap<(usize, usize), usize> = HashMap::new();
    let mut witness_pair = None;
    for v in 0..graph.vertex_count() {
        let key = (red.component_of[v], blue.component_of[v]);
        if let Some(&u) = first_at.get(&key) {
            witness_pair = Some((u, v));
            break;
        }
        first_at.insert(key, v);
    }

    Ok(NacVerdict {
        is_surjective,
        offending_edge,
        is_nac: is_surjective && offending_edge.is_none(),
        is_good: is_surjective && witness_pair.is_none(),
        witness_pair,
        red_components: red.component_count,
        blue_components: blue.component_count,
    })
}

pub fn is_nac(graph: &SimpleGraph, coloring: &EdgeColoring) -> Result<bool> {
    Ok(verdict(graph, coloring)?.is_nac)
}

pub fn is_good_nac(graph: &SimpleGraph, coloring: &EdgeColoring) -> Result<bool> {
    Ok(verdict(graph, coloring)?.is_good)
}

/// Colors the edges of `s·x` blue for `s` in `blue_part ∪ blue_part⁻¹` and
/// every other generator red.
pub fn generator_class_coloring(cayley: &CayleyGraph, blue_part: &[GroupElement]) -> Result<EdgeColoring> {
    let group = cayley.group();
    if blue_part.is_empty() {
        return Err(Error::InvalidPartition("blue generator class is empty".into()));
    }
    if let Some(g) = blue_part.iter().find(|g| !cayley.generators.contains(**g)) {
        return Err(Error::InvalidPartition(format!(
            "{} is not one of the generators",
            group.element_label(*g)
        )));
    }
    let blue: BTreeSet<GroupElement> = blue_part.iter().flat_map(|&g| [g, group.invert(g)]).collect();
    let red: BTreeSet<GroupElement> = cayley.generators.iter().filter(|g| !blue.contains(g)).collect();
    generator_partition_coloring(cayley, &blue, &red)
}

/// Colors edges by an explicit two-class split of the generators. Each class
/// is closed under inversion first; the closed classes must be disjoint,
/// nonempty, and together equal the generating set.
pub fn generator_partition_coloring(
    cayley: &CayleyGraph,
    blue: &BTreeSet<GroupElement>,
    red: &BTreeSet<GroupElement>,
) -> Result<EdgeColoring> {
    let group = cayley.group();
    let close = |set: &BTreeSet<GroupElement>| -> BTreeSet<GroupElement> {
        set.iter().flat_map(|&g| [g, group.invert(g)]).collect()
    };
    let (blue, red) = (close(blue), close(red));
    if let Some(g) = blue.intersection(&red).next() {
        return Err(Error::AmbiguousColoring(format!(
            "generator {} lies in both color classes",
            group.element_label(*g)
        )));
    }
    if blue.is_empty() || red.is_empty() {
        return Err(Error::InvalidPartition("both color classes must be nonempty".into()));
    }
    let union: BTreeSet<GroupElement> = blue.union(&red).copied().collect();
    if &union != cayley.generators.elements() {
        return Err(Error::InvalidPartition(
            "color classes do not partition the generating set".into(),
        ));
    }
    Ok(EdgeColoring::from_fn(&cayley.graph, |_, e| {
        if blue.contains(&cayley.edge_generator(e)) {
            Color::Blue
        } else {
            Color::Red
        }
    }))
}

/// First-factor edges red, second-factor edges blue.
pub fn product_coloring(product: &SimpleGraph) -> Result<EdgeColoring> {
    let factors = product
        .edge_factors()
        .ok_or_else(|| Error::InvalidInput("graph carries no product factor tags".into()))?;
    Ok(EdgeColoring::new(
        factors
            .iter()
            .map(|f| match f {
                Factor::First => Color::Red,
                Factor::Second => Color::Blue,
            })
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, cayley_graph, complete_graph, path_graph};
    use crate::group::{make_cyclic, GeneratorSet};

    fn cyclic_cayley(n: usize, gens: &str) -> CayleyGraph {
        let g = make_cyclic(n).unwrap();
        cayley_graph(&GeneratorSet::parse(&g, gens).unwrap().symmetric_closure()).unwrap()
    }

    #[test]
    fn triangle_has_no_nac() {
        let k3 = complete_graph(3);
        for mask in 0..8u64 {
            let c = EdgeColoring::from_blue_mask(3, mask);
            assert!(!is_nac(&k3, &c).unwrap());
        }
    }

    #[test]
    fn monochromatic_is_not_surjective() {
        let g = cyclic_cayley(6, "2,3").graph;
        let v = verdict(&g, &EdgeColoring::new(vec![Color::Red; 9])).unwrap();
        assert!(!v.is_surjective);
        assert!(!v.is_nac && !v.is_good);
    }

    #[test]
    fn z6_prism_is_good() {
        let c = cyclic_cayley(6, "2,3");
        let col = generator_class_coloring(&c, &[GroupElement(2)]).unwrap();
        assert_eq!(col.count(Color::Blue), 6);
        assert_eq!(col.count(Color::Red), 3);
        let v = verdict(&c.graph, &col).unwrap();
        assert!(v.is_nac && v.is_good);
        assert_eq!((v.red_components, v.blue_components), (3, 2));
    }

    #[test]
    fn z12_is_nac_but_not_good() {
        let c = cyclic_cayley(12, "2,3");
        let col = generator_class_coloring(&c, &[GroupElement(2)]).unwrap();
        let v = verdict(&c.graph, &col).unwrap();
        assert!(v.is_nac);
        assert!(!v.is_good);
        assert_eq!(v.witness_pair, Some((0, 6)));
    }

    #[test]
    fn z3_squared_split() {
        let g = crate::group::direct_product(&make_cyclic(3).unwrap(), &make_cyclic(3).unwrap()).unwrap();
        let c = cayley_graph(&GeneratorSet::parse(&g, "(1,0),(0,1)").unwrap().symmetric_closure()).unwrap();
        let col = generator_class_coloring(&c, &[g.parse_element("(1,0)").unwrap()]).unwrap();
        assert_eq!((col.count(Color::Blue), col.count(Color::Red)), (9, 9));
        assert!(is_good_nac(&c.graph, &col).unwrap());
    }

    #[test]
    fn partition_errors() {
        let c = cyclic_cayley(6, "2,3");
        assert!(matches!(generator_class_coloring(&c, &[]), Err(Error::InvalidPartition(_))));
        assert!(matches!(
            generator_class_coloring(&c, &[GroupElement(2), GroupElement(3)]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            generator_class_coloring(&c, &[GroupElement(1)]),
            Err(Error::InvalidPartition(_))
        ));
        let blue: BTreeSet<_> = [GroupElement(2)].into();
        let red: BTreeSet<_> = [GroupElement(3), GroupElement(4)].into();
        assert!(matches!(
            generator_partition_coloring(&c, &blue, &red),
            Err(Error::AmbiguousColoring(_))
        ));
    }

    #[test]
    fn products_are_good() {
        for (a, b) in [
            (complete_graph(2), complete_graph(2)),
            (complete_graph(4), complete_graph(4)),
            (complete_graph(3), path_graph(2)),
        ] {
            let p = cartesian_product(&a, &b);
            let col = product_coloring(&p).unwrap();
            assert!(is_good_nac(&p, &col).unwrap());
        }
        assert!(matches!(product_coloring(&complete_graph(3)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn edge_lists() {
        let g = path_graph(3);
        let c = EdgeColoring::from_edge_lists(&g, &[(0, 1)], &[(2, 1)]).unwrap();
        assert_eq!(c.colors(), &[Color::Red, Color::Blue]);
        assert!(matches!(
            EdgeColoring::from_edge_lists(&g, &[(0, 1)], &[(0, 2)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(EdgeColoring::from_edge_lists(&g, &[(0, 1)], &[]), Err(Error::Validation(_))));
        assert!(matches!(verdict(&SimpleGraph::empty(3), &EdgeColoring::new(vec![])), Err(Error::InvalidInput(_))));
    }
}
