//! Write a colored Cayley graph as Graphviz DOT and as graph/coloring JSON.
//!
//! cargo run --example export_dot | dot -Tsvg > prism.svg

use rigidcay::graph::cayley_graph;
use rigidcay::group::{make_cyclic, GeneratorSet, GroupElement};
use rigidcay::io::export::to_dot;
use rigidcay::io::{coloring_to_json, graph_to_json};
use rigidcay::nac::generator_class_coloring;

fn main() -> rigidcay::Result<()> {
    let group = make_cyclic(6)?;
    let cayley = cayley_graph(&GeneratorSet::parse(&group, "2,3")?.symmetric_closure())?;
    let coloring = generator_class_coloring(&cayley, &[GroupElement(2)])?;
    print!("{}", to_dot(&cayley.graph, Some(&coloring)));
    eprint!("{}", graph_to_json(&cayley.graph)?);
    eprint!("{}", coloring_to_json(&cayley.graph, &coloring)?);
    Ok(())
}
