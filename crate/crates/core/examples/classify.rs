//! Classify graphs as rigid, flexible, or movable and print the JSON report.
//!
//! cargo run --example classify

use rigidcay::graph::{cayley_graph, complete_graph, SimpleGraph};
use rigidcay::group::{make_cyclic, GeneratorSet};
use rigidcay::io::to_canonical_string;
use rigidcay::rigidity::{classify, pebble_game_23, ClassifyOptions};

fn cyclic(n: usize, gens: &str) -> rigidcay::Result<SimpleGraph> {
    let g = make_cyclic(n)?;
    Ok(cayley_graph(&GeneratorSet::parse(&g, gens)?.symmetric_closure())?.graph)
}

fn main() -> rigidcay::Result<()> {
    let options = ClassifyOptions::default();
    for (name, graph) in [
        ("K3", complete_graph(3)),
        ("K4", complete_graph(4)),
        ("Z/6, {2,3}", cyclic(6, "2,3")?),
        ("Z/12, {2,3}", cyclic(12, "2,3")?),
        ("Z/7, {1}", cyclic(7, "1")?),
    ] {
        let report = classify(&graph, &options)?;
        println!(
            "{name:<12} {:?} (pebble rank {} of {}, movable: {})",
            report.classification,
            pebble_game_23(&graph).rank,
            2 * graph.vertex_count() - 3,
            report.movable
        );
    }
    println!("{}", to_canonical_string(&classify(&cyclic(6, "2,3")?, &options)?)?);
    Ok(())
}
