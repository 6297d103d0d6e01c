//! Search for NAC-colorings: existence, good ones, and exhaustive counts.
//!
//! cargo run --release --example nac_search

use rigidcay::graph::{cayley_graph, complete_graph, cycle_graph, SimpleGraph};
use rigidcay::group::{make_cyclic, GeneratorSet};
use rigidcay::nac::{search_nac, SearchMode, SearchOptions};

fn main() -> rigidcay::Result<()> {
    let z12 = make_cyclic(12)?;
    let graphs: Vec<(&str, SimpleGraph)> = vec![
        ("K4", complete_graph(4)),
        ("K5", complete_graph(5)),
        ("C6", cycle_graph(6)?),
        ("Cay(Z/12, ±2, ±3)", cayley_graph(&GeneratorSet::parse(&z12, "2,3")?.symmetric_closure())?.graph),
    ];
    for (name, graph) in &graphs {
        let count = search_nac(graph, &SearchOptions::new(SearchMode::CountAll).workers(4))?;
        let good = search_nac(graph, &SearchOptions::new(SearchMode::FirstGood))?;
        println!(
            "{name:<20} {:>3} edges: {} NAC-colorings, {} good, first good found: {} ({} nodes)",
            graph.edge_count(),
            count.nac_count,
            count.good_count,
            good.first().is_some(),
            count.nodes + good.nodes
        );
    }
    Ok(())
}
