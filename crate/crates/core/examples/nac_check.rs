//! Color a Cayley graph by generator class and check the NAC properties.
//!
//! cargo run --example nac_check

use rigidcay::graph::cayley_graph;
use rigidcay::group::{make_cyclic, GeneratorSet, GroupElement};
use rigidcay::nac::{generator_class_coloring, verdict};

fn main() -> rigidcay::Result<()> {
    for n in [6, 12] {
        let group = make_cyclic(n)?;
        let cayley = cayley_graph(&GeneratorSet::parse(&group, "2,3")?.symmetric_closure())?;
        // ±2 edges blue, ±3 edges red
        let coloring = generator_class_coloring(&cayley, &[GroupElement(2)])?;
        let v = verdict(&cayley.graph, &coloring)?;
        println!(
            "Z/{n}: NAC = {}, good = {}, red components = {}, blue components = {}",
            v.is_nac, v.is_good, v.red_components, v.blue_components
        );
        if let Some((a, b)) = v.witness_pair {
            println!("  {a} and {b} are joined by both a red and a blue path");
        }
    }
    Ok(())
}
