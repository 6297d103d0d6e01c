//! Build Cayley graphs of a few groups and print their basic statistics.
//!
//! cargo run --example cayley_basics

use rigidcay::graph::{cayley_graph, degree_profile};
use rigidcay::group::{make_sl, subgroup_closure, Capacity, GeneratorSet, GroupDescriptor};

fn main() -> rigidcay::Result<()> {
    for (descriptor, gens) in [
        ("cyclic:6", "2,3"),
        ("cyclic:12", "2,3"),
        ("product:(cyclic:3,cyclic:3)", "(1,0),(0,1)"),
    ] {
        let group = descriptor.parse::<GroupDescriptor>()?.build(Capacity::default())?;
        let s = GeneratorSet::parse(&group, gens)?.symmetric_closure();
        let cayley = cayley_graph(&s)?;
        println!(
            "{descriptor:<30} S∪S⁻¹ = {{{}}}: {} vertices, {} edges, regular of degree {:?}",
            s.labels().join(", "),
            cayley.graph.vertex_count(),
            cayley.graph.edge_count(),
            degree_profile(&cayley.graph).regularity(),
        );
    }

    // the commutator of two elementary matrices in SL_3(F_2)
    let sl = make_sl(3, 2)?;
    let (e12, e23) = (sl.elementary(0, 1).unwrap(), sl.elementary(1, 2).unwrap());
    let c = sl.commutator(e12, e23);
    println!("[E12, E23] = {} (E13 = {})", sl.element_label(c), sl.element_label(sl.elementary(0, 2).unwrap()));
    let closure = subgroup_closure(&sl, [e12, e23, sl.elementary(1, 0).unwrap(), sl.elementary(2, 1).unwrap()]);
    println!("elementary matrices generate {} of {} elements", closure.len(), sl.order());
    Ok(())
}
