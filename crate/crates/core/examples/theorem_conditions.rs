//! Evaluate the subgroup-intersection conditions for flexibility and movability.
//!
//! cargo run --example theorem_conditions

use rigidcay::group::{elementary_generators, make_cyclic, make_sl, GroupElement};
use rigidcay::theorems::{check_flexible_condition, check_movable_condition, check_pairwise_trivial, check_partition_condition};

fn main() -> rigidcay::Result<()> {
    for (n, s) in [(6, [2, 3]), (12, [2, 3]), (15, [3, 5]), (4, [1, 2])] {
        let group = make_cyclic(n)?;
        let set: Vec<GroupElement> = s.iter().map(|&g| GroupElement(g)).collect();
        let flexible = check_flexible_condition(&group, &set, set[1])?;
        let movable = check_movable_condition(&group, &set, set[1])?;
        let pairwise = check_pairwise_trivial(&group, &set)?;
        println!(
            "Z/{n:<2} S = {s:?}, s = {}: flexible {} movable {} (witnesses {:?}) pairwise {}",
            s[1], flexible.holds, movable.holds, movable.witness_labels, pairwise.holds
        );
    }

    let sl = make_sl(2, 3)?;
    let gens: Vec<_> = elementary_generators(&sl)?.iter().collect();
    let report = check_partition_condition(&sl, &gens, &[sl.elementary(0, 1).unwrap()])?;
    println!("SL_2(F_3), upper vs lower: movable {}", report.movable.holds);
    Ok(())
}
