//! Subgroup-intersection conditions on a generating set that force a Cayley
//! graph to be flexible or movable, and the families built from them.

mod families;

pub use families::*;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{subgroup_closure, FiniteGroup, GroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition_name: String,
    pub holds: bool,
    /// Elements violating the condition; empty when it holds.
    pub witnesses: Vec<GroupElement>,
    pub witness_labels: Vec<String>,
}

impl ConditionReport {
    fn new(group: &FiniteGroup, name: &str, witnesses: BTreeSet<GroupElement>) -> Self {
        ConditionReport {
            condition_name: name.to_string(),
            holds: witnesses.is_empty(),
            witness_labels: witnesses.iter().map(|&g| group.element_label(g)).collect(),
            witnesses: witnesses.into_iter().collect(),
        }
    }
}

/// Both conditions for a split `S ∪ S⁻¹ = A ⊔ B` of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    /// `A ∩ ⟨B⟩ = ∅` and `B ∩ ⟨A⟩ = ∅`: coloring `A` blue is a NAC-coloring.
    pub flexible: ConditionReport,
    /// `⟨A⟩ ∩ ⟨B⟩ = {e}`: coloring `A` blue is a good NAC-coloring.
    pub movable: ConditionReport,
    pub blue_class: Vec<GroupElement>,
    pub red_class: Vec<GroupElement>,
}

fn inverse_closed(group: &FiniteGroup, set: impl IntoIterator<Item = GroupElement>) -> BTreeSet<GroupElement> {
    set.into_iter().flat_map(|g| [g, group.invert(g)]).collect()
}

fn check_generating_set(group: &FiniteGroup, set: &[GroupElement]) -> Result<BTreeSet<GroupElement>> {
    if let Some(g) = set.iter().find(|g| !group.contains(**g)) {
        return Err(Error::InvalidGenerator(format!("element {g} is outside {}", group.descriptor())));
    }
    if set.contains(&group.identity()) {
        return Err(Error::InvalidGenerator("the identity cannot be a generator".into()));
    }
    let sym = inverse_closed(group, set.iter().copied());
    if subgroup_closure(group, sym.iter().copied()).len() != group.order() {
        return Err(Error::InvalidGenerator(format!(
            "the set does not generate {}",
            group.descriptor()
        )));
    }
    Ok(sym)
}

/// Splits `S ∪ S⁻¹` into `A = blue ∪ blue⁻¹` and the rest, then evaluates
/// both intersection conditions.
fn partition_report(group: &FiniteGroup, sym: &BTreeSet<GroupElement>, blue: &[GroupElement]) -> Result<PartitionReport> {
    let a = inverse_closed(group, blue.iter().copied());
    let b: BTreeSet<GroupElement> = sym.difference(&a).copied().collect();
    if b.is_empty() {
        return Err(Error::InvalidPartition(
            "the remaining generators S \\ (S1 ∪ S1⁻¹) are empty".into(),
        ));
    }
    let closure_a = subgroup_closure(group, a.iter().copied());
    let closure_b = subgroup_closure(group, b.iter().copied());

    let mut crossing: BTreeSet<GroupElement> = b.intersection(&closure_a).copied().collect();
    crossing.extend(a.intersection(&closure_b).copied());
    let mut shared: BTreeSet<GroupElement> = closure_a.intersection(&closure_b).copied().collect();
    shared.remove(&group.identity());

    Ok(PartitionReport {
        flexible: ConditionReport::new(group, "flexible: <A> ∩ B = ∅ and A ∩ <B> = ∅", crossing),
        movable: ConditionReport::new(group, "movable: <A> ∩ <B> = {e}", shared),
        blue_class: a.into_iter().collect(),
        red_class: b.into_iter().collect(),
    })
}

fn single_generator_report(group: &FiniteGroup, set: &[GroupElement], s: GroupElement) -> Result<PartitionReport> {
    if !set.contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "{} is not in the generating set",
            group.element_label(s)
        )));
    }
    let sym = check_generating_set(group, set)?;
    partition_report(group, &sym, &[s]).map_err(|_| {
        Error::InvalidParameter(format!(
            "S \\ {{s, s⁻¹}} is empty for s = {}",
            group.element_label(s)
        ))
    })
}

/// `⟨s,s⁻¹⟩ ∩ (S∖{s,s⁻¹}) = ∅` and `{s,s⁻¹} ∩ ⟨S∖{s,s⁻¹}⟩ = ∅`.
pub fn check_flexible_condition(group: &FiniteGroup, set: &[GroupElement], s: GroupElement) -> Result<ConditionReport> {
    let mut report = single_generator_report(group, set, s)?.flexible;
    report.condition_name = "flexible: <s,s⁻¹> ∩ (S \\ {s,s⁻¹}) = ∅ and {s,s⁻¹} ∩ <S \\ {s,s⁻¹}> = ∅".into();
    Ok(report)
}

/// `⟨s,s⁻¹⟩ ∩ ⟨S∖{s,s⁻¹}⟩ = {e}`.
pub fn check_movable_condition(group: &FiniteGroup, set: &[GroupElement], s: GroupElement) -> Result<ConditionReport> {
    let mut report = single_generator_report(group, set, s)?.movable;
    report.condition_name = "movable: <s,s⁻¹> ∩ <S \\ {s,s⁻¹}> = {e}".into();
    Ok(report)
}

/// Conditions for the split `S₁` versus `S ∖ (S₁ ∪ S₁⁻¹)`.
pub fn check_partition_condition(group: &FiniteGroup, set: &[GroupElement], part: &[GroupElement]) -> Result<PartitionReport> {
    if part.is_empty() {
        return Err(Error::InvalidPartition("S1 is empty".into()));
    }
    if let Some(g) = part.iter().find(|g| !set.contains(g)) {
        return Err(Error::InvalidPartition(format!(
            "{} is in S1 but not in S",
            group.element_label(*g)
        )));
    }
    let sym = check_generating_set(group, set)?;
    partition_report(group, &sym, part)
}

/// `⟨sᵢ⟩ ∩ ⟨sⱼ⟩ = {e}` for every pair of distinct generators.
pub fn check_pairwise_trivial(group: &FiniteGroup, set: &[GroupElement]) -> Result<ConditionReport> {
    let set: BTreeSet<GroupElement> = set.iter().copied().collect();
    if set.len() < 2 {
        return Err(Error::InvalidParameter("pairwise condition needs at least two generators".into()));
    }
    let closures: Vec<BTreeSet<GroupElement>> = set.iter().map(|&g| subgroup_closure(group, [g])).collect();
    let mut witnesses = BTreeSet::new();
    for i in 0..closures.len() {
        for j in i + 1..closures.len() {
            witnesses.extend(closures[i].intersection(&closures[j]).copied());
        }
    }
    witnesses.remove(&group.identity());
    Ok(ConditionReport::new(group, "pairwise: <si> ∩ <sj> = {e}", witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product_of, make_cyclic, make_sl, triangular_generators, elementary_generators, Capacity, TriangularSide};

    fn els(ids: &[usize]) -> Vec<GroupElement> {
        ids.iter().map(|&i| GroupElement(i)).collect()
    }

    #[test]
    fn cyclic_examples() {
        let c12 = make_cyclic(12).unwrap();
        assert!(check_flexible_condition(&c12, &els(&[2, 3]), GroupElement(2)).unwrap().holds);
        let m = check_movable_condition(&c12, &els(&[2, 3]), GroupElement(2)).unwrap();
        assert!(!m.holds);
        assert_eq!(m.witnesses, els(&[6]));

        let c6 = make_cyclic(6).unwrap();
        assert!(check_flexible_condition(&c6, &els(&[2, 3]), GroupElement(2)).unwrap().holds);
        assert!(check_movable_condition(&c6, &els(&[2, 3]), GroupElement(2)).unwrap().holds);

        let c4 = make_cyclic(4).unwrap();
        let f = check_flexible_condition(&c4, &els(&[1, 2]), GroupElement(2)).unwrap();
        assert!(!f.holds);
        assert!(f.witnesses.contains(&GroupElement(2)));
    }

    #[test]
    fn parameter_errors() {
        let c12 = make_cyclic(12).unwrap();
        assert!(matches!(
            check_movable_condition(&c12, &els(&[2, 3]), GroupElement(5)),
            Err(Error::InvalidParameter(_))
        ));
        // S \ {s, s⁻¹} empty
        assert!(matches!(
            check_movable_condition(&c12, &els(&[1, 11]), GroupElement(1)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            check_movable_condition(&c12, &els(&[2, 4]), GroupElement(2)),
            Err(Error::InvalidGenerator(_))
        ));
        assert!(matches!(check_partition_condition(&c12, &els(&[2, 3]), &[]), Err(Error::InvalidPartition(_))));
        assert!(matches!(
            check_partition_condition(&c12, &els(&[2, 3]), &els(&[2, 3])),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(check_pairwise_trivial(&c12, &els(&[2])), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn partition_examples() {
        let sl = make_sl(2, 3).unwrap();
        let upper: Vec<_> = triangular_generators(&sl, TriangularSide::Upper).unwrap().into_iter().collect();
        let all: Vec<_> = elementary_generators(&sl).unwrap().iter().collect();
        let e12 = sl.elementary(0, 1).unwrap();
        let r = check_partition_condition(&sl, &all, &[e12]).unwrap();
        assert!(r.movable.holds && r.flexible.holds);
        assert_eq!(r.blue_class, upper);

        let z3 = make_cyclic(3).unwrap();
        let g = direct_product_of(vec![z3.clone(), z3], Capacity::default()).unwrap();
        let s = [g.parse_element("(1,0)").unwrap(), g.parse_element("(0,1)").unwrap()];
        assert!(check_partition_condition(&g, &s, &s[..1]).unwrap().movable.holds);

        let c12 = make_cyclic(12).unwrap();
        let r = check_partition_condition(&c12, &els(&[2, 3]), &els(&[2])).unwrap();
        assert_eq!(r.movable.witnesses, els(&[6]));
    }

    #[test]
    fn pairwise() {
        let c6 = make_cyclic(6).unwrap();
        assert!(check_pairwise_trivial(&c6, &els(&[2, 3])).unwrap().holds);
        let c12 = make_cyclic(12).unwrap();
        assert!(!check_pairwise_trivial(&c12, &els(&[2, 3])).unwrap().holds);
        let c15 = make_cyclic(15).unwrap();
        assert!(check_pairwise_trivial(&c15, &els(&[3, 5])).unwrap().holds);
    }
}
