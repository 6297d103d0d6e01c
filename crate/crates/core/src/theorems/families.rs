use serde::{Deserialize, Serialize};

use super::{check_partition_condition, PartitionReport};
use crate::error::{Error, Result};
use crate::graph::{cartesian_product, cayley_graph, complete_graph, degree_profile, CayleyGraph, SimpleGraph};
use crate::group::{
    direct_product_of, elementary_generators, make_cyclic_capped, make_sl_capped, triangular_generators, Capacity,
    FiniteGroup, GeneratorSet, GroupElement, TriangularSide,
};
use crate::nac::{generator_partition_coloring, verdict, EdgeColoring};

/// Default element cap for family constructions; `RIGIDCAY_CAPACITY` overrides it.
pub const FAMILY_CAPACITY: usize = 10_000;

pub fn family_capacity() -> Capacity {
    Capacity::from_env_or(FAMILY_CAPACITY)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub vertices: usize,
    pub edges: usize,
    pub regularity: usize,
}

/// A movable Cayley graph with its good NAC-coloring, checked against the
/// closed-form counts at construction.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family_name: String,
    pub graph: SimpleGraph,
    pub coloring: EdgeColoring,
    pub predicted: Prediction,
    pub cayley: CayleyGraph,
    /// Generators per color class (each closed under inversion).
    pub blue_class: Vec<GroupElement>,
    pub red_class: Vec<GroupElement>,
    pub conditions: PartitionReport,
}

impl FamilyInstance {
    pub fn group(&self) -> &FiniteGroup {
        self.cayley.group()
    }

    pub fn actual(&self) -> Prediction {
        Prediction {
            vertices: self.graph.vertex_count(),
            edges: self.graph.edge_count(),
            regularity: degree_profile(&self.graph).regularity().unwrap_or(usize::MAX),
        }
    }
}

fn mismatch(family: &str, predicted: impl ToString, actual: impl ToString) -> Error {
    Error::PredictionMismatch {
        family: family.to_string(),
        predicted: predicted.to_string(),
        actual: actual.to_string(),
    }
}

/// Builds the Cayley graph, colors `blue` (closed under inversion) blue and
/// the rest red, and checks counts, the partition condition, and goodness.
fn assemble(
    name: String,
    group: &FiniteGroup,
    generators: Vec<GroupElement>,
    blue: Vec<GroupElement>,
    regularity: usize,
) -> Result<FamilyInstance> {
    let gens = GeneratorSet::new(group, generators)?.symmetric_closure();
    let cayley = cayley_graph(&gens)?;
    let all: Vec<GroupElement> = gens.iter().collect();
    let conditions = check_partition_condition(group, &all, &blue)?;
    let coloring = generator_partition_coloring(
        &cayley,
        &conditions.blue_class.iter().copied().collect(),
        &conditions.red_class.iter().copied().collect(),
    )?;
    let vertices = group.order();
    let predicted = Prediction {
        vertices,
        edges: vertices * regularity / 2,
        regularity,
    };
    let instance = FamilyInstance {
        family_name: name,
        graph: cayley.graph.clone(),
        coloring,
        predicted,
        blue_class: conditions.blue_class.clone(),
        red_class: conditions.red_class.clone(),
        cayley,
        conditions,
    };
    let actual = instance.actual();
    if actual != predicted {
        return Err(mismatch(&instance.family_name, format!("{predicted:?}"), format!("{actual:?}")));
    }
    if !instance.conditions.movable.holds {
        return Err(mismatch(
            &instance.family_name,
            "<A> ∩ <B> = {e}",
            format!("shared elements {:?}", instance.conditions.movable.witness_labels),
        ));
    }
    let v = verdict(&instance.graph, &instance.coloring)?;
    if !v.is_good {
        return Err(mismatch(&instance.family_name, "good NAC-coloring", format!("{v:?}")));
    }
    Ok(instance)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbelianSpec {
    /// `(Z/q)^alpha`, `q > 2`.
    Power { q: usize, alpha: usize },
    /// `Z/m1 × ... × Z/mr` with pairwise coprime moduli, realized as the
    /// cyclic group of order `m1⋯mr`.
    Crt(Vec<usize>),
    /// `Z/2 × Z/m2 × ...`: the involution adds one to an even degree.
    WithInvolution(Vec<usize>),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Product of cyclic groups with the standard basis as generators and the
/// first basis vector's class blue.
pub fn abelian_family(spec: &AbelianSpec, capacity: Capacity) -> Result<FamilyInstance> {
    match spec {
        AbelianSpec::Power { q, alpha } => {
            if *q <= 2 {
                return Err(Error::InvalidParameter(format!("power form needs q > 2, got {q}")));
            }
            if *alpha < 2 {
                return Err(Error::InvalidParameter(format!("power form needs alpha >= 2, got {alpha}")));
            }
            let moduli = vec![*q; *alpha];
            let group = cyclic_product(&moduli, capacity)?;
            let basis = basis_vectors(&group, moduli.len());
            assemble(format!("abelian-power(q={q},alpha={alpha})"), &group, basis.clone(), vec![basis[0]], 2 * alpha)
        }
        AbelianSpec::Crt(moduli) => {
            if moduli.len() < 2 {
                return Err(Error::InvalidParameter("crt form needs at least two moduli".into()));
            }
            if let Some(m) = moduli.iter().find(|&&m| m <= 2) {
                return Err(Error::InvalidParameter(format!("crt moduli must exceed 2, got {m}")));
            }
            for (i, &a) in moduli.iter().enumerate() {
                for &b in &moduli[i + 1..] {
                    if gcd(a, b) != 1 {
                        return Err(Error::InvalidParameter(format!("crt moduli {a} and {b} are not coprime")));
                    }
                }
            }
            let n = moduli
                .iter()
                .try_fold(1usize, |acc, &m| acc.checked_mul(m))
                .ok_or_else(|| Error::capacity("crt product", u128::MAX, capacity.0))?;
            let group = make_cyclic_capped(n, capacity)?;
            let basis: Vec<GroupElement> = moduli.iter().map(|&m| GroupElement(crt_unit(n, m))).collect();
            let name = format!(
                "abelian-crt({})",
                moduli.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            );
            assemble(name, &group, basis.clone(), vec![basis[0]], 2 * moduli.len())
        }
        AbelianSpec::WithInvolution(moduli) => {
            if moduli.first() != Some(&2) || moduli.len() < 2 {
                return Err(Error::InvalidParameter(
                    "with-involution form needs moduli 2, m2, ... with at least one m > 2".into(),
                ));
            }
            if let Some(m) = moduli[1..].iter().find(|&&m| m <= 2) {
                return Err(Error::InvalidParameter(format!("moduli after the leading 2 must exceed 2, got {m}")));
            }
            let group = cyclic_product(moduli, capacity)?;
            let basis = basis_vectors(&group, moduli.len());
            let name = format!(
                "abelian-with-involution({})",
                moduli.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            );
            assemble(name, &group, basis.clone(), vec![basis[0]], 2 * (moduli.len() - 1) + 1)
        }
    }
}

/// The residue mod `n` that is 1 mod `m` and 0 mod `n / m`.
fn crt_unit(n: usize, m: usize) -> usize {
    let rest = n / m;
    (0..n).step_by(rest).find(|x| x % m == 1).expect("coprime moduli")
}

fn cyclic_product(moduli: &[usize], capacity: Capacity) -> Result<FiniteGroup> {
    let factors = moduli
        .iter()
        .map(|&m| make_cyclic_capped(m, capacity))
        .collect::<Result<Vec<_>>>()?;
    direct_product_of(factors, capacity)
}

fn basis_vectors(group: &FiniteGroup, rank: usize) -> Vec<GroupElement> {
    (0..rank)
        .map(|i| {
            let parts: Vec<GroupElement> = (0..rank).map(|j| GroupElement(usize::from(i == j))).collect();
            group.compose(&parts).expect("basis vector")
        })
        .collect()
}

/// Nonidentity elements of each coordinate axis of a two-factor product.
fn axes(group: &FiniteGroup) -> (Vec<GroupElement>, Vec<GroupElement>) {
    let factors = group.factors().expect("product group");
    let (f1, f2) = (&factors[0], &factors[1]);
    let first = f1
        .elements()
        .filter(|&a| a != f1.identity())
        .map(|a| group.compose(&[a, f2.identity()]).unwrap())
        .collect();
    let second = f2
        .elements()
        .filter(|&b| b != f2.identity())
        .map(|b| group.compose(&[f1.identity(), b]).unwrap())
        .collect();
    (first, second)
}

/// `Z/n × Z/n^k` generated by both full axes; first-axis edges blue.
pub fn dense_abelian_family(n: usize, k: usize, capacity: Capacity) -> Result<FamilyInstance> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter(format!("dense family needs n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    let nk = (n as u128).checked_pow(k as u32).filter(|&v| v <= usize::MAX as u128);
    let nk = match nk {
        Some(v) if v * n as u128 <= capacity.0 as u128 => v as usize,
        Some(v) => return Err(Error::capacity(format!("dense({n},{k})"), v * n as u128, capacity.0)),
        None => return Err(Error::capacity(format!("dense({n},{k})"), u128::MAX, capacity.0)),
    };
    let group = direct_product_of(
        vec![make_cyclic_capped(n, capacity)?, make_cyclic_capped(nk, capacity)?],
        capacity,
    )?;
    let (first, second) = axes(&group);
    let gens = first.iter().chain(&second).copied().collect();
    assemble(format!("dense(n={n},k={k})"), &group, gens, first, n + nk - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlVariant {
    /// `{E_{i,i+1}, E_{i+1,i}}`
    Elementary,
    /// All nonidentity unipotent upper and lower triangular matrices.
    Triangular,
}

/// `SL_n(F_p)` with upper generators blue and lower generators red.
pub fn sl_family(n: usize, p: u32, variant: SlVariant, capacity: Capacity) -> Result<FamilyInstance> {
    let group = make_sl_capped(n, p, capacity)?;
    match variant {
        SlVariant::Elementary => {
            let gens: Vec<GroupElement> = elementary_generators(&group)?.iter().collect();
            let upper: Vec<GroupElement> = (0..n - 1).map(|i| group.elementary(i, i + 1).unwrap()).collect();
            let regularity = if p == 2 { 2 * (n - 1) } else { 4 * (n - 1) };
            assemble(format!("sl-elementary(n={n},p={p})"), &group, gens, upper, regularity)
        }
        SlVariant::Triangular => {
            let upper: Vec<GroupElement> = triangular_generators(&group, TriangularSide::Upper)?.into_iter().collect();
            let lower = triangular_generators(&group, TriangularSide::Lower)?;
            let side = (p as usize).pow((n * (n - 1) / 2) as u32) - 1;
            if upper.len() != side || lower.len() != side {
                return Err(mismatch("sl-triangular", side, upper.len()));
            }
            let gens = upper.iter().copied().chain(lower).collect();
            assemble(format!("sl-triangular(n={n},p={p})"), &group, gens, upper, 2 * side)
        }
    }
}

/// `G1 × G2` with `A = (G1∖{e}) × {e} ∪ {e} × (G2∖{e})`: the cartesian product
/// `K_{|G1|} □ K_{|G2|}`. First-axis edges red, second-axis edges blue,
/// matching the product coloring.
pub fn complete_product_family(g1: &FiniteGroup, g2: &FiniteGroup, capacity: Capacity) -> Result<FamilyInstance> {
    if g1.order() < 2 || g2.order() < 2 {
        return Err(Error::InvalidParameter("complete product needs two nontrivial factors".into()));
    }
    let group = direct_product_of(vec![g1.clone(), g2.clone()], capacity)?;
    let (first, second) = axes(&group);
    let gens = first.iter().chain(&second).copied().collect();
    let name = format!("complete-product({} x {})", g1.descriptor(), g2.descriptor());
    let instance = assemble(name, &group, gens, second, g1.order() + g2.order() - 2)?;
    let product = cartesian_product(&complete_graph(g1.order()), &complete_graph(g2.order()));
    if product.edges() != instance.graph.edges() {
        return Err(mismatch(&instance.family_name, "edges of the cartesian product of complete graphs", "different edge set"));
    }
    Ok(instance)
}

/// `SL_n(F_p) × SL_{n^k}(F_p)`.
pub fn sl_product_family(n: usize, p: u32, k: u32, capacity: Capacity) -> Result<FamilyInstance> {
    let m = n
        .checked_pow(k)
        .ok_or_else(|| Error::capacity(format!("sl:{n}^{k}:{p}"), u128::MAX, capacity.0))?;
    sl_pair_product_family((n, p), (m, p), capacity)
}

/// `SL_{n1}(F_{p1}) × SL_{n2}(F_{p2})`.
pub fn sl_pair_product_family(first: (usize, u32), second: (usize, u32), capacity: Capacity) -> Result<FamilyInstance> {
    let g1 = make_sl_capped(first.0, first.1, capacity)?;
    let g2 = make_sl_capped(second.0, second.1, capacity)?;
    let mut instance = complete_product_family(&g1, &g2, capacity)?;
    instance.family_name = format!(
        "sl-product(SL_{}(F_{}) x SL_{}(F_{}))",
        first.0, first.1, second.0, second.1
    );
    Ok(instance)
}

/// A movable `r`-regular Cayley graph: `SL_{ρ+1}(F_2)` with its elementary
/// generators for `r = 2ρ`, plus `E_{1,3}` (kept blue) for `r = 2ρ+1`.
/// `r = 3` has no `E_{1,3}` in `SL_2`, so it uses `Z/2 × Z/3`.
pub fn regularity_construction(r: usize, capacity: Capacity) -> Result<FamilyInstance> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("regularity must be at least 2, got {r}")));
    }
    let mut instance = if r == 3 {
        abelian_family(&AbelianSpec::WithInvolution(vec![2, 3]), capacity)?
    } else if r % 2 == 0 {
        sl_family(r / 2 + 1, 2, SlVariant::Elementary, capacity)?
    } else {
        let n = (r - 1) / 2 + 1;
        let group = make_sl_capped(n, 2, capacity)?;
        let e13 = group.elementary(0, 2).expect("n >= 3");
        let mut gens: Vec<GroupElement> = elementary_generators(&group)?.iter().collect();
        gens.push(e13);
        let mut blue: Vec<GroupElement> = (0..n - 1).map(|i| group.elementary(i, i + 1).unwrap()).collect();
        blue.push(e13);
        assemble(String::new(), &group, gens, blue, r)?
    };
    instance.family_name = format!("regularity(r={r})");
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nac::{is_good_nac, product_coloring};

    fn cap() -> Capacity {
        Capacity(FAMILY_CAPACITY)
    }

    fn stats(f: &FamilyInstance) -> (usize, usize, usize) {
        let a = f.actual();
        (a.vertices, a.edges, a.regularity)
    }

    #[test]
    fn abelian_examples() {
        let f = abelian_family(&AbelianSpec::Power { q: 3, alpha: 2 }, cap()).unwrap();
        assert_eq!(stats(&f), (9, 18, 4));

        let f = abelian_family(&AbelianSpec::Crt(vec![4, 3]), cap()).unwrap();
        assert_eq!(stats(&f), (12, 24, 4));
        let gens: Vec<usize> = f.cayley.generators.iter().map(|g| g.0).collect();
        assert_eq!(gens, vec![3, 4, 8, 9]);

        let f = abelian_family(&AbelianSpec::WithInvolution(vec![2, 3]), cap()).unwrap();
        assert_eq!(stats(&f), (6, 9, 3));
    }

    #[test]
    fn abelian_rejections() {
        let bad = [
            AbelianSpec::Power { q: 2, alpha: 3 },
            AbelianSpec::Crt(vec![4, 6]),
            AbelianSpec::Crt(vec![5]),
            AbelianSpec::WithInvolution(vec![3, 3]),
        ];
        for spec in bad {
            assert!(matches!(abelian_family(&spec, cap()), Err(Error::InvalidParameter(_))), "{spec:?}");
        }
    }

    #[test]
    fn dense_examples() {
        assert_eq!(stats(&dense_abelian_family(4, 1, cap()).unwrap()), (16, 48, 6));
        assert_eq!(stats(&dense_abelian_family(2, 1, cap()).unwrap()), (4, 4, 2));
        assert_eq!(stats(&dense_abelian_family(3, 2, cap()).unwrap()), (27, 135, 10));
        assert!(matches!(dense_abelian_family(10, 4, cap()), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn dense_matches_product_of_complete_graphs() {
        for n in 2..=8 {
            let f = dense_abelian_family(n, 1, cap()).unwrap();
            let product = cartesian_product(&complete_graph(n), &complete_graph(n));
            assert_eq!(f.graph.edges(), product.edges(), "n={n}");
            assert!(is_good_nac(&product, &product_coloring(&product).unwrap()).unwrap());
        }
    }

    #[test]
    fn sl_examples() {
        assert_eq!(stats(&sl_family(2, 3, SlVariant::Elementary, cap()).unwrap()), (24, 48, 4));
        assert_eq!(stats(&sl_family(2, 2, SlVariant::Elementary, cap()).unwrap()), (6, 6, 2));
        assert_eq!(stats(&sl_family(2, 3, SlVariant::Triangular, cap()).unwrap()), (24, 48, 4));
        assert_eq!(sl_family(3, 2, SlVariant::Triangular, cap()).unwrap().actual().regularity, 14);
        assert_eq!(sl_family(3, 2, SlVariant::Elementary, cap()).unwrap().actual().regularity, 4);
    }

    #[test]
    fn sl_products() {
        let f = sl_product_family(2, 2, 1, cap()).unwrap();
        assert_eq!(stats(&f), (36, 180, 10));
        let f = sl_pair_product_family((2, 2), (2, 3), cap()).unwrap();
        assert_eq!(stats(&f), (144, 2016, 28));
        let product = cartesian_product(&complete_graph(6), &complete_graph(24));
        assert_eq!(f.coloring, product_coloring(&product).unwrap());
        let trivial = make_cyclic_capped(1, cap()).unwrap();
        assert!(complete_product_family(&trivial, &trivial, cap()).is_err());
    }

    #[test]
    fn regularity_sweep() {
        for r in 2..=5 {
            let f = regularity_construction(r, cap()).unwrap();
            assert_eq!(f.actual().regularity, r);
        }
        assert_eq!(regularity_construction(4, cap()).unwrap().actual().vertices, 168);
        assert!(matches!(regularity_construction(1, cap()), Err(Error::InvalidParameter(_))));
        assert!(matches!(regularity_construction(6, cap()), Err(Error::CapacityExceeded { .. })));
    }
}
