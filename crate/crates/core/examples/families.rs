//! Construct the movable families with their predicted and actual counts.
//!
//! cargo run --release --example families

use rigidcay::group::Capacity;
use rigidcay::theorems::{
    abelian_family, dense_abelian_family, regularity_construction, sl_family, sl_pair_product_family, AbelianSpec,
    FamilyInstance, SlVariant, FAMILY_CAPACITY,
};

fn show(f: &FamilyInstance) {
    let a = f.actual();
    println!(
        "{:<45} |V| = {:>4}  |E| = {:>5}  degree {:>2}  (predicted {}/{}/{})",
        f.family_name, a.vertices, a.edges, a.regularity, f.predicted.vertices, f.predicted.edges, f.predicted.regularity
    );
}

fn main() -> rigidcay::Result<()> {
    let cap = Capacity(FAMILY_CAPACITY);
    show(&abelian_family(&AbelianSpec::Power { q: 3, alpha: 2 }, cap)?);
    let crt = abelian_family(&AbelianSpec::Crt(vec![4, 3]), cap)?;
    show(&crt);
    println!("  generators in Z/12: {:?}", crt.cayley.generators.labels());
    show(&abelian_family(&AbelianSpec::WithInvolution(vec![2, 3]), cap)?);
    for n in 2..=5 {
        show(&dense_abelian_family(n, 1, cap)?);
    }
    show(&dense_abelian_family(3, 2, cap)?);
    show(&sl_family(2, 3, SlVariant::Elementary, cap)?);
    show(&sl_family(3, 2, SlVariant::Triangular, cap)?);
    show(&sl_pair_product_family((2, 2), (2, 3), cap)?);
    for r in 2..=5 {
        show(&regularity_construction(r, cap)?);
    }
    Ok(())
}
