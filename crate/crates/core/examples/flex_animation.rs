//! Turn a good NAC-coloring into a motion and write SVG frames of it.
//!
//! cargo run --example flex_animation -- [output-dir]

use std::path::PathBuf;

use rigidcay::flex::{angle_grid, build_flex, export_frames, verify_flex, VerifyOptions};
use rigidcay::io::export::{bounding_box, to_svg};
use rigidcay::theorems::{abelian_family, family_capacity, AbelianSpec};

fn main() -> rigidcay::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("rigidcay-flex"));
    let family = abelian_family(&AbelianSpec::Power { q: 3, alpha: 2 }, family_capacity())?;
    let flex = build_flex(&family.graph, &family.coloring)?;

    let report = verify_flex(&flex, &VerifyOptions::default())?;
    println!(
        "edge drift {:.2e}, distance variation {:.3}, injective {:?}, passed {}",
        report.max_edge_drift, report.max_distance_variation, report.injective, report.passed
    );

    let frames = export_frames(&report.realization, &angle_grid(24))?;
    let viewport = bounding_box(frames.iter().map(|f| f.positions.as_slice()));
    std::fs::create_dir_all(&dir)?;
    for (i, frame) in frames.iter().enumerate() {
        std::fs::write(
            dir.join(format!("frame_{i:03}.svg")),
            to_svg(&family.graph, &frame.positions, Some(&family.coloring), viewport),
        )?;
    }
    println!("wrote {} frames to {}", frames.len(), dir.display());
    Ok(())
}
