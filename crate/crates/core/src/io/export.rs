//! Export-only formats: Graphviz DOT and per-frame SVG drawings.

use std::fmt::Write;

use crate::flex::Point;
use crate::graph::SimpleGraph;
use crate::nac::{Color, EdgeColoring};

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Blue => "blue",
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT graph; edges carry `color=` attributes when a coloring is given.
pub fn to_dot(graph: &SimpleGraph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n");
    if let Some(group) = graph.group() {
        let _ = writeln!(out, "  label=\"{}\";", escape(&group.to_string()));
    }
    for v in 0..graph.vertex_count() {
        match graph.labels() {
            Some(labels) => {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", escape(&labels[v]));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        match coloring {
            Some(c) => {
                let _ = writeln!(out, "  {u} -- {v} [color={}];", color_name(c.color(i)));
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Bounding box `(min_x, min_y, max_x, max_y)` over several frames, so that
/// an animation keeps one viewport.
pub fn bounding_box<'a>(frames: impl IntoIterator<Item = &'a [Point]>) -> (f64, f64, f64, f64) {
    let mut bb = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for frame in frames {
        for p in frame {
            bb.0 = bb.0.min(p[0]);
            bb.1 = bb.1.min(p[1]);
            bb.2 = bb.2.max(p[0]);
            bb.3 = bb.3.max(p[1]);
        }
    }
    if !bb.0.is_finite() {
        return (0.0, 0.0, 1.0, 1.0);
    }
    bb
}

/// SVG drawing of one realization. Edges are colored by `coloring` (gray
/// without one); `viewport` is a bounding box from [`bounding_box`].
pub fn to_svg(
    graph: &SimpleGraph,
    positions: &[Point],
    coloring: Option<&EdgeColoring>,
    viewport: (f64, f64, f64, f64),
) -> String {
    let (min_x, min_y, max_x, max_y) = viewport;
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let margin = 0.08 * span;
    let size = 600.0;
    let scale = size / (span + 2.0 * margin);
    // flip y so the drawing matches the usual math orientation
    let map = |p: Point| ((p[0] - min_x + margin) * scale, (max_y - p[1] + margin) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        let (x1, y1) = map(positions[u]);
        let (x2, y2) = map(positions[v]);
        let stroke = coloring.map(|c| color_name(c.color(i))).unwrap_or("gray");
        let _ = writeln!(
            out,
            "  <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"{stroke}\" stroke-width=\"2\"/>"
        );
    }
    for (v, &p) in positions.iter().enumerate() {
        let (x, y) = map(p);
        let _ = writeln!(out, "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\" fill=\"black\"><title>{v}</title></circle>");
    }
    out.push_str("</svg>\n");
    out
}
