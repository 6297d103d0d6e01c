//! One-parameter planar flexes built from NAC-colorings.
//!
//! Every vertex `v` gets the position `R(α)·red_anchor[r(v)] + blue_anchor[b(v)]`
//! where `r(v)` and `b(v)` are its red and blue component indices and `R(α)` is
//! the rotation by `α`. A red edge stays inside one red component, so its
//! vector is a difference of blue anchors and never changes; a blue edge's
//! vector is a rotated difference of red anchors, so its length never changes.
//! For a good coloring the `(r, b)` keys are distinct, which makes the
//! realization injective for all but finitely many angles.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, SimpleGraph};
use crate::nac::{verdict, Color, EdgeColoring};

pub type Point = [f64; 2];

/// Anchor perturbation size used when a sampled frame is not injective.
pub const PERTURBATION: f64 = 1e-3;

pub fn red_anchor(i: usize) -> Point {
    let x = i as f64;
    [x, 0.137 * x * x]
}

pub fn blue_anchor(j: usize) -> Point {
    let y = j as f64;
    [0.149 * y * y, y]
}

fn rotate(p: Point, angle: f64) -> Point {
    let (s, c) = angle.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamRealization {
    pub red_anchor: Vec<Point>,
    pub blue_anchor: Vec<Point>,
    /// `(red component, blue component)` per vertex.
    pub vertex_key: Vec<(usize, usize)>,
    pub edges: Vec<Edge>,
    pub edge_colors: Vec<Color>,
    /// Built from a good NAC-coloring.
    pub is_good: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealizationFrame {
    pub angle: f64,
    pub positions: Vec<Point>,
    pub edge_lengths: Vec<f64>,
}

pub fn build_flex(graph: &SimpleGraph, coloring: &EdgeColoring) -> Result<ParamRealization> {
    if graph.edge_count() == 0 {
        return Err(Error::InvalidColoring("graph has no edges to color".into()));
    }
    let v = verdict(graph, coloring).map_err(|e| Error::InvalidColoring(e.to_string()))?;
    if !v.is_nac {
        let reason = if !v.is_surjective {
            "coloring uses only one color".to_string()
        } else {
            format!("edge {:?} lies inside a component of the other color", v.offending_edge.expect("offending edge"))
        };
        return Err(Error::InvalidColoring(format!("not a NAC-coloring: {reason}")));
    }
    let red = coloring.components(graph, Color::Red);
    let blue = coloring.components(graph, Color::Blue);
    Ok(ParamRealization {
        red_anchor: (0..red.component_count).map(red_anchor).collect(),
        blue_anchor: (0..blue.component_count).map(blue_anchor).collect(),
        vertex_key: red.component_of.iter().copied().zip(blue.component_of.iter().copied()).collect(),
        edges: graph.edges().to_vec(),
        edge_colors: coloring.colors().to_vec(),
        is_good: v.is_good,
    })
}

impl ParamRealization {
    pub fn vertex_count(&self) -> usize {
        self.vertex_key.len()
    }

    pub fn position(&self, v: usize, angle: f64) -> Point {
        let (r, b) = self.vertex_key[v];
        let rot = rotate(self.red_anchor[r], angle);
        let base = self.blue_anchor[b];
        [rot[0] + base[0], rot[1] + base[1]]
    }

    pub fn positions(&self, angle: f64) -> Vec<Point> {
        (0..self.vertex_count()).map(|v| self.position(v, angle)).collect()
    }

    /// Same flex after a global rotation by `theta` followed by a translation.
    pub fn transformed(&self, theta: f64, shift: Point) -> Self {
        let mut out = self.clone();
        for a in &mut out.red_anchor {
            *a = rotate(*a, theta);
        }
        for b in &mut out.blue_anchor {
            let r = rotate(*b, theta);
            *b = [r[0] + shift[0], r[1] + shift[1]];
        }
        out
    }

    fn perturbed(&self, rng: &mut ChaCha8Rng) -> Self {
        let mut out = self.clone();
        for p in out.red_anchor.iter_mut().chain(out.blue_anchor.iter_mut()) {
            p[0] += rng.gen_range(-PERTURBATION..=PERTURBATION);
            p[1] += rng.gen_range(-PERTURBATION..=PERTURBATION);
        }
        out
    }

    /// Largest change of any inter-vertex distance between two angles.
    pub fn max_distance_change(&self, a: f64, b: f64) -> f64 {
        let (pa, pb) = (self.positions(a), self.positions(b));
        let n = self.vertex_count();
        let mut best = 0.0f64;
        for u in 0..n {
            for v in u + 1..n {
                best = best.max((dist(pa[u], pa[v]) - dist(pb[u], pb[v])).abs());
            }
        }
        best
    }
}

pub fn evaluate(realization: &ParamRealization, angle: f64) -> RealizationFrame {
    let positions = realization.positions(angle);
    let edge_lengths = realization
        .edges
        .iter()
        .map(|&(u, v)| dist(positions[u], positions[v]))
        .collect();
    RealizationFrame {
        angle,
        positions,
        edge_lengths,
    }
}

/// `n` equally spaced angles over `[0, 2π)`, starting at 0.
pub fn angle_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

pub fn export_frames(realization: &ParamRealization, angles: &[f64]) -> Result<Vec<RealizationFrame>> {
    if angles.is_empty() {
        return Err(Error::InvalidParameter("angle grid is empty".into()));
    }
    Ok(angles.iter().map(|&a| evaluate(realization, a)).collect())
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub sample_count: usize,
    pub tolerance: f64,
    /// Two vertices closer than this count as coincident.
    pub coincidence: f64,
    pub max_retries: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            sample_count: 100,
            tolerance: 1e-9,
            coincidence: 1e-6,
            max_retries: 3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlexReport {
    pub samples: usize,
    pub max_edge_drift: f64,
    pub lengths_preserved: bool,
    /// Largest change of a non-adjacent vertex-pair distance over the samples.
    pub max_distance_variation: f64,
    pub non_congruent: bool,
    /// Checked for good colorings only.
    pub injective: Option<bool>,
    pub min_separation: f64,
    pub perturbations: usize,
    pub failing_angle: Option<f64>,
    pub passed: bool,
    /// The realization that was finally checked (perturbed if retries happened).
    #[serde(skip)]
    pub realization: ParamRealization,
}

struct Sweep {
    drift: f64,
    variation: f64,
    min_separation: f64,
    first_coincidence: Option<f64>,
}

fn sweep(r: &ParamRealization, angles: &[f64], adjacency: &[Vec<bool>], coincidence: f64) -> Sweep {
    let base = evaluate(r, 0.0);
    let n = r.vertex_count();
    let mut out = Sweep {
        drift: 0.0,
        variation: 0.0,
        min_separation: f64::INFINITY,
        first_coincidence: None,
    };
    for &angle in angles {
        let frame = evaluate(r, angle);
        for (len, len0) in frame.edge_lengths.iter().zip(&base.edge_lengths) {
            out.drift = out.drift.max((len - len0).abs());
        }
        for u in 0..n {
            for v in u + 1..n {
                let d = dist(frame.positions[u], frame.positions[v]);
                if !adjacency[u][v] {
                    let d0 = dist(base.positions[u], base.positions[v]);
                    out.variation = out.variation.max((d - d0).abs());
                }
                out.min_separation = out.min_separation.min(d);
                if d <= coincidence && out.first_coincidence.is_none() {
                    out.first_coincidence = Some(angle);
                }
            }
        }
    }
    out
}

/// Samples the flex on an even angle grid and checks that edge lengths stay
/// fixed, that some non-adjacent distance changes (the frames are not all
/// congruent), and, for good colorings, that every frame is injective.
/// Coincidences trigger a seeded anchor perturbation and a retry.
pub fn verify_flex(realization: &ParamRealization, options: &VerifyOptions) -> Result<FlexReport> {
    if options.sample_count < 2 {
        return Err(Error::InvalidParameter("verification needs at least 2 samples".into()));
    }
    let n = realization.vertex_count();
    let mut adjacency = vec![vec![false; n]; n];
    for &(u, v) in &realization.edges {
        adjacency[u][v] = true;
        adjacency[v][u] = true;
    }
    let angles = angle_grid(options.sample_count);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut current = realization.clone();
    let mut perturbations = 0;
    loop {
        let s = sweep(&current, &angles, &adjacency, options.coincidence);
        let coincidence = if current.is_good { s.first_coincidence } else { None };
        if coincidence.is_some() && perturbations < options.max_retries {
            perturbations += 1;
            current = current.perturbed(&mut rng);
            continue;
        }
        let lengths_preserved = s.drift < options.tolerance;
        let non_congruent = s.variation > 10.0 * options.tolerance;
        let injective = current.is_good.then_some(coincidence.is_none());
        return Ok(FlexReport {
            samples: options.sample_count,
            max_edge_drift: s.drift,
            lengths_preserved,
            max_distance_variation: s.variation,
            non_congruent,
            injective,
            min_separation: s.min_separation,
            perturbations,
            failing_angle: coincidence,
            passed: lengths_preserved && non_congruent && injective != Some(false),
            realization: current,
        });
    }
}
