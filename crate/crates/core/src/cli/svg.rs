//! Deterministic SVG drawings of one- and two-dimensional complexes.
//!
//! Positions are computed in floating point for layout only; every label
//! shows the exact coordinates.

use std::fmt::Write;

use crate::fans::SliceComplex;
use crate::ordfield::FieldElement;
use crate::polyhedra::SlicePolyhedron;
use crate::projtoric::{HeightValue, HeightedConfig, Subdivision};

use super::CliError;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
];

struct Label {
    at: Vec<f64>,
    text: String,
}

struct Scene {
    n: usize,
    cells: Vec<Vec<Vec<f64>>>,
    labels: Vec<Label>,
}

fn point_label(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn to_f64(v: &[FieldElement]) -> Vec<f64> {
    v.iter().map(FieldElement::to_f64).collect()
}

/// Corner points of a cell, with unbounded directions cut at `reach`.
fn cell_points(cell: &SlicePolyhedron, reach: f64) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = cell.vertices.iter().map(|v| to_f64(v)).collect();
    let base = pts.clone();
    for r in &cell.recession_rays {
        let len = r.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
        for b in &base {
            pts.push(
                b.iter()
                    .zip(r)
                    .map(|(x, &y)| x + reach * y as f64 / len)
                    .collect(),
            );
        }
    }
    pts
}

fn bounds(points: impl Iterator<Item = Vec<f64>>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for p in points {
        for k in 0..n {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    for k in 0..n {
        if !lo[k].is_finite() {
            lo[k] = 0.0;
            hi[k] = 0.0;
        }
    }
    (lo, hi)
}

fn scene_from_cells(
    n: usize,
    cells: &[&SlicePolyhedron],
    labels: Vec<(Vec<FieldElement>, String)>,
) -> Scene {
    let (lo, hi) = bounds(
        cells
            .iter()
            .flat_map(|c| c.vertices.iter().map(|v| to_f64(v))),
        n,
    );
    let span = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| b - a)
        .fold(1.0_f64, f64::max);
    Scene {
        n,
        cells: cells.iter().map(|c| cell_points(c, span)).collect(),
        labels: labels
            .into_iter()
            .map(|(v, text)| Label {
                at: to_f64(&v),
                text,
            })
            .collect(),
    }
}

/// Orders the points of a convex planar set around its centroid.
fn around_centroid(mut pts: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let m = pts.len() as f64;
    let cx = pts.iter().map(|p| p[0]).sum::<f64>() / m;
    let cy = pts.iter().map(|p| p[1]).sum::<f64>() / m;
    pts.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    pts
}

fn render(scene: &Scene, title: &str) -> String {
    let all = scene
        .cells
        .iter()
        .flatten()
        .cloned()
        .chain(scene.labels.iter().map(|l| l.at.clone()));
    let (lo, hi) = bounds(all, scene.n);
    let sx = (hi[0] - lo[0]).max(1e-9);
    let map_x = |x: f64| MARGIN + (x - lo[0]) / sx * (WIDTH - 2.0 * MARGIN);
    let map_y = |p: &[f64]| -> f64 {
        if scene.n == 1 {
            HEIGHT / 2.0
        } else {
            let sy = (hi[1] - lo[1]).max(1e-9);
            HEIGHT - MARGIN - (p[1] - lo[1]) / sy * (HEIGHT - 2.0 * MARGIN)
        }
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#
    );
    let _ = writeln!(out, r##"<rect width="800" height="600" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r##"<text x="20" y="30" font-family="monospace" font-size="16" fill="#222222">{}</text>"##,
        title
    );
    for (i, cell) in scene.cells.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if scene.n == 1 {
            let xs: Vec<f64> = cell.iter().map(|p| map_x(p[0])).collect();
            let x0 = xs.iter().cloned().fold(f64::INFINITY, f64::min);
            let x1 = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let _ = writeln!(
                out,
                r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="24" fill="{}" fill-opacity="0.5" stroke="#333333"/>"##,
                x0,
                HEIGHT / 2.0 - 12.0,
                (x1 - x0).max(2.0),
                color
            );
        } else {
            let pts = around_centroid(cell.clone());
            let coords: Vec<String> = pts
                .iter()
                .map(|p| format!("{:.2},{:.2}", map_x(p[0]), map_y(p)))
                .collect();
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="{}" fill-opacity="0.5" stroke="#333333" stroke-width="2"/>"##,
                coords.join(" "),
                color
            );
        }
    }
    for (k, l) in scene.labels.iter().enumerate() {
        let x = map_x(l.at[0]);
        let y = map_y(&l.at);
        let dy = if scene.n == 1 && k % 2 == 1 {
            34.0
        } else {
            -12.0
        };
        let _ = writeln!(
            out,
            r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#000000"/>"##,
            x, y
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="13" text-anchor="middle" fill="#000000">{}</text>"##,
            x,
            y + dy,
            l.text
        );
    }
    out.push_str("</svg>\n");
    out
}

fn check_dim(n: usize) -> Result<(), CliError> {
    if n > 2 {
        return Err(CliError::DimensionTooHigh(n));
    }
    Ok(())
}

pub fn slice_complex_svg(sc: &SliceComplex) -> Result<String, CliError> {
    check_dim(sc.n)?;
    let tops = sc.top_cells();
    let labels = sc
        .vertices
        .iter()
        .map(|v| (v.clone(), point_label(v)))
        .collect();
    Ok(render(
        &scene_from_cells(sc.n, &tops, labels),
        "slice complex",
    ))
}

pub fn cone_slice_svg(s: &SlicePolyhedron, n: usize) -> Result<String, CliError> {
    check_dim(n)?;
    let labels = s
        .vertices
        .iter()
        .map(|v| (v.clone(), point_label(v)))
        .collect();
    Ok(render(&scene_from_cells(n, &[s], labels), "cone slice"))
}

pub fn subdivision_svg(sub: &Subdivision, cfg: &HeightedConfig) -> Result<String, CliError> {
    check_dim(sub.n)?;
    let tops: Vec<SlicePolyhedron> = sub.top_cells().iter().map(|f| f.polytope()).collect();
    let refs: Vec<&SlicePolyhedron> = tops.iter().collect();
    let labels = cfg
        .finite_indices()
        .into_iter()
        .map(|j| {
            let u: Vec<FieldElement> = cfg.points()[j]
                .iter()
                .map(|&x| FieldElement::from_int(x))
                .collect();
            let a = match &cfg.heights()[j] {
                HeightValue::Finite(x) => x.to_string(),
                HeightValue::Infinite => "inf".to_string(),
            };
            let text = format!("u{} {} a={}", j, point_label(&u), a);
            (u, text)
        })
        .collect();
    Ok(render(
        &scene_from_cells(sub.n, &refs, labels),
        "weight subdivision",
    ))
}
