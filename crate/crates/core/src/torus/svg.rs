//! SVG diagrams of planar tilings: translates colored by velocity class.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Result, TileError};

use super::cells::CellSet;
use super::symbolic::SymbolicVector;
use super::velocity::velocity_decomposition;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 10.0;
const PALETTE: [&str; 8] = [
    "#4caf50", "#2196f3", "#f44336", "#ff9800", "#9c27b0", "#00bcd4", "#795548", "#607d8b",
];

fn px(v: f64) -> String {
    format!("{:.3}", v * SIZE + MARGIN)
}

fn py(v: f64) -> String {
    format!("{:.3}", (1.0 - v) * SIZE + MARGIN)
}

/// Renders `F + A` in `[0,1)^2` after substituting numeric values for the
/// symbols. Translates wrap around the torus; shift points are black squares.
pub fn render_svg(
    a: &CellSet,
    shifts: &[SymbolicVector],
    values: &BTreeMap<String, f64>,
) -> Result<String> {
    if a.dim() != 2 || shifts.iter().any(|f| f.dim() != 2) {
        return Err(TileError::InvalidInput("rendering needs d = 2".into()));
    }
    let class_of: Vec<usize> = if shifts.is_empty() {
        vec![]
    } else {
        let dec = velocity_decomposition(shifts)?;
        let mut class_of = vec![0; shifts.len()];
        for (k, members) in dec.classes.iter().enumerate() {
            for &i in members {
                class_of[i] = k;
            }
        }
        class_of
    };
    let points: Vec<Vec<f64>> = shifts
        .iter()
        .map(|f| {
            Ok(f.substitute_f64(values)?
                .iter()
                .map(|v| v.rem_euclid(1.0))
                .collect())
        })
        .collect::<Result<_>>()?;

    let q = a.resolution() as f64;
    let cell = SIZE / q;
    let total = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="domain"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/></clipPath></defs>"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="white" stroke="black"/>"#
    );
    let _ = writeln!(out, r#"<g id="tiles" clip-path="url(#domain)">"#);
    let cells = a.cells();
    for (i, p) in points.iter().enumerate() {
        let color = PALETTE[class_of[i] % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<g class="translate" data-shift="{i}" data-class="{}" fill="{color}" fill-opacity="0.8" stroke="black" stroke-width="0.5">"#,
            class_of[i]
        );
        for c in &cells {
            let (x0, y0) = (c[0] as f64 / q + p[0], c[1] as f64 / q + p[1]);
            for (dx, dy) in [(0.0, 0.0), (-1.0, 0.0), (0.0, -1.0), (-1.0, -1.0)] {
                let (x, y) = (x0 + dx, y0 + dy);
                if x >= 1.0 || y >= 1.0 || x + 1.0 / q <= 0.0 || y + 1.0 / q <= 0.0 {
                    continue;
                }
                let _ = writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{cell:.3}" height="{cell:.3}"/>"#,
                    px(x),
                    py(y + 1.0 / q)
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g id="shifts" fill="black">"#);
    for p in &points {
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="6" height="6"/>"#,
            p[0] * SIZE + MARGIN - 3.0,
            (1.0 - p[1]) * SIZE + MARGIN - 3.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}
