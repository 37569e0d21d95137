//! OFF export of a triangulation and SVG pictures of `Delta_c^+` in rank 3.

use std::fmt::Write;

use thiserror::Error;

use super::{Context, Triangulation};
use crate::absolute::{commutation_classes, reflection_name};
use crate::coxeter::Reflection;
use crate::geometry::{Cone, GeometryError};
use crate::numfield::{Scalar, Vector};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("SVG pictures need rank 3, got rank {0}")]
    WrongRank(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn exact(x: &Scalar) -> bool {
    x.as_rational().is_some()
}

/// `nOFF` text: one vertex per group element in id order, one line per cell.
/// Coordinates are pairings with the simple roots; irrational coordinates are
/// written as decimals and repeated exactly in comments.
pub fn off_string(tri: &Triangulation) -> String {
    let mut verts: Vec<(usize, &Vector)> = Vec::new();
    for cell in &tri.cells {
        for (x, v) in cell.elements.iter().zip(&cell.vertices) {
            verts.push((x.index(), v));
        }
    }
    verts.sort_by_key(|p| p.0);
    verts.dedup_by_key(|p| p.0);
    let r = tri.base_point.len();
    let all_exact = verts.iter().all(|(_, v)| v.iter().all(exact));
    let mut out = String::new();
    writeln!(out, "nOFF").unwrap();
    writeln!(out, "{r}").unwrap();
    writeln!(out, "{} {} 0", verts.len(), tri.cells.len()).unwrap();
    writeln!(out, "# exact: {all_exact}").unwrap();
    writeln!(out, "# coordinates: pairings with the simple roots").unwrap();
    for (_, v) in &verts {
        let cs: Vec<String> = v
            .iter()
            .map(|x| if exact(x) { x.to_string() } else { format!("{:.12}", x.to_f64()) })
            .collect();
        writeln!(out, "{}", cs.join(" ")).unwrap();
    }
    if !all_exact {
        for (k, (_, v)) in verts.iter().enumerate() {
            let cs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            writeln!(out, "# exact v{k}: {}", cs.join("; ")).unwrap();
        }
    }
    let pos = |id: usize| verts.binary_search_by_key(&id, |p| p.0).unwrap();
    for cell in &tri.cells {
        let ids: Vec<String> = cell.elements.iter().map(|x| pos(x.index()).to_string()).collect();
        writeln!(out, "{} {}", ids.len(), ids.join(" ")).unwrap();
    }
    out
}

const CORNERS: [(f64, f64); 3] = [(60.0, 460.0), (460.0, 460.0), (260.0, 113.589)];

/// Barycentric position of a point of the cone in the triangle of `delta_s`.
fn project(frame: &Cone, x: &[Scalar]) -> Result<(f64, f64), GeometryError> {
    let a: Vec<f64> = frame.coordinates(x)?.iter().map(Scalar::to_f64).collect();
    let total: f64 = a.iter().sum();
    let (mut px, mut py) = (0.0, 0.0);
    for (k, ak) in a.iter().enumerate() {
        px += ak / total * CORNERS[k].0;
        py += ak / total * CORNERS[k].1;
    }
    Ok((px, py))
}

fn polygon(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{x:.3},{y:.3}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// SVG 1.1 picture of `Delta_c^+`: the chambers `u^-1 B` for `u` in `W_c^+`,
/// the maximal positive clusters, and every `delta_t`, in a barycentric
/// chart spanned by the `delta_s`.
pub fn svg_string(ctx: &Context) -> Result<String, ExportError> {
    let w = ctx.w;
    let r = w.rank();
    if r != 3 {
        return Err(ExportError::WrongRank(r));
    }
    let simple: Vec<Reflection> = (0..r).map(|i| Reflection(i as u16)).collect();
    let frame = Cone::of_reflections(&ctx.deltas, &simple);
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="520" height="520" viewBox="0 0 520 520">"#
    )
    .unwrap();
    writeln!(
        out,
        "<title>{} c={}</title>",
        w.label(),
        ctx.c.word_string()
    )
    .unwrap();
    writeln!(out, r##"<g id="chambers" fill="none" stroke="#444" stroke-width="1">"##).unwrap();
    for &u in &ctx.w_plus {
        let chamber = Cone::chamber(w, u);
        let pts = chamber
            .generators
            .iter()
            .map(|g| project(&frame, g))
            .collect::<Result<Vec<_>, _>>()?;
        writeln!(
            out,
            r#"<polygon class="chamber" points="{}"><title>{}</title></polygon>"#,
            polygon(&pts),
            w.word_string(w.inverse(u))
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    let palette = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1"];
    writeln!(out, r##"<g id="clusters" stroke="#000" stroke-width="2" fill-opacity="0.25">"##).unwrap();
    let clusters: Vec<_> = commutation_classes(&ctx.heap, &ctx.chains)
        .into_iter()
        .filter(|c| c.decreasing)
        .collect();
    for (k, cl) in clusters.iter().enumerate() {
        let pts = cl
            .representative
            .reflections
            .iter()
            .map(|t| project(&frame, &ctx.deltas[t.index()]))
            .collect::<Result<Vec<_>, _>>()?;
        let names: Vec<String> = cl
            .reflections
            .iter()
            .map(|t| reflection_name(w, t))
            .collect();
        writeln!(
            out,
            r#"<polygon class="cluster" fill="{}" points="{}"><title>{}</title></polygon>"#,
            palette[k % palette.len()],
            polygon(&pts),
            names.join(" ")
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g id="deltas" font-family="sans-serif" font-size="12">"#).unwrap();
    for t in w.reflections() {
        let (x, y) = project(&frame, &ctx.deltas[t.index()])?;
        writeln!(
            out,
            r#"<circle class="delta" cx="{x:.3}" cy="{y:.3}" r="3"/><text x="{:.3}" y="{:.3}">{}</text>"#,
            x + 5.0,
            y - 5.0,
            reflection_name(w, t)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
