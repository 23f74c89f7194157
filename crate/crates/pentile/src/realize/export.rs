//! JSON, OBJ and SVG writers.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{Vector2, Vector3};

use super::{RealizeError, RealizedTiling};
use crate::combmap::{CombinatorialTiling, TilingJson};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Obj,
    Svg,
}

impl ExportFormat {
    pub fn from_path(p: &Path) -> Option<Self> {
        p.extension()?.to_str()?.parse().ok()
    }

    fn name(self) -> &'static str {
        match self {
            ExportFormat::Json => "json",
            ExportFormat::Obj => "obj",
            ExportFormat::Svg => "svg",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ExportFormat::Json),
            "obj" => Ok(ExportFormat::Obj),
            "svg" => Ok(ExportFormat::Svg),
            _ => Err(format!("unknown format '{s}' (json, obj, svg)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExportOptions {
    /// Samples per edge for OBJ polylines and SVG curves.
    pub arc_samples: usize,
    /// Projection pole for SVG; the default is the south pole.
    pub pole: Vector3<f64>,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions { arc_samples: 16, pole: Vector3::new(0.0, 0.0, -1.0) }
    }
}

pub enum Exportable<'a> {
    Bare(&'a CombinatorialTiling),
    Realized(&'a RealizedTiling),
}

impl<'a> From<&'a CombinatorialTiling> for Exportable<'a> {
    fn from(t: &'a CombinatorialTiling) -> Self {
        Exportable::Bare(t)
    }
}

impl<'a> From<&'a RealizedTiling> for Exportable<'a> {
    fn from(r: &'a RealizedTiling) -> Self {
        Exportable::Realized(r)
    }
}

fn slerp(p: &Vector3<f64>, q: &Vector3<f64>, t: f64) -> Vector3<f64> {
    let w = p.dot(q).clamp(-1.0, 1.0).acos();
    if w < 1e-12 {
        return *p;
    }
    let s = w.sin();
    (p * ((1.0 - t) * w).sin() / s + q * (t * w).sin() / s).normalize()
}

/// Undirected edges as (tile, slot) representatives with endpoint vertices.
fn edges(t: &CombinatorialTiling) -> Vec<(usize, usize)> {
    let vi = t.vertex_index();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for u in 0..t.f() {
        for k in 0..5 {
            let (a, b) = (vi.of[u][k], vi.of[u][(k + 1) % 5]);
            let key = (a.min(b), a.max(b), (5 * u + k).min({
                let (w, j) = t.tiles[u].twins[k];
                5 * w + j
            }));
            if seen.insert(key) {
                out.push((a, b));
            }
        }
    }
    out
}

fn render_obj(r: &RealizedTiling, opts: &ExportOptions) -> String {
    let t = &r.base;
    let vi = t.vertex_index();
    let mut s = String::new();
    let _ = writeln!(s, "# {} tiles, {} vertices, unit sphere", t.f(), r.positions.len());
    for p in &r.positions {
        let _ = writeln!(s, "v {:.12} {:.12} {:.12}", p.x, p.y, p.z);
    }
    let base = r.positions.len();
    let inner = opts.arc_samples.saturating_sub(1);
    let mut lines = Vec::new();
    let mut next = base + 1;
    for (a, b) in edges(t) {
        let mut idx = vec![a + 1];
        for i in 1..=inner {
            let p = slerp(&r.positions[a], &r.positions[b], i as f64 / opts.arc_samples as f64);
            let _ = writeln!(s, "v {:.12} {:.12} {:.12}", p.x, p.y, p.z);
            idx.push(next);
            next += 1;
        }
        idx.push(b + 1);
        lines.push(idx);
    }
    for u in 0..t.f() {
        let ids: Vec<String> = (0..5).map(|k| (vi.of[u][k] + 1).to_string()).collect();
        let _ = writeln!(s, "f {}", ids.join(" "));
    }
    for l in lines {
        let ids: Vec<String> = l.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(s, "l {}", ids.join(" "));
    }
    s
}

/// Stereographic projection from `pole` onto the plane through the centre.
fn project(pole: &Vector3<f64>, x: &Vector3<f64>) -> Vector2<f64> {
    let n = pole.normalize();
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = (helper - n * n.dot(&helper)).normalize();
    let e2 = n.cross(&e1);
    let d = 1.0 - x.dot(&n);
    Vector2::new(x.dot(&e1), x.dot(&e2)) / d.max(1e-12)
}

/// The requested pole, tilted in fixed steps until no vertex sits on it.
pub fn clear_pole(positions: &[Vector3<f64>], pole: &Vector3<f64>) -> Vector3<f64> {
    let n = pole.normalize();
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let side = (helper - n * n.dot(&helper)).normalize();
    let mut p = n;
    for step in 1..=64 {
        if positions.iter().all(|x| (x - p).norm() > 1e-3) {
            break;
        }
        let t = 0.05 * step as f64;
        p = (n * t.cos() + side * t.sin()).normalize();
    }
    p
}

fn render_svg(r: &RealizedTiling, opts: &ExportOptions) -> Result<String, RealizeError> {
    let t = &r.base;
    let vi = t.vertex_index();
    let pole = clear_pole(&r.positions, &opts.pole);
    let n = opts.arc_samples.max(1);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-1.1 -1.1 2.2 2.2">"#);
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="0.004">"#);
    for u in 0..t.f() {
        let pts = r.tile_points(u);
        // samples along the boundary, then Catmull-Rom segments as cubics
        let mut samples = Vec::with_capacity(5 * n);
        for k in 0..5 {
            for i in 0..n {
                samples.push(project(&pole, &slerp(&pts[k], &pts[(k + 1) % 5], i as f64 / n as f64)));
            }
        }
        let m = samples.len();
        let _ = write!(s, r#"<path data-tile="{u}" data-orientation="{}" d="M {:.6} {:.6}"#, t.tiles[u].orientation, samples[0].x, -samples[0].y);
        for i in 0..m {
            let (p0, p1, p2, p3) = (samples[(i + m - 1) % m], samples[i], samples[(i + 1) % m], samples[(i + 2) % m]);
            let c1 = p1 + (p2 - p0) / 6.0;
            let c2 = p2 - (p3 - p1) / 6.0;
            let _ = write!(s, " C {:.6} {:.6} {:.6} {:.6} {:.6} {:.6}", c1.x, -c1.y, c2.x, -c2.y, p2.x, -p2.y);
        }
        let _ = writeln!(s, r#" Z"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="red">"#);
    for v in 0..vi.len() {
        let q = project(&pole, &r.positions[v]);
        let _ = writeln!(s, r#"<circle data-vertex="{}" cx="{:.6}" cy="{:.6}" r="0.01"/>"#, vi.vertex_type(t, v), q.x, -q.y);
    }
    let _ = writeln!(s, "</g>\n</svg>");
    Ok(s)
}

pub fn render(target: Exportable<'_>, format: ExportFormat, opts: &ExportOptions) -> Result<String, RealizeError> {
    match (target, format) {
        (Exportable::Bare(t), ExportFormat::Json) => Ok(t.to_json()),
        (Exportable::Realized(r), ExportFormat::Json) => {
            let pos = r.positions.iter().map(|p| [p.x, p.y, p.z]).collect();
            serde_json::to_string_pretty(&TilingJson::from_tiling(&r.base, Some(pos))).map_err(|e| RealizeError::Format(e.to_string()))
        }
        (Exportable::Bare(_), f) => Err(RealizeError::NotRealized(f.name())),
        (Exportable::Realized(r), ExportFormat::Obj) => Ok(render_obj(r, opts)),
        (Exportable::Realized(r), ExportFormat::Svg) => render_svg(r, opts),
    }
}

pub fn export(target: Exportable<'_>, format: ExportFormat, path: &Path, opts: &ExportOptions) -> Result<(), RealizeError> {
    let s = render(target, format, opts)?;
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{build, solve_family, Family};
    use crate::realize::realize;

    #[test]
    fn obj_counts() {
        let t = build(Family::E2, 16).unwrap();
        let r = realize(&t, &solve_family(Family::F2E2, 16, None).unwrap()).unwrap();
        let s = render(Exportable::Realized(&r), ExportFormat::Obj, &ExportOptions::default()).unwrap();
        let v = s.lines().filter(|l| l.starts_with("v ")).count();
        assert_eq!(v, 26 + 40 * 15);
        let faces: Vec<&str> = s.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(faces.len(), 16);
        assert!(faces.iter().all(|f| f.split_whitespace().skip(1).all(|i| i.parse::<usize>().unwrap() <= 26)));
    }

    #[test]
    fn bare_svg_rejected() {
        let t = build(Family::E2, 16).unwrap();
        assert!(matches!(
            render(Exportable::Bare(&t), ExportFormat::Svg, &ExportOptions::default()),
            Err(RealizeError::NotRealized(_))
        ));
        let back = CombinatorialTiling::from_json(&render(Exportable::Bare(&t), ExportFormat::Json, &ExportOptions::default()).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn e1_svg_poles() {
        let t = build(Family::E1, 20).unwrap();
        let r = realize(&t, &solve_family(Family::E1, 20, None).unwrap()).unwrap();
        let opts = ExportOptions { pole: Vector3::y(), ..Default::default() };
        let s = render(Exportable::Realized(&r), ExportFormat::Svg, &opts).unwrap();
        assert_eq!(s.matches("<path").count(), 20);
        let poles: Vec<&str> = s.lines().filter(|l| l.contains(r#"data-vertex="α⁵""#)).collect();
        assert_eq!(poles.len(), 2);
        for l in poles {
            let num = |key: &str| -> f64 {
                let i = l.find(key).unwrap() + key.len();
                l[i..].split('"').next().unwrap().parse().unwrap()
            };
            assert!(num("cx=\"").abs() <= 1.1 && num("cy=\"").abs() <= 1.1);
        }
        // the default south pole hits a vertex and gets tilted
        let tilted = clear_pole(&r.positions, &Vector3::new(0.0, 0.0, -1.0));
        assert!(r.positions.iter().all(|x| (x - tilted).norm() > 1e-3));
    }
}
