//! Placement of a combinatorial tiling on the unit sphere.
//!
//! The seed tile is walked from the identity frame (its α corner at the
//! north pole, first edge along +x). Every other tile is walked from the
//! shared edge through which breadth-first search reaches it. Negatively
//! oriented tiles need no special case: their corners are already listed
//! counterclockwise, so walking them traces the mirror image.

mod export;

use std::collections::VecDeque;
use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

use crate::combmap::{verify_tiling, CombinatorialTiling, EdgeLabel};
use crate::pentagon::{polygon_area, polygon_is_simple, walk, PentagonSpec};

pub use export::{export, render, ExportFormat, ExportOptions, Exportable};

/// Largest accepted disagreement between candidate positions of a vertex.
pub const CLOSURE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error("tiling fails structural checks: {0}")]
    Invalid(String),
    #[error("closure-failure: residual {residual:e} exceeds {tol:e} at vertex {vertex}")]
    ClosureFailure { residual: f64, tol: f64, vertex: usize },
    #[error("not-realized: {0} export needs vertex positions")]
    NotRealized(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Format(String),
}

#[derive(Clone, Debug)]
pub struct RealizedTiling {
    pub base: CombinatorialTiling,
    pub pentagon: PentagonSpec,
    /// Unit vectors, indexed as in [`CombinatorialTiling::vertex_index`].
    pub positions: Vec<Vector3<f64>>,
    /// Per tile: columns are the heading along edge 0, its left normal, and
    /// the position of corner 0.
    pub frames: Vec<Matrix3<f64>>,
    pub closure_residual: f64,
}

/// Frame at `p` heading towards `q` along the great circle.
pub fn frame_towards(p: &Vector3<f64>, q: &Vector3<f64>) -> Matrix3<f64> {
    let h = (q - p * p.dot(q)).normalize();
    Matrix3::from_columns(&[h, p.cross(&h), *p])
}

fn tile_walk(t: &CombinatorialTiling, p: &PentagonSpec, tile: usize, start_slot: usize, frame: Matrix3<f64>) -> [Vector3<f64>; 5] {
    let ang = p.angles();
    let tl = &t.tiles[tile];
    let angles: [f64; 5] = std::array::from_fn(|i| ang[tl.corners[(start_slot + i) % 5].index()]);
    let lens: [f64; 5] = std::array::from_fn(|i| match tl.edges[(start_slot + i) % 5] {
        EdgeLabel::A => p.a,
        EdgeLabel::B => p.b,
    });
    let (pts, _) = walk(&angles, &lens, frame);
    std::array::from_fn(|k| pts[(k + 5 - start_slot) % 5])
}

pub fn realize(t: &CombinatorialTiling, p: &PentagonSpec) -> Result<RealizedTiling, RealizeError> {
    realize_with_tol(t, p, CLOSURE_TOL)
}

pub fn realize_with_tol(t: &CombinatorialTiling, p: &PentagonSpec, tol: f64) -> Result<RealizedTiling, RealizeError> {
    let report = verify_tiling(t);
    if !report.pass() {
        return Err(RealizeError::Invalid(report.failed().join(", ")));
    }
    let n = t.f();
    let mut corners: Vec<Option<[Vector3<f64>; 5]>> = vec![None; n];
    let seed_slot = t.tiles[0].slot_of(crate::vertex::Label::Alpha);
    corners[0] = Some(tile_walk(t, p, 0, seed_slot, Matrix3::identity()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let pts = corners[u].expect("placed");
        for k in 0..5 {
            let (w, j) = t.tiles[u].twins[k];
            if corners[w].is_some() {
                continue;
            }
            // w.corner j sits at u.corner k+1, w.corner j+1 at u.corner k
            let frame = frame_towards(&pts[(k + 1) % 5], &pts[k]);
            corners[w] = Some(tile_walk(t, p, w, j, frame));
            queue.push_back(w);
        }
    }
    let corners: Vec<[Vector3<f64>; 5]> = corners
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| RealizeError::Invalid("tile adjacency graph is disconnected".into()))?;

    let vi = t.vertex_index();
    let mut positions = Vec::with_capacity(vi.len());
    let mut residual: f64 = 0.0;
    let mut worst = 0;
    for (v, orbit) in vi.orbits.iter().enumerate() {
        let cands: Vec<Vector3<f64>> = orbit.iter().map(|&(u, k)| corners[u][k]).collect();
        for i in 0..cands.len() {
            for j in i + 1..cands.len() {
                let d = (cands[i] - cands[j]).norm();
                if d > residual {
                    residual = d;
                    worst = v;
                }
            }
        }
        let sum: Vector3<f64> = cands.iter().sum();
        positions.push(sum.normalize());
    }
    if !(residual <= tol) {
        return Err(RealizeError::ClosureFailure { residual, tol, vertex: worst });
    }
    let frames = (0..n)
        .map(|u| {
            let a = positions[vi.of[u][0]];
            let b = positions[vi.of[u][1]];
            frame_towards(&a, &b)
        })
        .collect();
    Ok(RealizedTiling { base: t.clone(), pentagon: *p, positions, frames, closure_residual: residual })
}

impl RealizedTiling {
    /// Merged corner positions of one tile, counterclockwise.
    pub fn tile_points(&self, tile: usize) -> [Vector3<f64>; 5] {
        let vi = self.base.vertex_index();
        std::array::from_fn(|k| self.positions[vi.of[tile][k]])
    }

    /// Areas measured from the placed corners.
    pub fn tile_areas(&self) -> Vec<f64> {
        (0..self.base.f()).map(|u| polygon_area(&self.tile_points(u))).collect()
    }

    /// Tiles whose placed boundary crosses itself.
    pub fn non_simple_tiles(&self) -> Vec<usize> {
        (0..self.base.f()).filter(|&u| !polygon_is_simple(&self.tile_points(u))).collect()
    }

    /// Largest deviation of a position from unit length.
    pub fn max_norm_error(&self) -> f64 {
        self.positions.iter().map(|p| (p.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Sum of the measured tile areas; 4π for a tiling of the sphere.
pub fn total_area(r: &RealizedTiling) -> f64 {
    r.tile_areas().iter().sum()
}

/// Expected area of one tile, 4π/f.
pub fn tile_area_target(f: usize) -> f64 {
    4.0 * PI / f as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{build, solve_family, Family};

    #[test]
    fn e2_16_closes() {
        let t = build(Family::E2, 16).unwrap();
        let p = solve_family(Family::F2E2, 16, None).unwrap();
        let r = realize(&t, &p).unwrap();
        assert!(r.closure_residual < 1e-8);
        assert!((total_area(&r) - 4.0 * PI).abs() < 1e-8);
        for a in r.tile_areas() {
            assert!((a - PI / 4.0).abs() < 1e-9);
        }
        assert!(r.non_simple_tiles().is_empty());
        assert!(r.max_norm_error() < 1e-12);
    }

    #[test]
    fn perturbed_b_fails() {
        let t = build(Family::E2, 16).unwrap();
        let mut p = solve_family(Family::F2E2, 16, None).unwrap();
        p.b += 1e-3;
        assert!(matches!(realize(&t, &p), Err(RealizeError::ClosureFailure { .. })));
    }
}

