//! The four-tile patch 𝒜 of the E2 flip modifications: finding it,
//! flipping it, and shifting it along the mirrored half.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::modify::{e2_block, surrogate_angles, valid_under, Surrogate};
use super::AtlasError;
use crate::combmap::{reflect_about_vertex, CombinatorialTiling};
use crate::pentagon::Orientation;
use crate::vertex::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PatchOrientation {
    AsIs,
    Flipped,
}

/// Where a patch sits: the timezone of its top tile, and whether its first
/// tile is mirrored relative to the unmodified earth map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatchLocator {
    pub position: usize,
    pub orientation: PatchOrientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatchAction {
    /// Mirror the patch about the γ corner of its first tile.
    Flip,
    /// Mirror the patch together with the next `n` timezone blocks of the
    /// mirrored half, which moves it `n` blocks along.
    Shift(usize),
}

/// Tiles `T1..T4` of one patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Patch {
    pub tiles: [usize; 4],
    pub locator: PatchLocator,
}

/// Tile across the edge of `t` joining corners `x` and `y`, with the labels
/// it puts at `x` and at `y`.
fn across(tl: &CombinatorialTiling, t: usize, x: Label, y: Label) -> Option<(usize, Label, Label)> {
    let c = &tl.tiles[t].corners;
    let j = (0..5).find(|&j| {
        let (p, q) = (c[j], c[(j + 1) % 5]);
        (p, q) == (x, y) || (p, q) == (y, x)
    })?;
    let (u, k) = tl.tiles[t].twins[j];
    let cu = &tl.tiles[u].corners;
    // t.c[j+1] meets u.c[k]; t.c[j] meets u.c[k+1]
    let at = |l: Label| if l == c[(j + 1) % 5] { cu[k] } else { cu[(k + 1) % 5] };
    Some((u, at(x), at(y)))
}

fn default_orientation(tile: usize) -> Orientation {
    if tile % 4 < 2 {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

fn locator(t: &CombinatorialTiling, tiles: [usize; 4]) -> PatchLocator {
    let top = tiles.iter().copied().find(|i| i % 4 == 0).unwrap_or(tiles[0]);
    let orientation = if t.tiles[tiles[0]].orientation == default_orientation(tiles[0]) {
        PatchOrientation::AsIs
    } else {
        PatchOrientation::Flipped
    };
    PatchLocator { position: top / 4, orientation }
}

/// Every occurrence of the patch template.
pub fn find_patches(t: &CombinatorialTiling) -> Vec<Patch> {
    use Label::*;
    let mut out = Vec::new();
    for t1 in 0..t.f() {
        let Some((t4, d, e)) = across(t, t1, Delta, Epsilon) else { continue };
        if (d, e) != (Epsilon, Delta) {
            continue;
        }
        let Some((t2, b, d)) = across(t, t1, Beta, Delta) else { continue };
        if (b, d) != (Delta, Beta) || t1 >= t2 {
            continue;
        }
        let Some((t3, d, e)) = across(t, t2, Delta, Epsilon) else { continue };
        if (d, e) != (Epsilon, Delta) {
            continue;
        }
        match across(t, t1, Alpha, Beta) {
            Some((u, Gamma, Epsilon)) if u == t3 => {}
            _ => continue,
        }
        match across(t, t2, Alpha, Beta) {
            Some((u, Gamma, Epsilon)) if u == t4 => {}
            _ => continue,
        }
        let tiles = [t1, t2, t3, t4];
        if tiles.iter().collect::<BTreeSet<_>>().len() < 4 {
            continue;
        }
        out.push(Patch { tiles, locator: locator(t, tiles) });
    }
    out
}

fn gamma_vertex(t: &CombinatorialTiling, tile: usize) -> usize {
    let s = t.tiles[tile].slot_of(Label::Gamma);
    t.vertex_index().of[tile][s]
}

pub(crate) fn flip_patch(t: &CombinatorialTiling, p: &Patch) -> Result<CombinatorialTiling, AtlasError> {
    let region: BTreeSet<usize> = p.tiles.iter().copied().collect();
    Ok(reflect_about_vertex(t, &region, gamma_vertex(t, p.tiles[0]))?)
}

fn adjacent(t: &CombinatorialTiling, a: &BTreeSet<usize>, b: &[usize]) -> bool {
    a.iter().any(|&u| t.neighbours(u).any(|w| b.contains(&w)))
}

/// Whole timezone blocks of the mirrored half, in order of adjacency
/// starting next to the patch.
fn outer_chain(t: &CombinatorialTiling, p: &Patch) -> Vec<[usize; 4]> {
    let n = t.f() / 4;
    let mut rest: Vec<[usize; 4]> = (0..n)
        .map(|k| e2_block(n, k))
        .filter(|b| {
            b.iter().all(|&i| !p.tiles.contains(&i) && t.tiles[i].orientation != default_orientation(i))
        })
        .collect();
    let mut chain = Vec::new();
    let mut cur: BTreeSet<usize> = p.tiles.iter().copied().collect();
    while let Some(i) = rest.iter().position(|b| adjacent(t, &cur, b)) {
        let b = rest.remove(i);
        cur = b.iter().copied().collect();
        chain.push(b);
    }
    chain
}

/// Applies a patch operation. Results are checked against the α=β angle
/// relations of the flip modifications.
pub fn shift_flip_patch(t: &CombinatorialTiling, loc: &PatchLocator, action: PatchAction) -> Result<CombinatorialTiling, AtlasError> {
    let p = find_patches(t)
        .into_iter()
        .find(|p| p.locator == *loc)
        .ok_or_else(|| AtlasError::NoPatch(format!("position {} ({:?})", loc.position, loc.orientation)))?;
    let ang = surrogate_angles(Surrogate::E2AlphaEqBeta, t.f());
    match action {
        PatchAction::Flip => {
            let out = flip_patch(t, &p)?;
            if valid_under(&out, &ang) {
                Ok(out)
            } else {
                Err(AtlasError::Construction("flipped patch does not fit".into()))
            }
        }
        PatchAction::Shift(steps) => {
            let chain = outer_chain(t, &p);
            if steps == 0 || steps > chain.len() {
                return Err(AtlasError::Construction(format!("shift {steps} outside 1..={}", chain.len())));
            }
            let region: BTreeSet<usize> = p.tiles.iter().copied().chain(chain[..steps].iter().flatten().copied()).collect();
            for pivot in [p.tiles[0], p.tiles[1]] {
                if let Ok(out) = reflect_about_vertex(t, &region, gamma_vertex(t, pivot)) {
                    if valid_under(&out, &ang) {
                        return Ok(out);
                    }
                }
            }
            Err(AtlasError::Construction(format!("no valid shift by {steps}")))
        }
    }
}
