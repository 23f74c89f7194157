//! Flip and rotation modifications of the earth map tilings, and S16.
//!
//! A modification cuts the sphere along the boundary of a half tiling and
//! reglues the other side rotated or mirrored. Candidates are kept only if
//! the labels still close up and every vertex sums to 2π under angle values
//! of the target family (see [`surrogate_angles`]).

use std::collections::BTreeSet;
use std::f64::consts::PI;

use super::earth::{e1, e2, timezone_tile, TimezoneTile};
use super::patch::{find_patches, flip_patch};
use super::AtlasError;
use crate::combmap::{
    angle_sum_violations, boundary_cycle, canonical_form_by, extract_avc, reglue, verify_tiling, CombinatorialTiling, Reglue, Tile,
};
use crate::vertex::{Label, VertexType};

/// Angle values used to decide which reglued maps are tilings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surrogate {
    /// The symmetric pentagon of E1.
    E1,
    /// A generic member of the E2 family.
    E2,
    /// The E2 family with α=β.
    E2AlphaEqBeta,
    /// The E2 family with α=γ, in E2 labels.
    E2AlphaEqGamma,
}

/// Angles in label order (α, β, γ, δ, ε). Only the relations between them
/// matter; the free values are arbitrary generic choices.
pub fn surrogate_angles(kind: Surrogate, f: usize) -> [f64; 5] {
    let ff = f as f64;
    let be = (1.0 - 4.0 / ff) * PI;
    let ga = 8.0 * PI / ff;
    match kind {
        Surrogate::E1 => super::solve::e1_angles(f),
        Surrogate::E2 => {
            let (al, de) = (0.61 * PI, 0.5 * PI);
            [al, be, ga, de, 2.0 * PI - al - de]
        }
        Surrogate::E2AlphaEqBeta => {
            let de = 0.55 * PI;
            [be, be, ga, de, 2.0 * PI - be - de]
        }
        Surrogate::E2AlphaEqGamma => {
            let de = 0.3 * PI;
            [ga, be, ga, de, 2.0 * PI - ga - de]
        }
    }
}

/// Structural checks plus 2π at every vertex.
pub fn valid_under(t: &CombinatorialTiling, angles: &[f64; 5]) -> bool {
    let r = verify_tiling(t);
    r.checks.iter().take(3).all(|c| c.passed) && angle_sum_violations(t, angles, 1e-9).is_empty()
}

fn q_of(f: usize) -> usize {
    (f - 4) / 8
}

/// The half of E1(8q+4) that stays put in both flips: α^{q+1} at the
/// north pole side.
pub fn e1_flip_region(q: usize) -> BTreeSet<usize> {
    let n = 2 * q + 1;
    let mut h = BTreeSet::new();
    for k in 0..=q {
        h.insert(timezone_tile(n, k, TimezoneTile::Bottom));
        h.insert(timezone_tile(n, k, TimezoneTile::Second));
    }
    for k in 0..q {
        h.insert(timezone_tile(n, k, TimezoneTile::Third));
        h.insert(timezone_tile(n, k, TimezoneTile::Top));
    }
    h
}

/// Block `Z_k`: the top tile of timezone k and the other three tiles of
/// timezone k+1, which together form a staircase step of E2.
pub(crate) fn e2_block(n: usize, k: usize) -> [usize; 4] {
    [
        timezone_tile(n, k, TimezoneTile::Top),
        timezone_tile(n, k + 1, TimezoneTile::Second),
        timezone_tile(n, k + 1, TimezoneTile::Bottom),
        timezone_tile(n, k + 1, TimezoneTile::Third),
    ]
}

/// The half tiling 𝒫^{q+1}_q of E2(8q+4) kept fixed by every modification.
pub fn e2_half_region(q: usize) -> BTreeSet<usize> {
    let n = 2 * q + 1;
    let mut h: BTreeSet<usize> = (0..q).flat_map(|k| e2_block(n, k)).collect();
    h.insert(timezone_tile(n, q, TimezoneTile::Top));
    h.insert(timezone_tile(n, q + 1, TimezoneTile::Second));
    h
}

/// All distinct valid regluings of the complement of `fixed`, in order of
/// (rotations by s, then reflections by s), skipping maps isomorphic to
/// `base` or to an earlier candidate.
fn regluings(
    base: &CombinatorialTiling,
    fixed: &BTreeSet<usize>,
    angles: &[f64; 5],
    rotations: bool,
    reflections: bool,
    collapse: bool,
) -> Result<Vec<(Reglue, CombinatorialTiling)>, AtlasError> {
    let m = boundary_cycle(base, fixed)?.len();
    let key = |l: Label| if collapse { l.collapsed().index() as u8 } else { l.index() as u8 };
    let mut seen = vec![canonical_form_by(base, key)];
    let mut out = Vec::new();
    let mut ops = Vec::new();
    if rotations {
        ops.extend((1..m).map(Reglue::Rotate));
    }
    if reflections {
        ops.extend((0..m).map(Reglue::Reflect));
    }
    for op in ops {
        let t = reglue(base, fixed, op)?;
        if !valid_under(&t, angles) {
            continue;
        }
        let c = canonical_form_by(&t, key);
        if seen.contains(&c) {
            continue;
        }
        seen.push(c);
        out.push((op, t));
    }
    Ok(out)
}

fn e1_flips(f: usize) -> Result<Vec<CombinatorialTiling>, AtlasError> {
    let q = q_of(f);
    let base = e1(2 * q + 1);
    let ang = surrogate_angles(Surrogate::E1, f);
    Ok(regluings(&base, &e1_flip_region(q), &ang, true, true, true)?.into_iter().map(|(_, t)| t).collect())
}

fn collapsed_types(t: &CombinatorialTiling) -> BTreeSet<VertexType> {
    extract_avc(t).keys().map(|v| v.collapsed()).collect()
}

/// The E1 flip with an α^qδ² vertex (labels collapsed: β≡γ, δ≡ε).
pub fn f1e1(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    let q = q_of(f) as u32;
    let want = VertexType::new([q, 0, 0, 2, 0]);
    e1_flips(f)?
        .into_iter()
        .find(|t| collapsed_types(t).contains(&want))
        .ok_or_else(|| AtlasError::Construction("no flip of E1 with an α^qδ² vertex".into()))
}

/// The E1 flip with collapsed AVC exactly {αβ², βδ², α^{q+1}β}.
pub fn f2e1(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    let q = q_of(f) as u32;
    let want: BTreeSet<VertexType> =
        [VertexType::new([1, 2, 0, 0, 0]), VertexType::new([0, 1, 0, 2, 0]), VertexType::new([q + 1, 1, 0, 0, 0])].into();
    e1_flips(f)?
        .into_iter()
        .find(|t| collapsed_types(t) == want)
        .ok_or_else(|| AtlasError::Construction("no flip of E1 with AVC {αβ², βδ², α^{q+1}β}".into()))
}

/// Rotation of the half 𝒫^{q+1}_q: AVC {αδε, β²γ, βγ^{q+1}}.
pub fn re2(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    let q = q_of(f);
    let base = e2(2 * q + 1);
    let ang = surrogate_angles(Surrogate::E2, f);
    regluings(&base, &e2_half_region(q), &ang, true, false, false)?
        .into_iter()
        .next()
        .map(|(_, t)| t)
        .ok_or_else(|| AtlasError::Construction("no valid rotation of the half earth map".into()))
}

/// The reflections of 𝒫^{q+1}_q that are tilings for α=β, in reglue order.
fn e2_reflections(f: usize) -> Result<Vec<CombinatorialTiling>, AtlasError> {
    let q = q_of(f);
    let base = e2(2 * q + 1);
    let ang = surrogate_angles(Surrogate::E2AlphaEqBeta, f);
    Ok(regluings(&base, &e2_half_region(q), &ang, false, true, false)?.into_iter().map(|(_, t)| t).collect())
}

/// Sorts the reflections: the one with two patches is F3; of those with a
/// single patch, F2 is the one whose patch flip interlocks three patches.
fn classify_e2_reflections(f: usize) -> Result<(Option<CombinatorialTiling>, Option<CombinatorialTiling>, Option<CombinatorialTiling>), AtlasError> {
    let mut f1 = None;
    let mut f2 = None;
    let mut f3 = None;
    for t in e2_reflections(f)? {
        let ps = find_patches(&t);
        match ps.len() {
            2 if f3.is_none() => f3 = Some(t),
            1 => {
                let flipped = flip_patch(&t, &ps[0])?;
                if find_patches(&flipped).len() == 3 && f2.is_none() {
                    f2 = Some(t);
                } else if f1.is_none() {
                    f1 = Some(t);
                }
            }
            _ => {
                if f1.is_none() {
                    f1 = Some(t);
                }
            }
        }
    }
    Ok((f1, f2, f3))
}

pub fn f1e2(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    classify_e2_reflections(f)?.0.ok_or_else(|| AtlasError::Construction("first flip of E2 not found".into()))
}

pub fn f2e2(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    classify_e2_reflections(f)?.1.ok_or_else(|| AtlasError::Construction("second flip of E2 not found".into()))
}

/// The reflection carrying two patches at opposite ends of the half tiling.
pub fn f3e2(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    classify_e2_reflections(f)?.2.ok_or_else(|| AtlasError::Construction("third flip of E2 not found".into()))
}

pub fn f2e2_prime(f: usize, shift: usize) -> Result<CombinatorialTiling, AtlasError> {
    let t = f2e2(f)?;
    let p = find_patches(&t).into_iter().next().ok_or_else(|| AtlasError::NoPatch("F2E2 has no patch".into()))?;
    super::patch::shift_flip_patch(&t, &p.locator, super::patch::PatchAction::Shift(shift))
}

pub fn f2e2_double_prime(f: usize) -> Result<CombinatorialTiling, AtlasError> {
    let t = f2e2(f)?;
    let p = find_patches(&t).into_iter().next().ok_or_else(|| AtlasError::NoPatch("F2E2 has no patch".into()))?;
    super::patch::shift_flip_patch(&t, &p.locator, super::patch::PatchAction::Flip)
}

/// Exchanges (β,δ) with (γ,ε) on every tile, which also reverses each
/// tile's orientation.
fn exchange_labels(t: &CombinatorialTiling) -> CombinatorialTiling {
    CombinatorialTiling {
        tiles: t
            .tiles
            .iter()
            .map(|tile| Tile {
                corners: tile.corners.map(|c| c.exchanged()),
                orientation: tile.orientation.flipped(),
                twins: tile.twins,
                edges: tile.edges,
            })
            .collect(),
    }
}

/// The sporadic tiling: E2(16) with its lower half mirrored, valid for the
/// α=γ pentagon. Returned in the labels of that pentagon's solver, where the
/// exchange makes it α=β with an αγ² vertex.
pub fn s16() -> Result<CombinatorialTiling, AtlasError> {
    let base = e2(4);
    let upper: BTreeSet<usize> = (0..16).filter(|i| i % 4 < 2).collect();
    let ang = surrogate_angles(Surrogate::E2AlphaEqGamma, 16);
    let (_, t) = regluings(&base, &upper, &ang, false, true, false)?
        .into_iter()
        .next()
        .ok_or_else(|| AtlasError::Construction("no valid mirror of the lower half of E2(16)".into()))?;
    Ok(exchange_labels(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combmap::{extract_avc, is_isomorphic};

    fn types(t: &CombinatorialTiling) -> Vec<String> {
        extract_avc(t).keys().map(|v| v.to_string()).collect()
    }

    #[test]
    fn re2_types() {
        for (f, top) in [(12, "βγ²"), (20, "βγ³"), (28, "βγ⁴")] {
            let t = re2(f).unwrap();
            assert!(verify_tiling(&t).pass());
            let ty = types(&t);
            assert!(ty.contains(&top.to_string()), "{f}: {ty:?}");
            assert!(ty.iter().all(|s| ["αδε", "β²γ", top].contains(&s.as_str())), "{ty:?}");
        }
    }

    #[test]
    fn e1_flip_types() {
        let t = f2e1(20).unwrap();
        assert!(verify_tiling(&t).pass());
        let avc: Vec<VertexType> = extract_avc(&t).keys().map(|v| v.collapsed()).collect();
        for want in ["αβ²", "βδ²", "α³β"] {
            assert!(avc.contains(&want.parse::<VertexType>().unwrap().collapsed()), "{want}: {avc:?}");
        }
        for f in [12, 20, 28] {
            assert_eq!(e1_flips(f).unwrap().len(), 2, "f={f}");
        }
        let g = f1e1(20).unwrap();
        assert!(!is_isomorphic(&g, &t));
    }

    #[test]
    fn e2_flips_distinct() {
        for f in [12, 20, 28] {
            let (a, b, c) = classify_e2_reflections(f).unwrap();
            let (a, b, c) = (a.unwrap(), b.unwrap(), c.unwrap());
            assert!(!is_isomorphic(&a, &b) && !is_isomorphic(&b, &c) && !is_isomorphic(&a, &c));
            assert_eq!(find_patches(&b).len(), 1);
            assert_eq!(find_patches(&c).len(), 2);
        }
    }

    #[test]
    fn s16_shape() {
        let t = s16().unwrap();
        assert!(verify_tiling(&t).pass());
        assert!(types(&t).contains(&"αγ²".to_string()), "{:?}", types(&t));
    }
}
