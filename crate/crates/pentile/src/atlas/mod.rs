//! Builders for every tiling family, the patch operations, and the
//! per-family pentagon solvers.
//!
//! Earth map tilings number their tiles by timezone: tile `4k + j` is part
//! `j` of timezone `k` (see [`TimezoneTile`]). Every modification keeps
//! these indices, so a tile can be traced through flips and rotations.

mod earth;
mod modify;
mod patch;
mod solve;
mod subdivision;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combmap::{CombError, CombinatorialTiling};
use crate::pentagon::PentagonError;

pub use earth::{e1, e2, timezone_tile, TimezoneTile};
pub use modify::{
    e1_flip_region, e2_half_region, f1e1, f1e2, f2e1, f2e2, f2e2_double_prime, f2e2_prime, f3e2, re2, s16,
    surrogate_angles, valid_under, Surrogate,
};
pub use patch::{find_patches, shift_flip_patch, Patch, PatchAction, PatchLocator, PatchOrientation};
pub use solve::{
    alpha_eq_beta_angles, alpha_eq_beta_quadratic, e1_angles, e1_cos_a, e2_at_eps, e2_delta, e2_parameter_interval,
    solve_family, solve_on_line, solve_pentagon, subdivision_setup, AlphaEqBetaQuadratic, PentagonFamily,
};
pub use subdivision::{icosahedron_faces, octahedron_faces, pentagonal_subdivision};

#[derive(Debug, Error, PartialEq)]
pub enum AtlasError {
    #[error("{family} is not defined for f={f}: {reason}")]
    Inadmissible { family: String, f: usize, reason: String },
    #[error("no-patch-at-location: {0}")]
    NoPatch(String),
    #[error("outside-parameter-interval: a = {a} not in ({lo}, {hi})")]
    OutsideInterval { a: f64, lo: f64, hi: f64 },
    #[error("no-root-in-range: {0}")]
    NoRoot(String),
    #[error("bracket-failure: {0}")]
    BracketFailure(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Pentagon(#[from] PentagonError),
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// Labeling of the subdivision tiles, named after the degree-3 vertex at
/// the face centers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PpVariant {
    /// AVC {αδε, α³ (= β³ since α=β), γᵏ}.
    #[default]
    AlphaCubed,
    /// AVC {αδε, γ³, βᵏ}.
    GammaCubed,
}

impl FromStr for PpVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alpha3" | "alpha-cubed" | "a3" => Ok(PpVariant::AlphaCubed),
            "gamma3" | "gamma-cubed" | "g3" => Ok(PpVariant::GammaCubed),
            _ => Err(format!("unknown subdivision variant '{s}' (alpha3, gamma3)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    E1,
    F1E1,
    F2E1,
    E2,
    RE2,
    F1E2,
    F2E2,
    /// F2E2 with its patch shifted across `shift` timezone blocks.
    F2E2Prime { shift: usize },
    /// F2E2 with its patch flipped.
    F2E2DoublePrime,
    PP8(PpVariant),
    PP20(PpVariant),
    S16,
}

impl Family {
    pub const NAMES: [&'static str; 12] =
        ["e1", "f1e1", "f2e1", "e2", "re2", "f1e2", "f2e2", "f2e2-prime", "f2e2-doubleprime", "pp8", "pp20", "s16"];

    pub fn name(&self) -> &'static str {
        match self {
            Family::E1 => "e1",
            Family::F1E1 => "f1e1",
            Family::F2E1 => "f2e1",
            Family::E2 => "e2",
            Family::RE2 => "re2",
            Family::F1E2 => "f1e2",
            Family::F2E2 => "f2e2",
            Family::F2E2Prime { .. } => "f2e2-prime",
            Family::F2E2DoublePrime => "f2e2-doubleprime",
            Family::PP8(_) => "pp8",
            Family::PP20(_) => "pp20",
            Family::S16 => "s16",
        }
    }

    /// Every family with default modifiers.
    pub fn all() -> Vec<Family> {
        Self::NAMES.iter().map(|n| n.parse().unwrap()).collect()
    }

    /// Checks the tile count congruences.
    pub fn admissible(&self, f: usize) -> Result<(), AtlasError> {
        let bad = |reason: &str| Err(AtlasError::Inadmissible { family: self.name().into(), f, reason: reason.into() });
        match self {
            Family::E1 | Family::E2 => {
                if f < 12 || !f.is_multiple_of(4) {
                    return bad("needs f ≡ 0 mod 4 and f ≥ 12");
                }
            }
            Family::F1E1
            | Family::F2E1
            | Family::RE2
            | Family::F1E2
            | Family::F2E2
            | Family::F2E2Prime { .. }
            | Family::F2E2DoublePrime => {
                if f < 12 || f % 8 != 4 {
                    return bad("needs f ≡ 4 mod 8 and f ≥ 12");
                }
                if let Family::F2E2Prime { shift } = self {
                    let q = (f - 4) / 8;
                    if *shift == 0 || *shift > q {
                        return bad(&format!("shift must be in 1..={q}"));
                    }
                }
            }
            Family::PP8(_) => {
                if f != 24 {
                    return bad("needs f = 24");
                }
            }
            Family::PP20(_) => {
                if f != 60 {
                    return bad("needs f = 60");
                }
            }
            Family::S16 => {
                if f != 16 {
                    return bad("needs f = 16");
                }
            }
        }
        Ok(())
    }

    /// The flip modifications of E2 are realizable only by the α=β pentagon.
    pub fn requires_alpha_eq_beta(&self) -> bool {
        matches!(self, Family::F1E2 | Family::F2E2 | Family::F2E2Prime { .. } | Family::F2E2DoublePrime)
    }

    /// Tile counts in `lo..=hi` the family is defined for.
    pub fn admissible_counts(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo..=hi).filter(|&f| self.admissible(f).is_ok()).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F2E2Prime { shift } => write!(f, "f2e2-prime(shift={shift})"),
            Family::PP8(PpVariant::GammaCubed) | Family::PP20(PpVariant::GammaCubed) => {
                write!(f, "{}(gamma3)", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "e1" => Family::E1,
            "f1e1" => Family::F1E1,
            "f2e1" => Family::F2E1,
            "e2" => Family::E2,
            "re2" => Family::RE2,
            "f1e2" => Family::F1E2,
            "f2e2" => Family::F2E2,
            "f2e2-prime" => Family::F2E2Prime { shift: 1 },
            "f2e2-doubleprime" => Family::F2E2DoublePrime,
            "pp8" => Family::PP8(PpVariant::AlphaCubed),
            "pp20" => Family::PP20(PpVariant::AlphaCubed),
            "s16" => Family::S16,
            _ => return Err(format!("unknown family '{s}' (expected one of {})", Family::NAMES.join(", "))),
        })
    }
}

/// Builds the combinatorial tiling of a family.
pub fn build(family: Family, f: usize) -> Result<CombinatorialTiling, AtlasError> {
    family.admissible(f)?;
    match family {
        Family::E1 => Ok(e1(f / 4)),
        Family::E2 => Ok(e2(f / 4)),
        Family::F1E1 => f1e1(f),
        Family::F2E1 => f2e1(f),
        Family::RE2 => re2(f),
        Family::F1E2 => f1e2(f),
        Family::F2E2 => f2e2(f),
        Family::F2E2Prime { shift } => f2e2_prime(f, shift),
        Family::F2E2DoublePrime => f2e2_double_prime(f),
        Family::PP8(v) => Ok(pentagonal_subdivision(&octahedron_faces(), v)?),
        Family::PP20(v) => Ok(pentagonal_subdivision(&icosahedron_faces(), v)?),
        Family::S16 => s16(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for fam in Family::all() {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("e3".parse::<Family>().is_err());
    }

    #[test]
    fn admissibility() {
        assert!(Family::E2.admissible(16).is_ok());
        assert!(Family::E2.admissible(18).is_err());
        assert!(Family::RE2.admissible(16).is_err());
        assert!(Family::RE2.admissible(20).is_ok());
        assert!(Family::PP8(PpVariant::AlphaCubed).admissible(60).is_err());
        assert!(matches!(build(Family::S16, 20), Err(AtlasError::Inadmissible { .. })));
    }
}
