//! Earth map tilings E1 and E2.

use crate::combmap::{CombinatorialTiling, NEGATIVE_CYCLE, POSITIVE_CYCLE};
use crate::pentagon::Orientation;
use crate::vertex::Label;

/// The four tiles of a timezone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TimezoneTile {
    /// Touches the north pole.
    Top = 0,
    Second = 1,
    Third = 2,
    /// Touches the south pole.
    Bottom = 3,
}

/// Tile index of part `part` of timezone `k` (mod the timezone count `n`).
pub fn timezone_tile(n: usize, k: usize, part: TimezoneTile) -> usize {
    4 * (k % n) + part as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum V {
    N,
    S,
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F(usize),
}

type Face = ([V; 5], [Label; 5], Orientation);

fn assemble(faces: Vec<Face>) -> CombinatorialTiling {
    CombinatorialTiling::from_faces(&faces).expect("earth map faces close up")
}

/// E1 with `n` timezones: α^n at both poles, every tile positive.
pub fn e1(n: usize) -> CombinatorialTiling {
    use V::*;
    let m = |i: usize| i % n;
    let p = Orientation::Positive;
    let mut faces = Vec::with_capacity(4 * n);
    for k in 0..n {
        faces.push(([N, A(k), E(k), B(m(k + 1)), A(m(k + 1))], POSITIVE_CYCLE, p));
        faces.push(([A(k), B(k), C(k), F(k), E(k)], POSITIVE_CYCLE, p));
        faces.push(([D(m(k + 1)), C(m(k + 1)), B(m(k + 1)), E(k), F(k)], POSITIVE_CYCLE, p));
        faces.push(([S, D(m(k + 1)), F(k), C(k), D(k)], POSITIVE_CYCLE, p));
    }
    assemble(faces)
}

/// E2 with `n` timezones: γ^n at both poles; the lower two tiles of each
/// timezone are negatively oriented.
pub fn e2(n: usize) -> CombinatorialTiling {
    use V::*;
    let m = |i: usize| i % n;
    let (p, q) = (Orientation::Positive, Orientation::Negative);
    let mut faces = Vec::with_capacity(4 * n);
    for k in 0..n {
        faces.push(([A(k), E(k), B(m(k + 1)), A(m(k + 1)), N], POSITIVE_CYCLE, p));
        faces.push(([F(k), E(k), A(k), B(k), C(k)], POSITIVE_CYCLE, p));
        faces.push(([B(m(k + 1)), E(k), F(k), D(m(k + 1)), C(m(k + 1))], NEGATIVE_CYCLE, q));
        faces.push(([D(k), S, D(m(k + 1)), F(k), C(k)], NEGATIVE_CYCLE, q));
    }
    assemble(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combmap::{degree_stats, extract_avc, verify_tiling};
    use crate::vertex::VertexType;

    fn vt(s: &str) -> VertexType {
        s.parse().unwrap()
    }

    #[test]
    fn e2_16() {
        let t = e2(4);
        let r = verify_tiling(&t);
        assert!(r.pass(), "{r}");
        assert_eq!((r.v, r.e), (26, 40));
        let avc = extract_avc(&t);
        assert_eq!(avc.get(&vt("αδε")), Some(&16));
        assert_eq!(avc.get(&vt("β²γ")), Some(&8));
        assert_eq!(avc.get(&vt("γ⁴")), Some(&2));
        assert_eq!(avc.len(), 3);
    }

    #[test]
    fn e1_16_and_20() {
        let t = e1(4);
        assert!(verify_tiling(&t).pass());
        let d = degree_stats(&t);
        assert_eq!((d[&3], d[&4]), (24, 2));
        assert_eq!(extract_avc(&t).get(&vt("α⁴")), Some(&2));
        let d = degree_stats(&e1(5));
        assert_eq!((d[&3], d[&5]), (30, 2));
    }

    #[test]
    fn timezone_indexing() {
        let t = e2(5);
        let top = timezone_tile(5, 2, TimezoneTile::Top);
        assert_eq!(t.tiles[top].orientation, Orientation::Positive);
        assert_eq!(t.tiles[timezone_tile(5, 7, TimezoneTile::Bottom)].orientation, Orientation::Negative);
    }
}
