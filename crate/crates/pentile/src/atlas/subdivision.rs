//! Pentagonal subdivisions of the octahedron and icosahedron.

use nalgebra::Vector3;

use super::PpVariant;
use crate::combmap::{CombError, CombinatorialTiling};
use crate::pentagon::Orientation;
use crate::vertex::Label;

/// Faces of the octahedron, counterclockwise seen from outside.
pub fn octahedron_faces() -> Vec<[usize; 3]> {
    // vertices: 0 +x, 1 -x, 2 +y, 3 -y, 4 +z, 5 -z
    let mut out = Vec::new();
    for sx in [0, 1] {
        for sy in [2, 3] {
            for sz in [4, 5] {
                let odd = (sx + (sy - 2) + (sz - 4)) % 2 == 1;
                out.push(if odd { [sx, sz, sy] } else { [sx, sy, sz] });
            }
        }
    }
    out
}

/// Faces of the icosahedron, counterclockwise seen from outside.
pub fn icosahedron_faces() -> Vec<[usize; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            v.push(Vector3::new(0.0, s1, s2 * phi));
            v.push(Vector3::new(s1, s2 * phi, 0.0));
            v.push(Vector3::new(s2 * phi, 0.0, s1));
        }
    }
    let adj = |i: usize, j: usize| ((v[i] - v[j]).norm() - 2.0).abs() < 1e-9;
    let mut out = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if adj(i, j) && adj(j, k) && adj(i, k) {
                    let n = (v[j] - v[i]).cross(&(v[k] - v[i]));
                    out.push(if n.dot(&v[i]) > 0.0 { [i, j, k] } else { [i, k, j] });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum V {
    Center(usize),
    Corner(usize),
    /// The point on edge {p, q} nearer p.
    Edge(usize, usize),
}

/// Splits each triangle into three pentagons around a new center vertex.
pub fn pentagonal_subdivision(faces: &[[usize; 3]], variant: PpVariant) -> Result<CombinatorialTiling, CombError> {
    use Label::*;
    let (labels, o) = match variant {
        PpVariant::AlphaCubed => ([Beta, Delta, Epsilon, Gamma, Alpha], Orientation::Positive),
        PpVariant::GammaCubed => ([Gamma, Epsilon, Delta, Beta, Alpha], Orientation::Negative),
    };
    let mut tiles = Vec::with_capacity(3 * faces.len());
    for (fi, p) in faces.iter().enumerate() {
        for i in 0..3 {
            let (a, b, c) = (p[i], p[(i + 1) % 3], p[(i + 2) % 3]);
            let verts = [V::Center(fi), V::Edge(a, b), V::Edge(b, a), V::Corner(b), V::Edge(b, c)];
            tiles.push((verts, labels, o));
        }
    }
    CombinatorialTiling::from_faces(&tiles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combmap::{degree_stats, extract_avc, verify_tiling};

    #[test]
    fn counts() {
        assert_eq!(octahedron_faces().len(), 8);
        assert_eq!(icosahedron_faces().len(), 20);
        for v in [PpVariant::AlphaCubed, PpVariant::GammaCubed] {
            let t = pentagonal_subdivision(&octahedron_faces(), v).unwrap();
            assert!(verify_tiling(&t).pass());
            let d = degree_stats(&t);
            assert_eq!((d[&3], d[&4]), (32, 6));
            let t = pentagonal_subdivision(&icosahedron_faces(), v).unwrap();
            assert!(verify_tiling(&t).pass());
            assert_eq!(degree_stats(&t)[&5], 12);
        }
        let avc = extract_avc(&pentagonal_subdivision(&octahedron_faces(), PpVariant::AlphaCubed).unwrap());
        assert_eq!(avc.get(&"αδε".parse().unwrap()), Some(&24));
        assert_eq!(avc.get(&"β³".parse().unwrap()), Some(&8));
        assert_eq!(avc.get(&"γ⁴".parse().unwrap()), Some(&6));
    }
}
