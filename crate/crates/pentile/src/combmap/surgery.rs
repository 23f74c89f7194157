//! Cut-and-reglue operations, mirroring, and canonical forms.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use super::{CombError, CombinatorialTiling, Dart, Tile};
use crate::vertex::Label;

/// How the complement of a fixed region is glued back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reglue {
    /// Boundary half-edge `B_i` is glued to the outside half-edge formerly at `B_{i+s}`.
    Rotate(usize),
    /// The outside is mirrored and `B_i` is glued to the mirror of the
    /// half-edge formerly at `B_{s-i}`.
    Reflect(usize),
}

/// Mirror image of one tile. Slot `s` becomes slot `4-s`, so twins must be
/// remapped by the caller.
pub fn mirror_tile(tile: &Tile) -> Tile {
    Tile {
        corners: std::array::from_fn(|j| tile.corners[(5 - j) % 5]),
        orientation: tile.orientation.flipped(),
        twins: std::array::from_fn(|s| {
            let (u, k) = tile.twins[4 - s];
            (u, 4 - k)
        }),
        edges: std::array::from_fn(|s| tile.edges[4 - s]),
    }
}

/// Half-edges of `region` whose twins lie outside it, in boundary order.
///
/// Starts at the smallest such half-edge and walks with the region on the
/// left. Fails if the boundary has more than one component.
pub fn boundary_cycle(t: &CombinatorialTiling, region: &BTreeSet<usize>) -> Result<Vec<Dart>, CombError> {
    if region.is_empty() || region.len() >= t.f() {
        return Err(CombError::TrivialRegion);
    }
    let outside = |d: Dart| !region.contains(&t.twin(d).0);
    let start = region
        .iter()
        .flat_map(|&u| (0..5).map(move |k| (u, k)))
        .find(|&d| outside(d))
        .ok_or(CombError::BoundaryNotCycle)?;
    let total = region.iter().flat_map(|&u| (0..5).map(move |k| (u, k))).filter(|&d| outside(d)).count();
    let mut cyc = vec![start];
    loop {
        let (u, k) = *cyc.last().unwrap();
        let mut cur = (u, (k + 1) % 5);
        let mut guard = 0;
        while !outside(cur) {
            let (w, j) = t.twin(cur);
            cur = (w, (j + 1) % 5);
            guard += 1;
            if guard > 5 * t.f() {
                return Err(CombError::BoundaryNotCycle);
            }
        }
        if cur == start {
            break;
        }
        cyc.push(cur);
        if cyc.len() > total {
            return Err(CombError::BoundaryNotCycle);
        }
    }
    if cyc.len() != total {
        return Err(CombError::BoundaryNotCycle);
    }
    Ok(cyc)
}

/// Cuts along the boundary of `fixed` and reattaches the rest by `op`.
/// The result is only structurally glued; validity is up to the caller.
pub fn reglue(t: &CombinatorialTiling, fixed: &BTreeSet<usize>, op: Reglue) -> Result<CombinatorialTiling, CombError> {
    let b = boundary_cycle(t, fixed)?;
    let m = b.len();
    let g: Vec<Dart> = b.iter().map(|&d| t.twin(d)).collect();
    let mut out = t.clone();
    match op {
        Reglue::Rotate(s) => {
            for (i, &(u, k)) in b.iter().enumerate() {
                let (w, j) = g[(i + s) % m];
                out.tiles[u].twins[k] = (w, j);
                out.tiles[w].twins[j] = (u, k);
            }
        }
        Reglue::Reflect(s) => {
            for u in 0..t.f() {
                if !fixed.contains(&u) {
                    out.tiles[u] = mirror_tile(&t.tiles[u]);
                }
            }
            for (i, &(u, k)) in b.iter().enumerate() {
                let (w, j) = g[(s + m - i % m) % m];
                let j = 4 - j;
                out.tiles[u].twins[k] = (w, j);
                out.tiles[w].twins[j] = (u, k);
            }
        }
    }
    Ok(out)
}

/// The reflection parameter that keeps the origin of boundary half-edge
/// `B_i` in place.
pub fn reflection_fixing(i: usize, m: usize) -> usize {
    (2 * i + m - 1) % m
}

/// Mirrors `region` across the boundary vertex `v`, which stays in place.
pub fn reflect_about_vertex(t: &CombinatorialTiling, region: &BTreeSet<usize>, v: usize) -> Result<CombinatorialTiling, CombError> {
    let fixed: BTreeSet<usize> = (0..t.f()).filter(|u| !region.contains(u)).collect();
    let b = boundary_cycle(t, &fixed)?;
    let vi = t.vertex_index();
    let hits: Vec<usize> = (0..b.len()).filter(|&i| vi.of[b[i].0][b[i].1] == v).collect();
    match hits.as_slice() {
        [i] => reglue(t, &fixed, Reglue::Reflect(reflection_fixing(*i, b.len()))),
        _ => Err(CombError::Pivot { vertex: v, hits: hits.len() }),
    }
}

/// Mirrors `region` in place, trying every reflection of its boundary and
/// keeping those accepted by `accept`.
pub fn reflect_region<F>(t: &CombinatorialTiling, region: &BTreeSet<usize>, mut accept: F) -> Result<Vec<(usize, CombinatorialTiling)>, CombError>
where
    F: FnMut(&CombinatorialTiling) -> bool,
{
    let fixed: BTreeSet<usize> = (0..t.f()).filter(|u| !region.contains(u)).collect();
    let m = boundary_cycle(t, &fixed)?.len();
    let mut out = Vec::new();
    for s in 0..m {
        let n = reglue(t, &fixed, Reglue::Reflect(s))?;
        if accept(&n) {
            out.push((s, n));
        }
    }
    Ok(out)
}

/// Vertices whose angle sum misses 2π, under numeric angles in label order.
/// Degree below three also counts as a violation.
pub fn angle_sum_violations(t: &CombinatorialTiling, angles: &[f64; 5], tol: f64) -> Vec<usize> {
    let vi = t.vertex_index();
    (0..vi.len())
        .filter(|&v| {
            let o = &vi.orbits[v];
            let s: f64 = o.iter().map(|&d| angles[t.corner(d).index()]).sum();
            o.len() < 3 || (s - 2.0 * PI).abs() > tol
        })
        .collect()
}

/// Isomorphism invariant up to relabeling tiles, rotating, and mirroring.
pub type CanonicalForm = Vec<(u8, u32)>;

fn traverse<K: Fn(Label) -> u8>(
    t: &CombinatorialTiling,
    key: &K,
    t0: usize,
    j0: usize,
    mirror: bool,
    best: Option<&CanonicalForm>,
) -> Option<CanonicalForm> {
    let n = t.f();
    let mut order = vec![u32::MAX; n];
    let mut start = vec![0usize; n];
    let mut queue = Vec::with_capacity(n);
    order[t0] = 0;
    start[t0] = j0;
    queue.push(t0);
    let mut code = Vec::with_capacity(5 * n);
    let mut i = 0;
    let mut smaller = false;
    while i < queue.len() {
        let u = queue[i];
        i += 1;
        for d in 0..5 {
            let (c, slot) = if mirror {
                let c = (start[u] + 5 - d) % 5;
                (c, (c + 4) % 5)
            } else {
                let c = (start[u] + d) % 5;
                (c, c)
            };
            let (w, k) = t.tiles[u].twins[slot];
            if order[w] == u32::MAX {
                order[w] = queue.len() as u32;
                start[w] = if mirror { (k + 1) % 5 } else { k };
                queue.push(w);
            }
            let entry = (key(t.tiles[u].corners[c]), order[w]);
            if let (Some(b), false) = (best, smaller) {
                let pos = code.len();
                match entry.cmp(&b[pos]) {
                    std::cmp::Ordering::Greater => return None,
                    std::cmp::Ordering::Less => smaller = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            code.push(entry);
        }
    }
    if queue.len() < n {
        // disconnected map: append remaining tile count to keep codes comparable
        code.push((u8::MAX, (n - queue.len()) as u32));
    }
    Some(code)
}

pub fn canonical_form(t: &CombinatorialTiling) -> CanonicalForm {
    canonical_form_by(t, |l| l.index() as u8)
}

/// Canonical form after mapping labels through `key`; with the collapsing
/// key β≡γ, δ≡ε it identifies tilings by the symmetric pentagon.
pub fn canonical_form_by<K: Fn(Label) -> u8>(t: &CombinatorialTiling, key: K) -> CanonicalForm {
    let mut best: Option<CanonicalForm> = None;
    for mirror in [false, true] {
        for t0 in 0..t.f() {
            for j0 in 0..5 {
                if let Some(c) = traverse(t, &key, t0, j0, mirror, best.as_ref()) {
                    if best.as_ref().is_none_or(|b| c < *b) {
                        best = Some(c);
                    }
                }
            }
        }
    }
    best.unwrap_or_default()
}

pub fn is_isomorphic(a: &CombinatorialTiling, b: &CombinatorialTiling) -> bool {
    a.f() == b.f() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combmap::tests::dodecahedron;
    use crate::combmap::verify_tiling;

    fn mirror_all(t: &CombinatorialTiling) -> CombinatorialTiling {
        CombinatorialTiling { tiles: t.tiles.iter().map(mirror_tile).collect() }
    }

    #[test]
    fn mirror_is_involution_and_isomorphic() {
        let t = dodecahedron();
        let m = mirror_all(&t);
        assert_eq!(mirror_all(&m), t);
        assert!(verify_tiling(&m).checks[0].passed);
        assert!(is_isomorphic(&t, &m));
    }

    #[test]
    fn boundary_of_single_tile() {
        let t = dodecahedron();
        let b = boundary_cycle(&t, &[0].into_iter().collect()).unwrap();
        assert_eq!(b, (0..5).map(|k| (0, k)).collect::<Vec<_>>());
        let cap: BTreeSet<usize> = (0..6).collect();
        assert_eq!(boundary_cycle(&t, &cap).unwrap().len(), 10);
    }

    #[test]
    fn reglue_identity_and_relabel_invariance() {
        let t = dodecahedron();
        let cap: BTreeSet<usize> = [0, 1, 3, 5, 7, 9].into_iter().collect();
        let same = reglue(&t, &cap, Reglue::Rotate(0)).unwrap();
        assert_eq!(same, t);
        let rot = reglue(&t, &cap, Reglue::Rotate(2)).unwrap();
        assert!(verify_tiling(&rot).checks[0].passed);
        assert_eq!(reglue(&rot, &cap, Reglue::Rotate(8)).unwrap(), t);
        for s in 0..10 {
            let r = reglue(&t, &cap, Reglue::Reflect(s)).unwrap();
            assert!(verify_tiling(&r).checks[0].passed);
            assert_eq!(reglue(&r, &cap, Reglue::Reflect(s)).unwrap(), t);
        }
    }
}
