//! Labeled half-edge maps of pentagonal tilings and their verifier.
//!
//! Half-edge `(t, k)` is slot `k` of tile `t`: it starts at corner `k` and
//! ends at corner `k+1`, corners being listed counterclockwise. Its id is
//! `5t + k`; `next` is `(t, k+1)`.

mod surgery;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pentagon::Orientation;
use crate::vertex::{counting_check, parity_check, CountingReport, Label, LabelMode, VertexType};

pub use surgery::{
    angle_sum_violations, boundary_cycle, canonical_form, canonical_form_by, is_isomorphic, mirror_tile, reflect_about_vertex, reflect_region,
    reflection_fixing, reglue, CanonicalForm, Reglue,
};

#[derive(Debug, Error, PartialEq)]
pub enum CombError {
    #[error("half-edge {0:?} has no twin")]
    MissingTwin((usize, usize)),
    #[error("half-edge {0:?} appears twice")]
    DuplicateEdge((usize, usize)),
    #[error("region boundary is not a single cycle")]
    BoundaryNotCycle,
    #[error("pivot vertex {vertex} occurs {hits} times on the boundary")]
    Pivot { vertex: usize, hits: usize },
    #[error("region is empty or covers every tile")]
    TrivialRegion,
    #[error("invalid tiling JSON: {0}")]
    Json(String),
}

/// `(tile, slot)`.
pub type Dart = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    A,
    B,
}

/// Counterclockwise corner order of a positively oriented tile.
pub const POSITIVE_CYCLE: [Label; 5] = [Label::Alpha, Label::Beta, Label::Delta, Label::Epsilon, Label::Gamma];
/// Counterclockwise corner order of a negatively oriented tile.
pub const NEGATIVE_CYCLE: [Label; 5] = [Label::Alpha, Label::Gamma, Label::Epsilon, Label::Delta, Label::Beta];

pub fn cycle_for(o: Orientation) -> [Label; 5] {
    match o {
        Orientation::Positive => POSITIVE_CYCLE,
        Orientation::Negative => NEGATIVE_CYCLE,
    }
}

/// Label of the edge joining two corners of one tile.
pub fn structural_edge(x: Label, y: Label) -> EdgeLabel {
    match (x, y) {
        (Label::Delta, Label::Epsilon) | (Label::Epsilon, Label::Delta) => EdgeLabel::B,
        _ => EdgeLabel::A,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tile {
    pub corners: [Label; 5],
    pub orientation: Orientation,
    pub twins: [Dart; 5],
    pub edges: [EdgeLabel; 5],
}

impl Tile {
    pub fn slot_of(&self, l: Label) -> usize {
        self.corners.iter().position(|&c| c == l).expect("label present")
    }
}

/// Read-only view of one half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfEdge {
    pub id: usize,
    pub twin: usize,
    pub next: usize,
    pub tile: usize,
    pub corner: Label,
    pub edge: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombinatorialTiling {
    pub tiles: Vec<Tile>,
}

/// Vertices as corner orbits plus the corner → vertex lookup.
#[derive(Clone, Debug)]
pub struct VertexIndex {
    pub orbits: Vec<Vec<Dart>>,
    pub of: Vec<[usize; 5]>,
}

impl VertexIndex {
    pub fn vertex_type(&self, t: &CombinatorialTiling, v: usize) -> VertexType {
        VertexType::from_labels(self.orbits[v].iter().map(|&(u, k)| t.tiles[u].corners[k]))
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

impl CombinatorialTiling {
    pub fn f(&self) -> usize {
        self.tiles.len()
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.tiles[d.0].twins[d.1]
    }

    pub fn corner(&self, d: Dart) -> Label {
        self.tiles[d.0].corners[d.1]
    }

    pub fn half_edge(&self, id: usize) -> HalfEdge {
        let (t, k) = (id / 5, id % 5);
        let (u, j) = self.tiles[t].twins[k];
        HalfEdge {
            id,
            twin: 5 * u + j,
            next: 5 * t + (k + 1) % 5,
            tile: t,
            corner: self.tiles[t].corners[k],
            edge: self.tiles[t].edges[k],
        }
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..5 * self.f()).map(|i| self.half_edge(i))
    }

    /// Builds a map from faces given by vertex names listed counterclockwise,
    /// with `corners[i]` sitting at `verts[i]`.
    pub fn from_faces<V: Eq + Hash + Clone + fmt::Debug>(
        faces: &[([V; 5], [Label; 5], Orientation)],
    ) -> Result<Self, CombError> {
        let mut idx: HashMap<(V, V), Dart> = HashMap::new();
        for (t, (vs, _, _)) in faces.iter().enumerate() {
            for k in 0..5 {
                let key = (vs[k].clone(), vs[(k + 1) % 5].clone());
                if idx.insert(key, (t, k)).is_some() {
                    return Err(CombError::DuplicateEdge((t, k)));
                }
            }
        }
        let mut tiles = Vec::with_capacity(faces.len());
        for (t, (vs, corners, o)) in faces.iter().enumerate() {
            let mut twins = [(0, 0); 5];
            let mut edges = [EdgeLabel::A; 5];
            for k in 0..5 {
                let key = (vs[(k + 1) % 5].clone(), vs[k].clone());
                twins[k] = *idx.get(&key).ok_or(CombError::MissingTwin((t, k)))?;
                edges[k] = structural_edge(corners[k], corners[(k + 1) % 5]);
            }
            tiles.push(Tile { corners: *corners, orientation: *o, twins, edges });
        }
        Ok(CombinatorialTiling { tiles })
    }

    /// Corner orbits around vertices, numbered by first appearance.
    pub fn vertex_index(&self) -> VertexIndex {
        let n = self.f();
        let mut of = vec![[usize::MAX; 5]; n];
        let mut orbits = Vec::new();
        for t in 0..n {
            for k in 0..5 {
                if of[t][k] != usize::MAX {
                    continue;
                }
                let id = orbits.len();
                let mut orb = Vec::new();
                let mut cur = (t, k);
                // bounded walk: a malformed map must not loop forever
                for _ in 0..=5 * n {
                    if of[cur.0][cur.1] != usize::MAX {
                        break;
                    }
                    of[cur.0][cur.1] = id;
                    orb.push(cur);
                    let (u, j) = self.twin(cur);
                    if u >= n || j >= 5 {
                        break;
                    }
                    cur = (u, (j + 1) % 5);
                }
                orbits.push(orb);
            }
        }
        VertexIndex { orbits, of }
    }

    /// Tiles sharing an edge with `t`.
    pub fn neighbours(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.tiles[t].twins.iter().map(|d| d.0)
    }
}

/// Realized vertex types with multiplicities.
pub fn extract_avc(t: &CombinatorialTiling) -> BTreeMap<VertexType, usize> {
    let vi = t.vertex_index();
    let mut out = BTreeMap::new();
    for v in 0..vi.len() {
        *out.entry(vi.vertex_type(t, v)).or_insert(0) += 1;
    }
    out
}

/// Degree histogram `k → v_k`.
pub fn degree_stats(t: &CombinatorialTiling) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for orb in t.vertex_index().orbits {
        *out.entry(orb.len()).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub offenders: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub degrees: BTreeMap<usize, usize>,
    pub twisted_pairs: usize,
    pub matched_pairs: usize,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v={} e={} f={}", self.v, self.e, self.f)?;
        for c in &self.checks {
            write!(f, "  [{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name)?;
            if !c.offenders.is_empty() {
                let shown: Vec<_> = c.offenders.iter().take(5).cloned().collect();
                write!(f, ": {}", shown.join("; "))?;
                if c.offenders.len() > 5 {
                    write!(f, " (+{} more)", c.offenders.len() - 5)?;
                }
            }
            writeln!(f)?;
        }
        let d: Vec<String> = self.degrees.iter().map(|(k, n)| format!("v{k}={n}")).collect();
        writeln!(f, "  degrees: {}", d.join(" "))?;
        write!(f, "  companion pairs: {} twisted, {} matched", self.twisted_pairs, self.matched_pairs)
    }
}

fn check(name: &str, offenders: Vec<String>) -> Check {
    Check { name: name.into(), passed: offenders.is_empty(), offenders }
}

fn is_rotation_of(c: &[Label; 5], cyc: &[Label; 5]) -> bool {
    (0..5).any(|r| (0..5).all(|i| c[i] == cyc[(i + r) % 5]))
}

/// Runs every combinatorial check. Later checks are skipped (reported as
/// failed) when the half-edge structure itself is broken.
pub fn verify_tiling(t: &CombinatorialTiling) -> VerifyReport {
    let n = t.f();
    let mut checks = Vec::new();

    // (i) structure
    let mut bad = Vec::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        for k in 0..5 {
            let (u, j) = tile.twins[k];
            if u >= n || j >= 5 {
                bad.push(format!("half-edge {} twin out of range", 5 * ti + k));
            } else if (u, j) == (ti, k) {
                bad.push(format!("half-edge {} is its own twin", 5 * ti + k));
            } else if t.tiles[u].twins[j] != (ti, k) {
                bad.push(format!("half-edge {} twin not involutive", 5 * ti + k));
            }
        }
    }
    let structural_ok = bad.is_empty();
    checks.push(check("half-edge structure", bad));

    // (ii) label cycles
    let bad: Vec<String> = t
        .tiles
        .iter()
        .enumerate()
        .filter(|(_, tile)| !is_rotation_of(&tile.corners, &cycle_for(tile.orientation)))
        .map(|(i, tile)| format!("tile {i} corners do not match orientation {}", tile.orientation))
        .collect();
    checks.push(check("corner cycle", bad));

    // (iii) edge labels
    let mut bad = Vec::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        for k in 0..5 {
            let want = structural_edge(tile.corners[k], tile.corners[(k + 1) % 5]);
            if tile.edges[k] != want {
                bad.push(format!("half-edge {} labelled {:?}, corners imply {:?}", 5 * ti + k, tile.edges[k], want));
            }
            if structural_ok {
                let (u, j) = tile.twins[k];
                if t.tiles[u].edges[j] != tile.edges[k] {
                    bad.push(format!("half-edge {} and twin {} differ in length", 5 * ti + k, 5 * u + j));
                }
            }
        }
    }
    checks.push(check("edge labels", bad));

    if !structural_ok {
        for name in ["euler", "vertex count identities", "parity", "companion pairs"] {
            checks.push(check(name, vec!["skipped: broken half-edge structure".into()]));
        }
        return VerifyReport {
            checks,
            v: 0,
            e: 5 * n / 2,
            f: n,
            degrees: BTreeMap::new(),
            twisted_pairs: 0,
            matched_pairs: 0,
        };
    }

    let vi = t.vertex_index();
    let v = vi.len();
    let e = 5 * n / 2;
    let degrees: BTreeMap<usize, usize> = vi.orbits.iter().fold(BTreeMap::new(), |mut m, o| {
        *m.entry(o.len()).or_insert(0) += 1;
        m
    });

    // (iv) Euler
    let mut bad = Vec::new();
    if !n.is_multiple_of(2) {
        bad.push(format!("5f = {} is odd", 5 * n));
    }
    if v as i64 - e as i64 + n as i64 != 2 {
        bad.push(format!("v - e + f = {}", v as i64 - e as i64 + n as i64));
    }
    checks.push(check("euler", bad));

    // (v) degree identities
    let mut bad = Vec::new();
    for (i, o) in vi.orbits.iter().enumerate() {
        if o.len() < 3 {
            bad.push(format!("vertex {i} has degree {}", o.len()));
        }
    }
    let high: i64 = degrees.iter().filter(|(k, _)| **k >= 4).map(|(k, c)| 2 * (*k as i64 - 3) * *c as i64).sum();
    if n as i64 != 12 + high {
        bad.push(format!("f = {n} but 12 + Σ2(k-3)v_k = {}", 12 + high));
    }
    let v3 = *degrees.get(&3).unwrap_or(&0) as i64;
    let rhs: i64 = 20 + degrees.iter().filter(|(k, _)| **k >= 4).map(|(k, c)| (3 * *k as i64 - 10) * *c as i64).sum::<i64>();
    if v3 != rhs {
        bad.push(format!("v3 = {v3} but 20 + Σ(3k-10)v_k = {rhs}"));
    }
    checks.push(check("vertex count identities", bad));

    // (vi) parity
    let bad: Vec<String> = (0..v)
        .filter(|&i| !parity_check(&vi.vertex_type(t, i)))
        .map(|i| format!("vertex {i} = {}", vi.vertex_type(t, i)))
        .collect();
    checks.push(check("parity", bad));

    // (vii) companion pairs
    let mut bad = Vec::new();
    let (mut twisted, mut matched) = (0, 0);
    for (ti, tile) in t.tiles.iter().enumerate() {
        let bs: Vec<usize> = (0..5).filter(|&k| tile.edges[k] == EdgeLabel::B).collect();
        if bs.len() != 1 {
            bad.push(format!("tile {ti} has {} b-edges", bs.len()));
            continue;
        }
        let k = bs[0];
        let (u, j) = tile.twins[k];
        if u == ti {
            bad.push(format!("tile {ti} is its own companion"));
            continue;
        }
        if ti < u {
            // t.c[k] meets u.c[j+1]
            if tile.corners[k] == t.tiles[u].corners[(j + 1) % 5] {
                matched += 1;
            } else {
                twisted += 1;
            }
        }
    }
    checks.push(check("companion pairs", bad));

    VerifyReport { checks, v, e, f: n, degrees, twisted_pairs: twisted, matched_pairs: matched }
}

/// Counting lemma on the realized multiplicities.
pub fn counting_report(t: &CombinatorialTiling, mode: LabelMode) -> CountingReport {
    let m = extract_avc(t);
    let m = match mode {
        LabelMode::Distinct => m,
        LabelMode::Collapsed => m.into_iter().fold(BTreeMap::new(), |mut acc, (v, c)| {
            *acc.entry(v.collapsed()).or_insert(0) += c;
            acc
        }),
    };
    counting_check(&m, t.f(), mode)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct HalfEdgeJson {
    twin: [usize; 2],
    edge: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct TileJson {
    corners: [Label; 5],
    orientation: Orientation,
    halfedges: [HalfEdgeJson; 5],
}

/// The tiling file format. `positions` (indexed by vertex number, in the
/// order of [`CombinatorialTiling::vertex_index`]) is present for realized
/// tilings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TilingJson {
    f: usize,
    tiles: Vec<TileJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<[f64; 3]>>,
}

impl TilingJson {
    pub fn from_tiling(t: &CombinatorialTiling, positions: Option<Vec<[f64; 3]>>) -> Self {
        let tiles = t
            .tiles
            .iter()
            .map(|tile| TileJson {
                corners: tile.corners,
                orientation: tile.orientation,
                halfedges: std::array::from_fn(|k| HalfEdgeJson {
                    twin: [tile.twins[k].0, tile.twins[k].1],
                    edge: tile.edges[k],
                }),
            })
            .collect();
        TilingJson { f: t.f(), tiles, positions }
    }

    pub fn to_tiling(&self) -> Result<CombinatorialTiling, CombError> {
        if self.f != self.tiles.len() {
            return Err(CombError::Json(format!("f = {} but {} tiles", self.f, self.tiles.len())));
        }
        Ok(CombinatorialTiling {
            tiles: self
                .tiles
                .iter()
                .map(|t| Tile {
                    corners: t.corners,
                    orientation: t.orientation,
                    twins: std::array::from_fn(|k| (t.halfedges[k].twin[0], t.halfedges[k].twin[1])),
                    edges: std::array::from_fn(|k| t.halfedges[k].edge),
                })
                .collect(),
        })
    }
}

impl CombinatorialTiling {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TilingJson::from_tiling(self, None)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, CombError> {
        let j: TilingJson = serde_json::from_str(s).map_err(|e| CombError::Json(e.to_string()))?;
        j.to_tiling()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dodecahedron-style map: two caps of 1+5 faces.
    pub(crate) fn dodecahedron() -> CombinatorialTiling {
        // vertices: top ring T0..T4, upper middle U0..U4, lower middle L0..L4, bottom B0..B4
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        enum V {
            T(usize),
            U(usize),
            L(usize),
            B(usize),
        }
        use V::*;
        let m = |i: usize| i % 5;
        let mut faces = Vec::new();
        let lab = POSITIVE_CYCLE;
        faces.push(([T(0), T(1), T(2), T(3), T(4)], lab, Orientation::Positive));
        for i in 0..5 {
            faces.push(([T(m(i + 1)), T(i), U(i), L(i), U(m(i + 1))], lab, Orientation::Positive));
            faces.push(([U(m(i + 1)), L(i), B(i), B(m(i + 1)), L(m(i + 1))], lab, Orientation::Positive));
        }
        faces.push(([B(4), B(3), B(2), B(1), B(0)], lab, Orientation::Positive));
        CombinatorialTiling::from_faces(&faces).unwrap()
    }

    #[test]
    fn dodecahedron_structure() {
        let t = dodecahedron();
        let r = verify_tiling(&t);
        assert_eq!((r.v, r.e, r.f), (20, 30, 12));
        assert_eq!(r.degrees, [(3, 20)].into_iter().collect());
        // labels are arbitrary here, so only structural checks hold
        assert!(r.checks[0].passed && r.checks[1].passed && r.checks[3].passed);
        let back = CombinatorialTiling::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn broken_twin_is_reported() {
        let mut t = dodecahedron();
        t.tiles[0].twins[0] = (0, 0);
        let r = verify_tiling(&t);
        assert!(!r.checks[0].passed);
        assert!(!r.pass());
    }

    #[test]
    fn half_edge_view() {
        let t = dodecahedron();
        for h in t.half_edges() {
            assert_eq!(t.half_edge(h.twin).twin, h.id);
            assert_eq!(t.half_edge(h.next).tile, h.tile);
        }
    }
}
