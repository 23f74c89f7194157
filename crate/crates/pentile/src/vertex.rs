//! Vertex types, anglewise vertex combinations and the counting lemmas.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{pentagon_angle_sum, Angle, AngleValue};

#[derive(Debug, Error, PartialEq)]
pub enum VertexError {
    #[error("max_degree must be at least 3, got {0}")]
    MaxDegree(usize),
    #[error("angle {0} is not positive")]
    NonPositive(Label),
    #[error("angle sum {got} differs from (3+4/f)π = {want} for f={f}")]
    AngleSum { f: i64, got: f64, want: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse vertex type '{0}'")]
    Parse(String),
}

/// The five corner labels of the pentagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
}

impl Label {
    pub const ALL: [Label; 5] = [Label::Alpha, Label::Beta, Label::Gamma, Label::Delta, Label::Epsilon];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn greek(self) -> char {
        ['α', 'β', 'γ', 'δ', 'ε'][self.index()]
    }

    pub fn name(self) -> &'static str {
        ["alpha", "beta", "gamma", "delta", "epsilon"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.name() == s)
    }

    pub fn from_char(c: char) -> Option<Label> {
        match c {
            'α' | 'a' => Some(Label::Alpha),
            'β' | 'b' => Some(Label::Beta),
            'γ' | 'g' | 'c' => Some(Label::Gamma),
            'δ' | 'd' => Some(Label::Delta),
            'ε' | 'e' => Some(Label::Epsilon),
            _ => None,
        }
    }

    /// The (β,δ)↔(γ,ε) exchange.
    pub fn exchanged(self) -> Label {
        match self {
            Label::Beta => Label::Gamma,
            Label::Gamma => Label::Beta,
            Label::Delta => Label::Epsilon,
            Label::Epsilon => Label::Delta,
            Label::Alpha => Label::Alpha,
        }
    }

    /// γ ↦ β and ε ↦ δ, as for the symmetric pentagon.
    pub fn collapsed(self) -> Label {
        match self {
            Label::Gamma => Label::Beta,
            Label::Epsilon => Label::Delta,
            l => l,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.greek())
    }
}

/// Multiset of angles at a vertex: `(n_α, n_β, n_γ, n_δ, n_ε)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexType {
    pub counts: [u32; 5],
}

impl VertexType {
    pub fn new(counts: [u32; 5]) -> Self {
        VertexType { counts }
    }

    pub fn from_labels<I: IntoIterator<Item = Label>>(labels: I) -> Self {
        let mut counts = [0; 5];
        for l in labels {
            counts[l.index()] += 1;
        }
        VertexType { counts }
    }

    pub fn degree(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn count(&self, l: Label) -> u32 {
        self.counts[l.index()]
    }

    /// Collapses β,γ into β and δ,ε into δ (symmetric pentagon labels).
    pub fn collapsed(&self) -> VertexType {
        let c = self.counts;
        VertexType { counts: [c[0], c[1] + c[2], 0, c[3] + c[4], 0] }
    }

    pub fn exchanged(&self) -> VertexType {
        let c = self.counts;
        VertexType { counts: [c[0], c[2], c[1], c[4], c[3]] }
    }

    /// True if the vertex is incident to a b-edge.
    pub fn is_b_vertex(&self) -> bool {
        self.count(Label::Delta) + self.count(Label::Epsilon) > 0
    }
}

fn superscript(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in Label::ALL {
            match self.count(l) {
                0 => {}
                1 => write!(f, "{}", l.greek())?,
                n => write!(f, "{}{}", l.greek(), superscript(n))?,
            }
        }
        Ok(())
    }
}

impl FromStr for VertexType {
    type Err = VertexError;

    /// Accepts `αδε`, `β²γ`, `γ^4`, `a b^2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VertexError::Parse(s.to_string());
        let mut counts = [0u32; 5];
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let l = Label::from_char(chars[i]).ok_or_else(err)?;
            i += 1;
            let mut digits = String::new();
            if i < chars.len() && chars[i] == '^' {
                i += 1;
            }
            while i < chars.len() {
                let c = chars[i];
                if let Some(d) = c.to_digit(10) {
                    digits.push(char::from_digit(d, 10).unwrap());
                } else if let Some(p) = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|x| x == c) {
                    digits.push(char::from_digit(p as u32, 10).unwrap());
                } else {
                    break;
                }
                i += 1;
            }
            let n: u32 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| err())? };
            counts[l.index()] += n;
        }
        if counts.iter().sum::<u32>() == 0 {
            return Err(err());
        }
        Ok(VertexType { counts })
    }
}

/// Values of the five angles, exact where possible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleAssignment {
    pub values: [AngleValue; 5],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<i64>,
}

impl AngleAssignment {
    /// Builds an assignment, checking the pentagon angle sum when `f` is given.
    pub fn new(values: [AngleValue; 5], f: Option<i64>) -> Result<Self, VertexError> {
        let a = AngleAssignment { values, f };
        for l in Label::ALL {
            if a.values[l.index()].radians() <= 0.0 {
                return Err(VertexError::NonPositive(l));
            }
        }
        if let Some(f) = f {
            let want = pentagon_angle_sum(f).map_err(|e| VertexError::Precondition(e.to_string()))?;
            let ok = match a.exact() {
                Some(ex) => ex.iter().copied().sum::<Angle>() == want,
                None => (a.radians().iter().sum::<f64>() - want.radians()).abs() < 1e-9,
            };
            if !ok {
                return Err(VertexError::AngleSum {
                    f,
                    got: a.radians().iter().sum(),
                    want: want.radians(),
                });
            }
        }
        Ok(a)
    }

    pub fn from_exact(values: [Angle; 5], f: Option<i64>) -> Result<Self, VertexError> {
        Self::new(values.map(AngleValue::Exact), f)
    }

    /// Unchecked numeric assignment (no sum check).
    pub fn from_radians(values: [f64; 5]) -> Result<Self, VertexError> {
        let vals = values.map(|x| {
            crate::angle::FreeAngle::new(x).map(AngleValue::Free)
        });
        let mut out = [AngleValue::Exact(Angle::zero()); 5];
        for (i, v) in vals.into_iter().enumerate() {
            out[i] = v.map_err(|e| VertexError::Precondition(e.to_string()))?;
        }
        Self::new(out, None)
    }

    pub fn radians(&self) -> [f64; 5] {
        self.values.map(|v| v.radians())
    }

    pub fn exact(&self) -> Option<[Angle; 5]> {
        let mut out = [Angle::zero(); 5];
        for (i, v) in self.values.iter().enumerate() {
            out[i] = v.exact()?;
        }
        Some(out)
    }

    pub fn get(&self, l: Label) -> f64 {
        self.values[l.index()].radians()
    }
}

/// Anglewise vertex combination: a set of vertex types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Avc(pub BTreeSet<VertexType>);

impl Avc {
    pub fn contains(&self, v: &VertexType) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexType> {
        self.0.iter()
    }

    /// Adds the (β,δ)↔(γ,ε) image of every member; for a symmetric pentagon
    /// this is the uncollapsed form of a collapsed AVC.
    pub fn symmetric_closure(&self) -> Avc {
        Avc(self.0.iter().flat_map(|v| [*v, v.exchanged()]).collect())
    }

    pub fn collapsed(&self) -> Avc {
        Avc(self.0.iter().map(|v| v.collapsed()).collect())
    }
}

impl FromIterator<VertexType> for Avc {
    fn from_iter<I: IntoIterator<Item = VertexType>>(it: I) -> Self {
        Avc(it.into_iter().collect())
    }
}

impl fmt::Display for Avc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

pub fn parity_check(v: &VertexType) -> bool {
    (v.count(Label::Delta) + v.count(Label::Epsilon)).is_multiple_of(2)
}

pub fn vertex_angle_sum(v: &VertexType, a: &AngleAssignment) -> f64 {
    Label::ALL.iter().map(|&l| v.count(l) as f64 * a.get(l)).sum()
}

/// All vertex types of degree 3..=max_degree whose angle sum is 2π (within
/// `tol`) and which pass the parity check. With `tol == 0` and an exact
/// assignment the sums are compared exactly.
pub fn enumerate_vertices(a: &AngleAssignment, max_degree: usize, tol: f64) -> Result<Avc, VertexError> {
    if max_degree < 3 {
        return Err(VertexError::MaxDegree(max_degree));
    }
    let rad = a.radians();
    for l in Label::ALL {
        if rad[l.index()] <= 0.0 {
            return Err(VertexError::NonPositive(l));
        }
    }
    let exact = if tol == 0.0 { a.exact() } else { None };
    let slack = if exact.is_some() { 0.0 } else { tol };
    let cap: Vec<u32> = rad
        .iter()
        .map(|x| (((2.0 * PI + slack) / x).floor() as u32).min(max_degree as u32))
        .collect();

    let mut out = BTreeSet::new();
    let mut c = [0u32; 5];
    #[allow(clippy::needless_range_loop)]
    fn rec(
        i: usize,
        c: &mut [u32; 5],
        cap: &[u32],
        max_degree: u32,
        accept: &dyn Fn(&[u32; 5]) -> bool,
        out: &mut BTreeSet<VertexType>,
    ) {
        if i == 5 {
            let d: u32 = c.iter().sum();
            if d >= 3 && accept(c) {
                let v = VertexType::new(*c);
                if parity_check(&v) {
                    out.insert(v);
                }
            }
            return;
        }
        let used: u32 = c[..i].iter().sum();
        for n in 0..=cap[i].min(max_degree - used) {
            c[i] = n;
            rec(i + 1, c, cap, max_degree, accept, out);
        }
        c[i] = 0;
    }

    let accept: Box<dyn Fn(&[u32; 5]) -> bool> = match exact {
        Some(ex) => {
            let two = Angle::frac(2, 1);
            Box::new(move |c: &[u32; 5]| {
                (0..5).map(|i| ex[i] * c[i] as i64).sum::<Angle>() == two
            })
        }
        None => Box::new(move |c: &[u32; 5]| {
            let s: f64 = (0..5).map(|i| c[i] as f64 * rad[i]).sum();
            (s - 2.0 * PI).abs() <= tol
        }),
    };
    rec(0, &mut c, &cap, max_degree as u32, accept.as_ref(), &mut out);
    Ok(Avc(out))
}

/// δ²⋯ occurs iff ε²⋯ occurs.
pub fn balance_check(avc: &Avc) -> bool {
    let d2 = avc.iter().any(|v| v.count(Label::Delta) >= 2);
    let e2 = avc.iter().any(|v| v.count(Label::Epsilon) >= 2);
    d2 == e2
}

/// Whether labels are read as five distinct angles or in collapsed
/// symmetric form (β,γ → β and δ,ε → δ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    Distinct,
    Collapsed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub f: usize,
    pub mode: LabelMode,
    pub totals: [usize; 5],
    pub expected: [usize; 5],
    pub failures: Vec<Label>,
}

impl CountingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Each angle appears exactly once per tile, so each label total is `f`
/// (or `2f` for the merged labels in collapsed mode).
pub fn counting_check(mults: &BTreeMap<VertexType, usize>, f: usize, mode: LabelMode) -> CountingReport {
    let mut totals = [0usize; 5];
    for (v, m) in mults {
        for l in Label::ALL {
            totals[l.index()] += v.count(l) as usize * m;
        }
    }
    let expected = match mode {
        LabelMode::Distinct => [f; 5],
        LabelMode::Collapsed => [f, 2 * f, 0, 2 * f, 0],
    };
    let failures = Label::ALL
        .into_iter()
        .filter(|l| totals[l.index()] != expected[l.index()])
        .collect();
    CountingReport { f, mode, totals, expected, failures }
}

/// Admissible pairs of degree-3 b-vertices without α.
pub fn degree3_b_vertex_pairs_allowed(p: &VertexType, q: &VertexType) -> Result<bool, VertexError> {
    for v in [p, q] {
        if v.degree() != 3 || !v.is_b_vertex() || v.count(Label::Alpha) != 0 {
            return Err(VertexError::Precondition(format!(
                "{v} must be a degree 3 b-vertex without α"
            )));
        }
    }
    let allowed = [("βδε", "γε²"), ("γδε", "βδ²"), ("βδ²", "γε²")];
    Ok(allowed.iter().any(|(x, y)| {
        let x: VertexType = x.parse().unwrap();
        let y: VertexType = y.parse().unwrap();
        (*p == x && *q == y) || (*p == y && *q == x)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use proptest::test_runner::RngSeed;

    fn vt(s: &str) -> VertexType {
        s.parse().unwrap()
    }

    fn exact(v: [(i64, i64); 5]) -> AngleAssignment {
        AngleAssignment::from_exact(v.map(|(p, q)| Angle::frac(p, q)), None).unwrap()
    }

    #[test]
    fn display_parse_roundtrip() {
        for s in ["αδε", "β²γ", "γ⁴", "αβ²", "α¹²β"] {
            assert_eq!(vt(s).to_string(), s);
        }
        assert_eq!(vt("a b^2"), vt("αβ²"));
        assert_eq!(serde_json::to_string(&vt("β²γ")).unwrap(), "[0,2,1,0,0]");
    }

    #[test]
    fn parity_examples() {
        assert!(parity_check(&vt("αδε")));
        assert!(parity_check(&vt("αδ²")));
        assert!(!parity_check(&vt("αβδ")));
    }

    #[test]
    fn angle_sum_examples() {
        let e2 = exact([(3, 4), (3, 4), (1, 2), (5, 8), (5, 8)]);
        assert!((vertex_angle_sum(&vt("αδε"), &e2) - 2.0 * PI).abs() < 1e-12);
        assert!((vertex_angle_sum(&vt("β²γ"), &e2) - 2.0 * PI).abs() < 1e-12);
        assert!((vertex_angle_sum(&vt("γ⁴"), &e2) - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn enumerate_e1_16() {
        let a = exact([(1, 2), (3, 4), (3, 4), (5, 8), (5, 8)]);
        let avc = enumerate_vertices(&a, 5, 1e-9).unwrap().collapsed();
        let want: Avc = ["αβ²", "βδ²", "α⁴"].iter().map(|s| vt(s)).collect();
        assert_eq!(avc, want);
        assert_eq!(enumerate_vertices(&a, 5, 0.0).unwrap(), enumerate_vertices(&a, 5, 1e-9).unwrap());
    }

    #[test]
    fn enumerate_rejects_small_degree() {
        let a = exact([(1, 2), (3, 4), (3, 4), (5, 8), (5, 8)]);
        assert_eq!(enumerate_vertices(&a, 2, 1e-9), Err(VertexError::MaxDegree(2)));
    }

    #[test]
    fn balance_examples() {
        let a: Avc = ["αδε", "β²γ", "γ⁴"].iter().map(|s| vt(s)).collect();
        assert!(balance_check(&a));
        let b: Avc = ["αβ²", "βδ²", "α⁴"].iter().map(|s| vt(s)).collect();
        // with δ=ε collapsed the δ² side stands for both δ² and ε²
        assert!(balance_check(&b.symmetric_closure()));
        let c: Avc = ["βδ²", "αβγ"].iter().map(|s| vt(s)).collect();
        assert!(!balance_check(&c));
    }

    #[test]
    fn counting_examples() {
        let m: BTreeMap<_, _> = [(vt("αδε"), 16), (vt("β²γ"), 8), (vt("γ⁴"), 2)].into_iter().collect();
        assert!(counting_check(&m, 16, LabelMode::Distinct).pass());
        let m: BTreeMap<_, _> = [(vt("αβ²"), 8), (vt("βδ²"), 16), (vt("α⁴"), 2)].into_iter().collect();
        let r = counting_check(&m, 16, LabelMode::Collapsed);
        assert!(r.pass());
        assert_eq!((r.totals[0], r.totals[1], r.totals[3]), (16, 32, 32));
        let m: BTreeMap<_, _> = [(vt("αδε"), 15), (vt("β²γ"), 8), (vt("γ⁴"), 2)].into_iter().collect();
        let r = counting_check(&m, 16, LabelMode::Distinct);
        assert!(r.failures.contains(&Label::Alpha));
    }

    #[test]
    fn b_vertex_pairs() {
        assert_eq!(degree3_b_vertex_pairs_allowed(&vt("βδε"), &vt("γε²")), Ok(true));
        assert_eq!(degree3_b_vertex_pairs_allowed(&vt("βδ²"), &vt("γε²")), Ok(true));
        assert_eq!(degree3_b_vertex_pairs_allowed(&vt("βε²"), &vt("γδ²")), Ok(false));
        assert!(degree3_b_vertex_pairs_allowed(&vt("αδε"), &vt("γε²")).is_err());
    }

    fn brute(rad: [f64; 5], max_degree: u32, tol: f64) -> Avc {
        let bound = max_degree;
        let mut out = BTreeSet::new();
        for a in 0..=bound {
            for b in 0..=bound {
                for c in 0..=bound {
                    for d in 0..=bound {
                        for e in 0..=bound {
                            let v = VertexType::new([a, b, c, d, e]);
                            let deg = v.degree();
                            if deg < 3 || deg > max_degree || !parity_check(&v) {
                                continue;
                            }
                            let s: f64 = (0..5).map(|i| v.counts[i] as f64 * rad[i]).sum();
                            if (s - 2.0 * PI).abs() <= tol {
                                out.insert(v);
                            }
                        }
                    }
                }
            }
        }
        Avc(out)
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(5), ..ProptestConfig::default() })]
        #[test]
        fn enumeration_matches_brute_force(f in 4i64..7, d in 1i64..40) {
            // E2-style exact angles: α+δ+ε=2π, β²γ, γ^{f/4}
            let f = 4 * f;
            let beta = Angle::frac(f - 4, f);
            let gamma = Angle::frac(8, f);
            let delta = Angle::frac(d, 40);
            let s = Angle::frac(f + 4, f);
            let eps = s - delta;
            prop_assume!(eps.num() > 0);
            let alpha = Angle::frac(2, 1) - s;
            let a = AngleAssignment::from_exact([alpha, beta, gamma, delta, eps], Some(f)).unwrap();
            let fast = enumerate_vertices(&a, 6, 1e-9).unwrap();
            prop_assert_eq!(&fast, &brute(a.radians(), 6, 1e-9));
            prop_assert_eq!(&fast, &enumerate_vertices(&a, 6, 0.0).unwrap());
        }
    }
}
