//! Spherical trigonometry of the almost equilateral pentagon: the existence
//! identities, edge length solvers, simplicity tests and the infeasibility
//! certificates.

pub mod roots;

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::angle::{default_tol, AngleValue};

#[derive(Debug, Error, PartialEq)]
pub enum PentagonError {
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("no pentagon: cos a = {0} is outside (-1, 1)")]
    NoPentagon(f64),
    #[error("rotation product does not close: |K22 - 1| = {0:e}")]
    NotClosed(f64),
}

/// Tile orientation: `+` when α→β runs counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Orientation::Positive => "+",
            Orientation::Negative => "-",
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl Serialize for Orientation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "+" => Ok(Orientation::Positive),
            "-" => Ok(Orientation::Negative),
            other => Err(serde::de::Error::custom(format!("bad orientation '{other}'"))),
        }
    }
}

fn de_angle<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Val(AngleValue),
    }
    Ok(match Raw::deserialize(d)? {
        Raw::Num(x) => x,
        Raw::Val(v) => v.radians(),
    })
}

fn default_orientation() -> Orientation {
    Orientation::Positive
}

/// The prototile: five angles and the edge lengths a (four edges) and b.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PentagonSpec {
    #[serde(deserialize_with = "de_angle")]
    pub alpha: f64,
    #[serde(deserialize_with = "de_angle")]
    pub beta: f64,
    #[serde(deserialize_with = "de_angle")]
    pub gamma: f64,
    #[serde(deserialize_with = "de_angle")]
    pub delta: f64,
    #[serde(deserialize_with = "de_angle")]
    pub epsilon: f64,
    #[serde(deserialize_with = "de_angle")]
    pub a: f64,
    #[serde(deserialize_with = "de_angle")]
    pub b: f64,
    #[serde(default = "default_orientation")]
    pub orientation: Orientation,
}

impl PentagonSpec {
    /// Angles in label order (α, β, γ, δ, ε).
    pub fn angles(&self) -> [f64; 5] {
        [self.alpha, self.beta, self.gamma, self.delta, self.epsilon]
    }

    pub fn from_angles(angles: [f64; 5], a: f64, b: f64) -> Self {
        PentagonSpec {
            alpha: angles[0],
            beta: angles[1],
            gamma: angles[2],
            delta: angles[3],
            epsilon: angles[4],
            a,
            b,
            orientation: Orientation::Positive,
        }
    }

    /// Area by angle excess.
    pub fn area(&self) -> f64 {
        self.angles().iter().sum::<f64>() - 3.0 * PI
    }

    /// The same pentagon read through the (β,δ)↔(γ,ε) exchange, i.e. its
    /// mirror image with labels swapped.
    pub fn exchanged(&self) -> Self {
        PentagonSpec {
            beta: self.gamma,
            gamma: self.beta,
            delta: self.epsilon,
            epsilon: self.delta,
            orientation: self.orientation.flipped(),
            ..*self
        }
    }
}

impl fmt::Display for PentagonSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["α", "β", "γ", "δ", "ε", "a", "b"];
        let vals = [self.alpha, self.beta, self.gamma, self.delta, self.epsilon, self.a, self.b];
        for (n, v) in names.iter().zip(vals) {
            writeln!(f, "{n} = {v:.12} = {:.6}π", v / PI)?;
        }
        Ok(())
    }
}

/// Left-hand sides of the three existence identities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals3 {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl Residuals3 {
    pub fn max_abs(&self) -> f64 {
        self.r1.abs().max(self.r2.abs()).max(self.r3.abs())
    }
}

/// Rotation about the Y axis.
pub fn rot_y(t: f64) -> Matrix3<f64> {
    let (s, c) = t.sin_cos();
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
}

/// Rotation about the Z axis.
pub fn rot_z(t: f64) -> Matrix3<f64> {
    let (s, c) = t.sin_cos();
    Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

/// The bracketed factor of the first identity (without the trailing cosine).
pub fn eq1_generic(angles: [f64; 5]) -> f64 {
    let [al, be, ga, de, ep] = angles;
    ((1.0 - be.cos()) * (de - al / 2.0).sin() - (1.0 - ga.cos()) * (ep - al / 2.0).sin())
        * ((de - ep) / 2.0).sin()
        - (1.0 - (be - ga).cos()) * (al / 2.0).sin() * ((de + ep) / 2.0).sin()
}

/// The identity that replaces the first one when δ+ε−α is an odd multiple of π.
pub fn eq1_odd(angles: [f64; 5]) -> f64 {
    let [_, be, ga, de, ep] = angles;
    (be / 2.0).cos() * de.cos() * (ga / 2.0).sin() * ep.sin()
        - (be / 2.0).sin() * de.sin() * (ga / 2.0).cos() * ep.cos()
}

pub fn eq1(angles: [f64; 5]) -> f64 {
    let [al, _, _, de, ep] = angles;
    eq1_generic(angles) * ((de + ep - al) / 2.0).cos()
}

pub fn eq2(angles: [f64; 5], a: f64) -> f64 {
    let [al, be, ga, de, ep] = angles;
    (al / 2.0).sin() * ((be - ga) / 2.0).sin() * ((be / 2.0).sin() * de.sin() * a.cos() - (be / 2.0).cos() * de.cos())
        + (ga / 2.0).sin() * ((de - ep) / 2.0).sin() * ((de + ep - al) / 2.0).cos()
}

pub fn eq3(angles: [f64; 5], a: f64) -> f64 {
    let [al, be, ga, de, ep] = angles;
    (al / 2.0).sin() * ((be - ga) / 2.0).sin() * ((ga / 2.0).sin() * ep.sin() * a.cos() - (ga / 2.0).cos() * ep.cos())
        + (be / 2.0).sin() * ((de - ep) / 2.0).sin() * ((de + ep - al) / 2.0).cos()
}

pub fn existence_residuals(angles: [f64; 5], a: f64) -> Residuals3 {
    Residuals3 { r1: eq1(angles), r2: eq2(angles, a), r3: eq3(angles, a) }
}

/// Which form of the first identity applies to these angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Eq1Branch {
    /// δ+ε−α is an odd multiple of π; the value is the `eq1_odd` residual.
    OddMultiple(f64),
    /// Generic case; the value is the `eq1_generic` residual.
    Generic(f64),
}

pub fn eq1_branch(angles: [f64; 5]) -> Eq1Branch {
    let [al, _, _, de, ep] = angles;
    if ((de + ep - al) / 2.0).cos().abs() < 1e-9 {
        Eq1Branch::OddMultiple(eq1_odd(angles))
    } else {
        Eq1Branch::Generic(eq1_generic(angles))
    }
}

/// The residual that has to vanish for the given angles, after branch selection.
pub fn branch_residual(angles: [f64; 5]) -> f64 {
    match eq1_branch(angles) {
        Eq1Branch::OddMultiple(v) | Eq1Branch::Generic(v) => v,
    }
}

/// Solves the second identity for a ∈ (0, π).
pub fn solve_a_from_eq2(angles: [f64; 5]) -> Result<f64, PentagonError> {
    let [al, be, ga, de, ep] = angles;
    let k = (al / 2.0).sin() * ((be - ga) / 2.0).sin();
    if ((be - ga) / 2.0).sin().abs() < 1e-12 {
        return Err(PentagonError::Indeterminate("β = γ makes the identity vanish".into()));
    }
    let den = k * (be / 2.0).sin() * de.sin();
    if den.abs() < 1e-14 {
        return Err(PentagonError::Indeterminate("α or δ is a multiple of π".into()));
    }
    let num = (be / 2.0).cos() * de.cos() * k - (ga / 2.0).sin() * ((de - ep) / 2.0).sin() * ((de + ep - al) / 2.0).cos();
    let c = num / den;
    if !c.is_finite() || c.abs() >= 1.0 {
        return Err(PentagonError::NoPentagon(c));
    }
    Ok(c.acos())
}

/// `K = Z(π−ε)Y(a)Z(π−γ)Y(a)Z(π−α)Y(a)Z(π−β)Y(a)Z(π−δ)`.
pub fn closure_matrix(angles: [f64; 5], a: f64) -> Matrix3<f64> {
    let [al, be, ga, de, ep] = angles;
    rot_z(PI - ep)
        * rot_y(a)
        * rot_z(PI - ga)
        * rot_y(a)
        * rot_z(PI - al)
        * rot_y(a)
        * rot_z(PI - be)
        * rot_y(a)
        * rot_z(PI - de)
}

/// b ∈ (0, 2π) with `Y(b) = Kᵀ`.
pub fn solve_b_closure(angles: [f64; 5], a: f64) -> Result<f64, PentagonError> {
    solve_b_closure_tol(angles, a, default_tol())
}

pub fn solve_b_closure_tol(angles: [f64; 5], a: f64, tol: f64) -> Result<f64, PentagonError> {
    let k = closure_matrix(angles, a);
    let dev = (k[(1, 1)] - 1.0).abs();
    if dev > tol {
        return Err(PentagonError::NotClosed(dev));
    }
    Ok(k[(2, 0)].atan2(k[(0, 0)]).rem_euclid(2.0 * PI))
}

/// Frobenius norm of the five-edge rotation product minus the identity.
pub fn rotation_closure_residual(p: &PentagonSpec) -> f64 {
    let m = rot_y(p.a)
        * rot_z(PI - p.alpha)
        * rot_y(p.a)
        * rot_z(PI - p.beta)
        * rot_y(p.a)
        * rot_z(PI - p.delta)
        * rot_y(p.b)
        * rot_z(PI - p.epsilon)
        * rot_y(p.a)
        * rot_z(PI - p.gamma);
    (m - Matrix3::identity()).norm()
}

/// Result of the sufficient simplicity criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Simplicity {
    /// All hypotheses hold; θ and ρ are the base angles of ABD and ACE.
    Simple { theta: f64, rho: f64 },
    /// The criterion does not decide.
    Inconclusive { theta: Option<f64>, rho: Option<f64>, reason: String },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple { .. })
    }
}

/// Base angle of the isosceles triangle with legs `a` and top angle `top`.
pub fn isosceles_base_angle(a: f64, top: f64) -> f64 {
    1f64.atan2(a.cos() * (top / 2.0).tan())
}

pub fn simplicity_check(p: &PentagonSpec) -> Simplicity {
    if p.alpha >= PI || p.beta >= PI || p.gamma >= PI {
        return Simplicity::Inconclusive {
            theta: None,
            rho: None,
            reason: "α, β, γ must be less than π".into(),
        };
    }
    let theta = isosceles_base_angle(p.a, p.beta);
    let rho = isosceles_base_angle(p.a, p.gamma);
    let sign = (p.beta - p.gamma) * (p.delta - p.epsilon);
    let mut why = Vec::new();
    if p.alpha <= theta {
        why.push("α ≤ θ");
    }
    if p.alpha <= rho {
        why.push("α ≤ ρ");
    }
    if sign >= 0.0 {
        why.push("(β−γ)(δ−ε) ≥ 0");
    }
    if why.is_empty() {
        Simplicity::Simple { theta, rho }
    } else {
        Simplicity::Inconclusive { theta: Some(theta), rho: Some(rho), reason: why.join(", ") }
    }
}

/// β > γ exactly when δ < ε.
pub fn geometry1_consistency(p: &PentagonSpec) -> bool {
    let s = |x: f64| if x.abs() < 1e-12 { 0 } else if x > 0.0 { 1 } else { -1 };
    s(p.beta - p.gamma) == -s(p.delta - p.epsilon)
}

/// Families whose angle systems admit no non-symmetric pentagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfeasibleFamily {
    /// βδ², γε², αβγ with f tiles.
    B2dC2eAbc { f: i64 },
    /// α=β, αγ² and αδε with f = 20.
    AdeAc2F20,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub family: InfeasibleFamily,
    pub samples: usize,
    pub interval: (f64, f64),
    pub min_abs_residual: f64,
    /// Residual where only the symmetric solution survives (δ=ε), if any.
    pub residual_at_symmetric: Option<f64>,
    pub sign_changes: usize,
    /// Largest deviation between the literal and the factorized forms
    /// after scaling by their constant ratio.
    pub factorization_mismatch: f64,
    pub infeasible: bool,
}

/// Grid evaluation of the printed factorizations.
pub fn check_infeasible_family(family: InfeasibleFamily) -> Certificate {
    const N: usize = 10_000;
    match family {
        InfeasibleFamily::B2dC2eAbc { f } => {
            let s = (1.0 + 4.0 / f as f64) * PI;
            let (lo, hi) = (s - PI, PI);
            let literal = |de: f64| {
                let ep = s - de;
                eq1([2.0 * (de + ep - PI), 2.0 * PI - 2.0 * de, 2.0 * PI - 2.0 * ep, de, ep])
            };
            let factored = |de: f64| {
                let ep = s - de;
                let (sd, se) = (de.sin(), ep.sin());
                (sd - se).powi(2) * (sd * sd + se * se + 3.0 * sd * se)
            };
            let mut min = f64::INFINITY;
            let mut mismatch: f64 = 0.0;
            let mut changes = 0;
            let mut prev: Option<f64> = None;
            for i in 0..N {
                let de = lo + (i as f64 + 0.5) * (hi - lo) / N as f64;
                let v = factored(de);
                min = min.min(v.abs());
                mismatch = mismatch.max((literal(de) + v).abs());
                if let Some(p) = prev {
                    if p.signum() != v.signum() {
                        changes += 1;
                    }
                }
                prev = Some(v);
            }
            let at_sym = literal(s / 2.0);
            Certificate {
                family,
                samples: N,
                interval: (lo, hi),
                min_abs_residual: min,
                residual_at_symmetric: Some(at_sym),
                sign_changes: changes,
                factorization_mismatch: mismatch,
                infeasible: min > 0.0 && changes == 0 && at_sym.abs() < 1e-12,
            }
        }
        InfeasibleFamily::AdeAc2F20 => {
            let (lo, hi) = (0.0, 0.8 * PI);
            let r5 = 5f64.sqrt();
            let printed = |ep: f64| (r5 * (r5 - 1.0) * ep.sin() + (50.0 - 22.0 * r5).sqrt() * ep.cos()) * ep.sin();
            let literal = |ep: f64| {
                let al = 0.4 * PI;
                eq1([al, al, 0.8 * PI, 1.6 * PI - ep, ep])
            };
            let ratio = literal(0.3 * PI) / printed(0.3 * PI);
            let mut min = f64::INFINITY;
            let mut mismatch: f64 = 0.0;
            let mut changes = 0;
            let mut prev: Option<f64> = None;
            for i in 0..N {
                let ep = lo + (i as f64 + 0.5) * (hi - lo) / N as f64;
                let v = printed(ep);
                min = min.min(v.abs());
                mismatch = mismatch.max((literal(ep) - ratio * v).abs());
                if let Some(p) = prev {
                    if p.signum() != v.signum() {
                        changes += 1;
                    }
                }
                prev = Some(v);
            }
            Certificate {
                family,
                samples: N,
                interval: (lo, hi),
                min_abs_residual: min,
                residual_at_symmetric: None,
                sign_changes: changes,
                factorization_mismatch: mismatch,
                infeasible: changes == 0 && min > 0.0,
            }
        }
    }
}

/// Vertex positions obtained by walking the boundary from the identity
/// frame: the first corner sits at the north pole and the first edge leaves
/// along the +x meridian. `angles` and `lens` are in walk order; `lens[k]`
/// joins corner k to corner k+1.
pub fn walk(angles: &[f64; 5], lens: &[f64; 5], start: Matrix3<f64>) -> ([Vector3<f64>; 5], Matrix3<f64>) {
    let mut r = start;
    let mut pts = [Vector3::zeros(); 5];
    for k in 0..5 {
        pts[k] = r.column(2).into_owned();
        r = r * rot_y(lens[k]) * rot_z(PI - angles[(k + 1) % 5]);
    }
    (pts, r)
}

/// Corner positions in label order (α, β, γ, δ, ε) for the pentagon walked
/// counterclockwise from the north pole.
pub fn corner_positions(p: &PentagonSpec) -> [Vector3<f64>; 5] {
    // ccw: α β δ ε γ with edges a a b a a
    let ang = [p.alpha, p.beta, p.delta, p.epsilon, p.gamma];
    let lens = [p.a, p.a, p.b, p.a, p.a];
    let (pts, _) = walk(&ang, &lens, Matrix3::identity());
    [pts[0], pts[1], pts[4], pts[2], pts[3]]
}

/// Interior angle at `v` of a counterclockwise spherical polygon with
/// neighbours `prev` and `next`.
pub fn interior_angle(prev: &Vector3<f64>, v: &Vector3<f64>, next: &Vector3<f64>) -> f64 {
    let tangent = |w: &Vector3<f64>| (w - v * v.dot(w)).normalize();
    let (tn, tp) = (tangent(next), tangent(prev));
    v.dot(&tn.cross(&tp)).atan2(tn.dot(&tp)).rem_euclid(2.0 * PI)
}

/// Area of a counterclockwise spherical polygon from its measured angles.
pub fn polygon_area(pts: &[Vector3<f64>]) -> f64 {
    let n = pts.len();
    let s: f64 = (0..n)
        .map(|i| interior_angle(&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]))
        .sum();
    s - (n as f64 - 2.0) * PI
}

fn on_arc(x: &Vector3<f64>, p: &Vector3<f64>, q: &Vector3<f64>, n: &Vector3<f64>) -> bool {
    const EPS: f64 = 1e-12;
    p.cross(x).dot(n) >= -EPS && x.cross(q).dot(n) >= -EPS
}

/// Whether the minor great-circle arcs `p1p2` and `q1q2` meet.
pub fn arcs_intersect(p1: &Vector3<f64>, p2: &Vector3<f64>, q1: &Vector3<f64>, q2: &Vector3<f64>) -> bool {
    let n1 = p1.cross(p2);
    let n2 = q1.cross(q2);
    let d = n1.cross(&n2);
    if d.norm() < 1e-14 {
        // same great circle: overlap iff an endpoint lies on the other arc
        return on_arc(q1, p1, p2, &n1) || on_arc(q2, p1, p2, &n1) || on_arc(p1, q1, q2, &n2);
    }
    let d = d.normalize();
    [d, -d].iter().any(|x| on_arc(x, p1, p2, &n1) && on_arc(x, q1, q2, &n2))
}

/// No two non-adjacent edges of the closed polygon meet.
pub fn polygon_is_simple(pts: &[Vector3<f64>]) -> bool {
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if arcs_intersect(&pts[i], &pts[(i + 1) % n], &pts[j], &pts[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Walk-based simplicity and area for a full spec.
pub fn numeric_shape(p: &PentagonSpec) -> (bool, f64) {
    let c = corner_positions(p);
    let ccw = [c[0], c[1], c[3], c[4], c[2]];
    (polygon_is_simple(&ccw), polygon_area(&ccw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pp24() -> [f64; 5] {
        let t = -(3f64.powf(0.75)) / (2f64.sqrt() + 3f64.powf(0.75));
        let ep = PI + t.atan();
        [2.0 * PI / 3.0, 2.0 * PI / 3.0, PI / 2.0, 4.0 * PI / 3.0 - ep, ep]
    }

    #[test]
    fn symmetric_residuals_vanish() {
        for a in [0.1, 0.7, 1.3] {
            let r = existence_residuals([1.0, 2.0, 2.0, 1.7, 1.7], a);
            assert_eq!((r.r1, r.r2, r.r3), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn four_digit_inputs_give_small_residuals() {
        let ep = 0.8240 * PI;
        let ang = [2.0 * PI / 3.0, 2.0 * PI / 3.0, PI / 2.0, 4.0 * PI / 3.0 - ep, ep];
        assert!(existence_residuals(ang, 0.1781 * PI).max_abs() < 1e-3);
        let ep = 0.7889 * PI;
        let al = 0.75 * PI;
        let ang = [al, al, PI / 2.0, 1.25 * PI - ep, ep];
        assert!(existence_residuals(ang, 0.1992 * PI).max_abs() < 1e-3);
    }

    #[test]
    fn cos_a_closed_form() {
        let a = solve_a_from_eq2(pp24()).unwrap();
        assert_abs_diff_eq!(a.cos(), (2.0 * 3f64.sqrt() + 3.0).sqrt() / 3.0, epsilon = 1e-12);
        let b = solve_b_closure(pp24(), a).unwrap();
        let cb = ((2.0 * 3f64.sqrt() + 3.0).sqrt() + 2.0) / (3.0 * 3f64.sqrt());
        assert_abs_diff_eq!(b.cos(), cb, epsilon = 1e-12);
        assert!(matches!(
            solve_a_from_eq2([PI / 2.0, 0.75 * PI, 0.75 * PI, 0.625 * PI, 0.625 * PI]),
            Err(PentagonError::Indeterminate(_))
        ));
    }

    #[test]
    fn closure_and_perturbation() {
        let ang = pp24();
        let a = solve_a_from_eq2(ang).unwrap();
        let b = solve_b_closure(ang, a).unwrap();
        let p = PentagonSpec::from_angles(ang, a, b);
        assert!(rotation_closure_residual(&p) < 1e-9);
        let q = PentagonSpec { b: b + 1e-3, ..p };
        assert!(rotation_closure_residual(&q) > 1e-4);
        assert!(solve_b_closure(ang, a + 1e-3).is_err());
    }

    #[test]
    fn all_sign_conventions_close_golden() {
        // The identity holds for either handedness of Y and Z on this pentagon;
        // checked by conjugating with reflections.
        let ang = pp24();
        let a = solve_a_from_eq2(ang).unwrap();
        let b = solve_b_closure(ang, a).unwrap();
        let p = PentagonSpec::from_angles(ang, a, b);
        let flip_y = |t: f64| rot_y(-t);
        let flip_z = |t: f64| rot_z(-t);
        for (yy, zz) in [(true, true), (true, false), (false, true), (false, false)] {
            let y = |t: f64| if yy { rot_y(t) } else { flip_y(t) };
            let z = |t: f64| if zz { rot_z(t) } else { flip_z(t) };
            let m = y(p.a) * z(PI - p.alpha) * y(p.a) * z(PI - p.beta) * y(p.a) * z(PI - p.delta)
                * y(p.b) * z(PI - p.epsilon) * y(p.a) * z(PI - p.gamma);
            assert!((m - Matrix3::identity()).norm() < 1e-9);
        }
    }

    #[test]
    fn walk_matches_spec() {
        let ang = pp24();
        let a = solve_a_from_eq2(ang).unwrap();
        let b = solve_b_closure(ang, a).unwrap();
        let p = PentagonSpec::from_angles(ang, a, b);
        let c = corner_positions(&p);
        let ccw = [c[0], c[1], c[3], c[4], c[2]];
        let want = [p.alpha, p.beta, p.delta, p.epsilon, p.gamma];
        for i in 0..5 {
            let got = interior_angle(&ccw[(i + 4) % 5], &ccw[i], &ccw[(i + 1) % 5]);
            assert_abs_diff_eq!(got, want[i], epsilon = 1e-9);
        }
        assert_abs_diff_eq!((c[3] - c[4]).norm(), 2.0 * (b / 2.0).sin(), epsilon = 1e-12);
        let (simple, area) = numeric_shape(&p);
        assert!(simple);
        assert_abs_diff_eq!(area, PI / 6.0, epsilon = 1e-9);
    }

    #[test]
    fn simplicity_examples() {
        let ang = pp24();
        let a = solve_a_from_eq2(ang).unwrap();
        let p = PentagonSpec::from_angles(ang, a, solve_b_closure(ang, a).unwrap());
        match simplicity_check(&p) {
            Simplicity::Simple { theta, rho } => assert!(theta < PI / 2.0 && rho < PI / 2.0),
            other => panic!("{other:?}"),
        }
        let sym = PentagonSpec::from_angles([1.0, 2.0, 2.0, 1.7, 1.7], 0.5, 0.6);
        assert!(!simplicity_check(&sym).is_simple());
        assert!(geometry1_consistency(&sym));
        let bad = PentagonSpec::from_angles([1.0, 2.1, 2.0, 1.8, 1.7], 0.5, 0.6);
        assert!(!geometry1_consistency(&bad));
    }

    #[test]
    fn branch_selection() {
        // δ+ε−α = π: the generic factor is multiplied by zero
        let ang = [PI / 2.0, PI / 2.0, 0.75 * PI, 1.2 * PI, 0.3 * PI];
        assert!(eq1(ang).abs() < 1e-15);
        assert!(matches!(eq1_branch(ang), Eq1Branch::OddMultiple(_)));
        let ang = [PI / 2.0, PI / 2.0, 0.75 * PI, 1.1 * PI, 0.3 * PI];
        assert!(matches!(eq1_branch(ang), Eq1Branch::Generic(_)));
    }

    #[test]
    fn exchange_symmetry_of_eq1() {
        for &(al, be, ga, de, ep) in &[(1.0, 2.0, 1.5, 1.2, 1.9), (0.7, 2.5, 1.1, 0.4, 2.2)] {
            let x = eq1([al, be, ga, de, ep]);
            let y = eq1([al, ga, be, ep, de]);
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn infeasibility() {
        let c = check_infeasible_family(InfeasibleFamily::B2dC2eAbc { f: 16 });
        assert!(c.infeasible, "{c:?}");
        assert!(c.factorization_mismatch < 1e-12);
        let s = 1.25 * PI;
        let de = (s + 0.1 * PI) / 2.0;
        let ep = s - de;
        let v = (de.sin() - ep.sin()).powi(2) * (de.sin().powi(2) + ep.sin().powi(2) + 3.0 * de.sin() * ep.sin());
        assert!(v > 1e-6);
        let c = check_infeasible_family(InfeasibleFamily::AdeAc2F20);
        assert!(c.infeasible && c.sign_changes == 0);
        assert!(c.factorization_mismatch < 1e-12);
    }

    #[test]
    fn pentagon_json() {
        let p = PentagonSpec::from_angles(pp24(), 0.5, 0.6);
        let s = serde_json::to_string(&p).unwrap();
        let q: PentagonSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        let r: PentagonSpec = serde_json::from_str(
            r#"{"alpha":{"num":2,"den":3},"beta":{"num":2,"den":3},"gamma":{"num":1,"den":2},
                "delta":1.6,"epsilon":{"rad":2.58},"a":0.5,"b":0.6}"#,
        )
        .unwrap();
        assert_abs_diff_eq!(r.alpha, 2.0 * PI / 3.0);
        assert_eq!(r.orientation, Orientation::Positive);
    }
}
