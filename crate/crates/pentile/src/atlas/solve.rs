//! Pentagon parameter solvers for each family.

use std::f64::consts::PI;

use serde::Serialize;

use super::{AtlasError, Family, PpVariant};
use crate::pentagon::roots::{bracketed, scan};
use crate::pentagon::{
    eq1_odd, eq1_generic, solve_a_from_eq2, solve_b_closure, Orientation, PentagonSpec,
};

/// The pentagon shape a family needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PentagonFamily {
    /// β=γ, δ=ε.
    E1,
    /// One-parameter family with AVC {αδε, β²γ, γ^{f/4}}.
    E2General,
    /// The member of the E2 family with α=β.
    E2AlphaEqBeta,
    Subdivision(PpVariant),
    /// Labels as in the S16 builder output: α=β=π/2, γ=3π/4.
    S16,
}

impl Family {
    pub fn pentagon_family(&self) -> PentagonFamily {
        match self {
            Family::E1 | Family::F1E1 | Family::F2E1 => PentagonFamily::E1,
            Family::E2 | Family::RE2 => PentagonFamily::E2General,
            Family::F1E2 | Family::F2E2 | Family::F2E2Prime { .. } | Family::F2E2DoublePrime => {
                PentagonFamily::E2AlphaEqBeta
            }
            Family::PP8(v) | Family::PP20(v) => PentagonFamily::Subdivision(*v),
            Family::S16 => PentagonFamily::S16,
        }
    }
}

const SCAN: usize = 4000;

fn spec_from(angles: [f64; 5]) -> Result<PentagonSpec, AtlasError> {
    let a = solve_a_from_eq2(angles)?;
    let b = solve_b_closure(angles, a)?;
    Ok(PentagonSpec::from_angles(angles, a, b))
}

/// Solves for ε on the line δ+ε = `s` with α, β, γ fixed, requiring a
/// unique root in `(lo, hi)`.
pub fn solve_on_line(al: f64, be: f64, ga: f64, s: f64, lo: f64, hi: f64) -> Result<PentagonSpec, AtlasError> {
    let odd = ((s - al) / 2.0).cos().abs() < 1e-9;
    let g = |e: f64| {
        let ang = [al, be, ga, s - e, e];
        if odd {
            eq1_odd(ang)
        } else {
            eq1_generic(ang)
        }
    };
    let roots = scan(g, lo, hi, SCAN);
    match roots.as_slice() {
        [] => Err(AtlasError::NoRoot(format!("no root for ε in ({:.4}π, {:.4}π)", lo / PI, hi / PI))),
        [e] => spec_from([al, be, ga, s - e, *e]),
        many => Err(AtlasError::NoRoot(format!("{} roots for ε in ({:.4}π, {:.4}π)", many.len(), lo / PI, hi / PI))),
    }
}

fn check_f(family: &str, f: usize, ok: bool, why: &str) -> Result<(), AtlasError> {
    if ok {
        Ok(())
    } else {
        Err(AtlasError::Inadmissible { family: family.into(), f, reason: why.into() })
    }
}

/// `cos a = 1 + (√5−3)/4 · sec²(2π/f)`.
pub fn e1_cos_a(f: usize) -> f64 {
    let s = 1.0 / (2.0 * PI / f as f64).cos();
    1.0 + (5f64.sqrt() - 3.0) / 4.0 * s * s
}

pub fn e1_angles(f: usize) -> [f64; 5] {
    let f = f as f64;
    let be = (1.0 - 4.0 / f) * PI;
    let de = (0.5 + 2.0 / f) * PI;
    [8.0 * PI / f, be, be, de, de]
}

fn solve_e1(f: usize) -> Result<PentagonSpec, AtlasError> {
    check_f("e1", f, f >= 12 && f.is_multiple_of(4), "f must be a multiple of 4, at least 12")?;
    let ang = e1_angles(f);
    let c = e1_cos_a(f);
    if !(c > -1.0 && c < 1.0) {
        return Err(AtlasError::NoRoot(format!("cos a = {c}")));
    }
    let a = c.acos();
    let b = solve_b_closure(ang, a)?;
    Ok(PentagonSpec::from_angles(ang, a, b))
}

/// Coefficients of `A cos²ε + B cos ε sin ε + C sin²ε = 0` for the α=β
/// earth map pentagon, with the admissible roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaEqBetaQuadratic {
    pub f: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// The two roots in tan ε, the negative one first when the signs differ.
    pub tan_roots: [f64; 2],
    /// ε ∈ ((½+2/f)π, (1+4/f)π) for each root that has one there.
    pub candidates: Vec<f64>,
    /// ε values landing in ((½+2/f)π, π).
    pub below_pi: Vec<f64>,
}

pub fn alpha_eq_beta_quadratic(f: usize) -> AlphaEqBetaQuadratic {
    let th = 4.0 * PI / f as f64;
    let a = 2.0 + 2.0 * th.cos() - (3.0 * th).cos() - 2.0 * (4.0 * th).cos() - (5.0 * th).cos();
    let b = 4.0 * th.sin() + 4.0 * (2.0 * th).sin() + 4.0 * (3.0 * th).sin() + 2.0 * (4.0 * th).sin();
    let c = -6.0 * th.cos() - 4.0 * (2.0 * th).cos() - (3.0 * th).cos() - 4.0 * (4.0 * th).cos() - (5.0 * th).cos();
    // C t² + B t + A = 0 with t = tan ε
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    let mut r = [(-b - disc) / (2.0 * c), (-b + disc) / (2.0 * c)];
    r.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let lo = (0.5 + 2.0 / f as f64) * PI;
    let hi = (1.0 + 4.0 / f as f64) * PI;
    let mut candidates = Vec::new();
    for t in r {
        let base = t.atan().rem_euclid(PI);
        for e in [base, base + PI] {
            if e > lo && e < hi {
                candidates.push(e);
            }
        }
    }
    let below_pi = candidates.iter().copied().filter(|&e| e < PI).collect();
    AlphaEqBetaQuadratic { f, a, b, c, tan_roots: r, candidates, below_pi }
}

pub fn alpha_eq_beta_angles(f: usize, eps: f64) -> [f64; 5] {
    let f = f as f64;
    let be = (1.0 - 4.0 / f) * PI;
    [be, be, 8.0 * PI / f, (1.0 + 4.0 / f) * PI - eps, eps]
}

fn solve_alpha_eq_beta(f: usize) -> Result<PentagonSpec, AtlasError> {
    check_f("e2 (α=β)", f, f >= 16 && f.is_multiple_of(4), "f must be a multiple of 4, at least 16")?;
    let q = alpha_eq_beta_quadratic(f);
    // f = 16 has both roots negative; otherwise only ε₋ qualifies
    let eps = match (f, q.below_pi.as_slice(), q.candidates.as_slice()) {
        (16, _, [e]) => *e,
        (_, [e], _) => *e,
        _ => return Err(AtlasError::NoRoot(format!("{} admissible roots of the quadratic", q.below_pi.len()))),
    };
    spec_from(alpha_eq_beta_angles(f, eps))
}

/// `(α, β, γ, δ+ε, ε range)` of the subdivision pentagons.
pub fn subdivision_setup(variant: PpVariant, f: usize) -> Result<(f64, f64, f64, f64, f64, f64), AtlasError> {
    let k = match f {
        24 => 4.0,
        60 => 5.0,
        _ => return Err(AtlasError::Inadmissible { family: "pp".into(), f, reason: "only f=24 and f=60".into() }),
    };
    Ok(match variant {
        PpVariant::AlphaCubed => {
            let s = 4.0 * PI / 3.0;
            (2.0 * PI / 3.0, 2.0 * PI / 3.0, 2.0 * PI / k, s, s / 2.0, s)
        }
        PpVariant::GammaCubed => {
            let al = 2.0 * PI / k;
            let s = 2.0 * PI - al;
            (al, al, 2.0 * PI / 3.0, s, 0.0, s / 2.0)
        }
    })
}

fn solve_subdivision(variant: PpVariant, f: usize) -> Result<PentagonSpec, AtlasError> {
    let (al, be, ga, s, lo, hi) = subdivision_setup(variant, f)?;
    let mut p = solve_on_line(al, be, ga, s, lo, hi)?;
    if variant == PpVariant::GammaCubed {
        // the γ³ tiles are all negatively oriented in the builder
        p.orientation = Orientation::Negative;
    }
    Ok(p)
}

fn solve_s16(f: usize) -> Result<PentagonSpec, AtlasError> {
    check_f("s16", f, f == 16, "only f=16")?;
    let s = 1.5 * PI;
    solve_on_line(PI / 2.0, PI / 2.0, 0.75 * PI, s, 0.0, s / 2.0)
}

/// δ for a given ε on the general E2 branch, with α = 2π−δ−ε ∈ (0, π).
pub fn e2_delta(f: usize, eps: f64) -> Option<f64> {
    let (be, ga) = e2_fixed(f);
    let lo = (PI - eps).max(0.0);
    let hi = eps.min(2.0 * PI - eps);
    if hi <= lo {
        return None;
    }
    let g = |d: f64| eq1_generic([2.0 * PI - d - eps, be, ga, d, eps]);
    scan(g, lo, hi, 400).into_iter().next().or_else(|| bracketed(g, lo + 1e-13, hi - 1e-13))
}

fn e2_fixed(f: usize) -> (f64, f64) {
    ((1.0 - 4.0 / f as f64) * PI, 8.0 * PI / f as f64)
}

/// The general E2 pentagon parameterized by ε.
pub fn e2_at_eps(f: usize, eps: f64) -> Result<PentagonSpec, AtlasError> {
    let (be, ga) = e2_fixed(f);
    let d = e2_delta(f, eps).ok_or_else(|| AtlasError::NoRoot(format!("no δ for ε = {:.6}π", eps / PI)))?;
    spec_from([2.0 * PI - d - eps, be, ga, d, eps])
}

fn iso_area(a: f64, top: f64) -> f64 {
    top + 2.0 * crate::pentagon::isosceles_base_angle(a, top) - PI
}

/// Endpoints of the branch in ε: where α reaches π and where δ reaches 0.
fn e2_eps_range(f: usize) -> Result<(f64, f64), AtlasError> {
    let (be, ga) = e2_fixed(f);
    let at_pi = |e: f64| eq1_generic([PI, be, ga, PI - e, e]);
    let e0 = scan(at_pi, 0.5 * PI, PI, SCAN)
        .into_iter()
        .next()
        .ok_or_else(|| AtlasError::BracketFailure("α=π endpoint".into()))?;
    let at_zero = |e: f64| eq1_generic([2.0 * PI - e, be, ga, 0.0, e]);
    let e_end = scan(at_zero, PI, 2.0 * PI, SCAN)
        .into_iter()
        .next()
        .ok_or_else(|| AtlasError::BracketFailure("δ=0 endpoint".into()))?;
    Ok((e0, e_end))
}

/// `(a₀(f), a₁(f))`: a₀ at the degenerate end α=π of the branch, a₁ from the
/// isosceles area condition with top angles π−θ and 2θ, θ = 4π/f.
pub fn e2_parameter_interval(f: usize) -> Result<(f64, f64), AtlasError> {
    check_f("e2", f, f >= 16 && f.is_multiple_of(4), "f must be a multiple of 4, at least 16")?;
    let (be, ga) = e2_fixed(f);
    let (e0, _) = e2_eps_range(f)?;
    let a0 = solve_a_from_eq2([PI, be, ga, PI - e0, e0])?;
    let th = 4.0 * PI / f as f64;
    let g = |a: f64| iso_area(a, PI - th) + iso_area(a, 2.0 * th) - th;
    let a1 = bracketed(g, 1e-9, PI / 2.0).ok_or_else(|| AtlasError::BracketFailure("area condition".into()))?;
    if !(a0 < a1) {
        return Err(AtlasError::BracketFailure(format!("a0 = {a0} is not below a1 = {a1}")));
    }
    Ok((a0, a1))
}

fn solve_e2_general(f: usize, a: f64) -> Result<PentagonSpec, AtlasError> {
    let (lo, hi) = e2_parameter_interval(f)?;
    if !(a > lo && a < hi) {
        return Err(AtlasError::OutsideInterval { a, lo, hi });
    }
    let (e0, e_end) = e2_eps_range(f)?;
    let a_of = |e: f64| e2_at_eps(f, e).map(|p| p.a).unwrap_or(f64::NAN);
    // a(ε) increases along the branch
    let (mut l, mut h) = (e0 + 1e-12, e_end - 1e-9);
    for _ in 0..200 {
        let m = 0.5 * (l + h);
        let v = a_of(m);
        if v.is_nan() {
            return Err(AtlasError::BracketFailure(format!("a(ε) undefined at ε = {:.6}π", m / PI)));
        }
        if v < a {
            l = m;
        } else {
            h = m;
        }
        if h - l < 1e-15 {
            break;
        }
    }
    e2_at_eps(f, 0.5 * (l + h))
}

/// Solves the prototile for a family. `free` is the edge length a for the
/// general E2 family; without it the α=β member is returned.
pub fn solve_family(family: Family, f: usize, free: Option<f64>) -> Result<PentagonSpec, AtlasError> {
    solve_pentagon(family.pentagon_family(), f, free)
}

pub fn solve_pentagon(pf: PentagonFamily, f: usize, free: Option<f64>) -> Result<PentagonSpec, AtlasError> {
    match pf {
        PentagonFamily::E1 => solve_e1(f),
        PentagonFamily::E2General => match free {
            Some(a) => solve_e2_general(f, a),
            None => solve_alpha_eq_beta(f),
        },
        PentagonFamily::E2AlphaEqBeta => solve_alpha_eq_beta(f),
        PentagonFamily::Subdivision(v) => solve_subdivision(v, f),
        PentagonFamily::S16 => solve_s16(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pentagon::{existence_residuals, rotation_closure_residual};

    fn close(x: f64, y_pi: f64) -> bool {
        (x / PI - y_pi).abs() <= 1.5e-4
    }

    #[test]
    fn alpha_eq_beta_16() {
        let p = solve_pentagon(PentagonFamily::E2AlphaEqBeta, 16, None).unwrap();
        assert!(close(p.epsilon, 0.7889) && close(p.a, 0.1992) && close(p.b, 0.2763));
        assert!(existence_residuals(p.angles(), p.a).max_abs() < 1e-9);
        assert!(rotation_closure_residual(&p) < 1e-9);
        let t = (p.epsilon).tan();
        let want = (11.0 + 8.0 * 2f64.sqrt()).sqrt() / 2f64.sqrt() - 2.0 - 3.0 / 2f64.sqrt();
        assert!((t - want).abs() < 1e-9);
    }

    #[test]
    fn e1_closed_form_16() {
        let p = solve_pentagon(PentagonFamily::E1, 16, None).unwrap();
        assert!((p.a.cos() - e1_cos_a(16)).abs() < 1e-12);
        assert!(rotation_closure_residual(&p) < 1e-9);
        let p12 = solve_pentagon(PentagonFamily::E1, 12, None).unwrap();
        assert!((p12.a - p12.b).abs() < 1e-9);
    }

    #[test]
    fn interval_contains_alpha_eq_beta() {
        for f in [16, 20, 24] {
            let (lo, hi) = e2_parameter_interval(f).unwrap();
            let ab = solve_pentagon(PentagonFamily::E2AlphaEqBeta, f, None).unwrap();
            assert!(lo < ab.a && ab.a < hi, "f={f}: {lo} {} {hi}", ab.a);
            assert!(hi < PI / 2.0);
        }
    }

    #[test]
    fn general_matches_alpha_eq_beta() {
        for f in [16, 20] {
            let ab = solve_pentagon(PentagonFamily::E2AlphaEqBeta, f, None).unwrap();
            let g = solve_pentagon(PentagonFamily::E2General, f, Some(ab.a)).unwrap();
            for (x, y) in g.angles().iter().zip(ab.angles()) {
                assert!((x - y).abs() < 1e-8, "{x} {y}");
            }
            assert!((g.b - ab.b).abs() < 1e-8);
        }
    }

    #[test]
    fn outside_interval_rejected() {
        assert!(matches!(
            solve_pentagon(PentagonFamily::E2General, 16, Some(0.45 * PI)),
            Err(AtlasError::OutsideInterval { .. })
        ));
    }
}
