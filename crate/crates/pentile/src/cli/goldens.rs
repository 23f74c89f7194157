//! Reference-value table: one row per acceptance criterion.

use std::f64::consts::PI;

use serde::Serialize;

use crate::angle::FOUR_DIGIT_TOL;
use crate::atlas::{
    alpha_eq_beta_quadratic, build, e1_cos_a, e2_parameter_interval, find_patches, shift_flip_patch, solve_family,
    Family, PatchAction, PentagonFamily, PpVariant,
};
use crate::combmap::{counting_report, degree_stats, extract_avc, verify_tiling, CombinatorialTiling};
use crate::pentagon::{check_infeasible_family, existence_residuals, InfeasibleFamily, PentagonSpec};
use crate::realize::{realize, total_area, CLOSURE_TOL};
use crate::vertex::{balance_check, Avc, LabelMode, VertexType};

/// Criterion 8 asks for v₄ = 8 in the octahedral subdivision, which has
/// six degree-4 vertices (f = 12 + 2v₄ forces v₄ = 6 at f = 24). That
/// sub-check is reported as failing.
pub const KNOWN_FAILURES: &[u8] = &[8];

#[derive(Clone, Debug, Serialize)]
pub struct GoldenRow {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// One entry per sub-check, `ok` or `FAIL` prefixed.
    pub details: Vec<String>,
}

struct Row {
    details: Vec<String>,
    passed: bool,
}

impl Row {
    fn new() -> Self {
        Row { details: Vec::new(), passed: true }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.passed &= ok;
        self.details.push(format!("{} {}", if ok { "ok" } else { "FAIL" }, what.into()));
    }

    /// `got` against a value printed to four digits as a multiple of π.
    fn pi_value(&mut self, name: &str, got: f64, want: f64) {
        let ok = (got - want * PI).abs() <= FOUR_DIGIT_TOL * 1.5;
        self.check(ok, format!("{name} = {:.5}π (want {want:.4}π)", got / PI));
    }

    fn close(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        self.check((got - want).abs() <= tol, format!("{name} = {got:.12} (expected {want:.12}, tol {tol:e})"));
    }

    fn fail(&mut self, what: impl std::fmt::Display) {
        self.check(false, what.to_string());
    }

    fn finish(self, id: u8, name: &'static str) -> GoldenRow {
        GoldenRow { id, name, passed: self.passed, details: self.details }
    }
}

/// Every family instance with f in `lo..=hi`, both subdivision labelings
/// and every patch shift. PP20 is added at f = 60 when `with_pp20`.
pub fn instances(lo: usize, hi: usize, with_pp20: bool) -> Vec<(Family, usize)> {
    let mut fams = vec![
        Family::E1,
        Family::F1E1,
        Family::F2E1,
        Family::E2,
        Family::RE2,
        Family::F1E2,
        Family::F2E2,
        Family::F2E2DoublePrime,
        Family::PP8(PpVariant::AlphaCubed),
        Family::PP8(PpVariant::GammaCubed),
        Family::S16,
    ];
    for shift in 1..=(hi.saturating_sub(4)) / 8 {
        fams.push(Family::F2E2Prime { shift });
    }
    let mut out: Vec<(Family, usize)> =
        fams.iter().flat_map(|fam| fam.admissible_counts(lo, hi).into_iter().map(move |f| (*fam, f))).collect();
    if with_pp20 {
        out.push((Family::PP20(PpVariant::AlphaCubed), 60));
        out.push((Family::PP20(PpVariant::GammaCubed), 60));
    }
    out
}

fn solve_row(row: &mut Row, fam: Family, f: usize) -> Option<PentagonSpec> {
    match solve_family(fam, f, None) {
        Ok(p) => Some(p),
        Err(e) => {
            row.fail(format!("{fam} f={f}: {e}"));
            None
        }
    }
}

fn subdivision(row: &mut Row, fam: Family, f: usize, eps: f64, a: f64, b: f64) {
    if let Some(p) = solve_row(row, fam, f) {
        let tag = format!("{fam} f={f}");
        row.pi_value(&format!("{tag} ε"), p.epsilon, eps);
        row.pi_value(&format!("{tag} a"), p.a, a);
        row.pi_value(&format!("{tag} b"), p.b, b);
    }
}

fn c1() -> Row {
    let mut r = Row::new();
    let fam = Family::PP8(PpVariant::AlphaCubed);
    if let Some(p) = solve_row(&mut r, fam, 24) {
        let c = 3f64.powf(0.75);
        r.close("tan ε", p.epsilon.tan(), -c / (2f64.sqrt() + c), 1e-9);
        r.close("cos a", p.a.cos(), (2.0 * 3f64.sqrt() + 3.0).sqrt() / 3.0, 1e-9);
    }
    subdivision(&mut r, fam, 24, 0.8240, 0.1781, 0.1613);
    r
}

fn c2() -> Row {
    let mut r = Row::new();
    subdivision(&mut r, Family::PP20(PpVariant::AlphaCubed), 60, 0.9310, 0.1206, 0.1129);
    r
}

fn c3() -> Row {
    let mut r = Row::new();
    subdivision(&mut r, Family::PP8(PpVariant::GammaCubed), 24, 0.2068, 0.2252, 0.0766);
    subdivision(&mut r, Family::PP20(PpVariant::GammaCubed), 60, 0.0126, 0.1835, 0.1349);
    r
}

fn c4() -> Row {
    let mut r = Row::new();
    if let Some(p) = solve_row(&mut r, Family::F2E2, 16) {
        let s2 = 2f64.sqrt();
        r.pi_value("ε", p.epsilon, 0.7889);
        r.close("cos a", p.a.cos(), (4.0 * s2 - 5.0).sqrt(), 1e-9);
        r.pi_value("a", p.a, 0.1992);
        r.close("cos b", p.b.cos(), 3.0 - 2.0 * s2 + (44.0 * s2 - 62.0).sqrt(), 1e-9);
        r.pi_value("b", p.b, 0.2763);
    }
    r
}

fn c5() -> Row {
    let mut r = Row::new();
    if let Some(p) = solve_row(&mut r, Family::S16, 16) {
        r.pi_value("ε", p.epsilon, 0.1820);
        r.close("cos ε", p.epsilon.cos(), 2f64.powf(-0.25), 1e-9);
        r.pi_value("a", p.a, 0.2774);
        r.pi_value("b", p.b, 0.1359);
    }
    r
}

fn c6() -> Row {
    let mut r = Row::new();
    for f in (12..=64).step_by(4) {
        let Some(p) = solve_row(&mut r, Family::E1, f) else { continue };
        let sec2 = 1.0 / (2.0 * PI / f as f64).cos().powi(2);
        let want = 1.0 + (5f64.sqrt() - 3.0) / 4.0 * sec2;
        let res = existence_residuals(p.angles(), p.a).max_abs();
        let closure = build(Family::E1, f).map_err(|e| e.to_string()).and_then(|t| realize(&t, &p).map_err(|e| e.to_string()));
        let ok = (p.a.cos() - want).abs() <= 1e-9 && (e1_cos_a(f) - want).abs() <= 1e-12 && res < 1e-9;
        match closure {
            Ok(real) => r.check(
                ok && real.closure_residual < CLOSURE_TOL,
                format!("f={f}: cos a err {:.1e}, identities {res:.1e}, closure {:.1e}", (p.a.cos() - want).abs(), real.closure_residual),
            ),
            Err(e) => r.fail(format!("f={f}: {e}")),
        }
    }
    r
}

/// Structural checks of one built tiling; `None` when all pass.
pub fn structural_failures(t: &CombinatorialTiling) -> Option<String> {
    let rep = verify_tiling(t);
    let mut bad = rep.failed();
    let avc = Avc(extract_avc(t).into_keys().collect());
    if !balance_check(&avc) {
        bad.push("balance");
    }
    if !counting_report(t, LabelMode::Distinct).pass() {
        bad.push("counting");
    }
    if bad.is_empty() {
        None
    } else {
        Some(bad.join(", "))
    }
}

fn c7() -> Row {
    let mut r = Row::new();
    let mut n = 0;
    for (fam, f) in instances(12, 44, true) {
        match build(fam, f) {
            Ok(t) => match structural_failures(&t) {
                None => n += 1,
                Some(why) => r.fail(format!("{fam} f={f}: {why}")),
            },
            Err(e) => r.fail(format!("{fam} f={f}: {e}")),
        }
    }
    r.check(true, format!("{n} instances pass every structural check"));
    r
}

fn avc_of(fam: Family, f: usize) -> Result<Avc, String> {
    build(fam, f).map(|t| Avc(extract_avc(&t).into_keys().collect())).map_err(|e| e.to_string())
}

fn vt(s: &str) -> VertexType {
    s.parse().expect("vertex type literal")
}

fn c8() -> Row {
    let mut r = Row::new();
    for q in 1..=3u32 {
        let f = 8 * q as usize + 4;
        let want = Avc([vt("αδε"), vt("β²γ"), VertexType::new([0, 1, q + 1, 0, 0])].into_iter().collect());
        match avc_of(Family::RE2, f) {
            Ok(got) => r.check(got == want, format!("RE2({f}) AVC {got} (expected {want})")),
            Err(e) => r.fail(e),
        }
        let want = Avc([vt("αβ²"), vt("βδ²"), VertexType::new([q + 1, 1, 0, 0, 0])].into_iter().collect());
        match avc_of(Family::F2E1, f) {
            Ok(got) => {
                let got = got.collapsed();
                r.check(got == want, format!("F2E1({f}) AVC {got} up to β≡γ, δ≡ε (expected {want})"))
            }
            Err(e) => r.fail(e),
        }
    }
    for k in 2..=6u32 {
        let f = 8 * k as usize;
        let g = VertexType::new([0, 0, 2 * k, 0, 0]);
        match avc_of(Family::E2, f) {
            Ok(got) => r.check(got.contains(&g), format!("E2({f}) contains {g}")),
            Err(e) => r.fail(e),
        }
    }
    match build(Family::PP8(PpVariant::AlphaCubed), 24) {
        Ok(t) => {
            let avc = extract_avc(&t);
            let keys: Vec<VertexType> = avc.keys().copied().collect();
            let shape = keys.len() == 3
                && keys.iter().any(|v| v.degree() == 3 && v.is_b_vertex())
                && keys.iter().any(|v| v.degree() == 3 && !v.is_b_vertex())
                && avc.contains_key(&vt("γ⁴"));
            r.check(shape, format!("PP8 AVC {}", Avc(keys.into_iter().collect())));
            let d = degree_stats(&t);
            let (v3, v4) = (d.get(&3).copied().unwrap_or(0), d.get(&4).copied().unwrap_or(0));
            r.check(v4 == 8, format!("PP8 v₄ = {v4} (criterion asks 8), v₃ = {v3}"));
        }
        Err(e) => r.fail(e),
    }
    r
}

fn c9() -> Row {
    let mut r = Row::new();
    for f in (12..=60).step_by(4) {
        let c = check_infeasible_family(InfeasibleFamily::B2dC2eAbc { f });
        let at = c.residual_at_symmetric.unwrap_or(f64::NAN);
        // the 1e-8 floor is stated for f = 16; for large f the residual
        // next to δ=ε is second order in cos(s/2) and the floor is not met
        let floor = if f == 16 { 1e-8 } else { 0.0 };
        r.check(
            c.infeasible && c.min_abs_residual > floor && at.abs() < 1e-12,
            format!("βδ²,γε²,αβγ f={f}: min |r| {:.2e} on {} samples, r(δ=ε) = {at:.1e}", c.min_abs_residual, c.samples),
        );
    }
    let c = check_infeasible_family(InfeasibleFamily::AdeAc2F20);
    r.check(
        c.infeasible && c.sign_changes == 0,
        format!("αγ² f=20: {} sign changes on (0, 0.8π), min |r| {:.2e}", c.sign_changes, c.min_abs_residual),
    );
    r
}

fn c10() -> Row {
    let mut r = Row::new();
    for f in (20..=100).step_by(4) {
        let q = alpha_eq_beta_quadratic(f);
        // ε₋ is the root with negative tangent
        let t_minus = q.tan_roots[0];
        let which = t_minus < 0.0
            && q.tan_roots[1] > 0.0
            && matches!(q.below_pi.as_slice(), [e] if (e.tan() - t_minus).abs() <= 1e-9 * (1.0 + t_minus.abs()));
        let cos_a = solve_family(Family::F2E2, f, None).map(|p| p.a.cos()).unwrap_or(f64::NAN);
        r.check(
            q.c != 0.0 && which && cos_a > 0.0 && cos_a < 1.0,
            format!("f={f}: C = {:.4}, {} root(s) below π, cos a = {cos_a:.6}", q.c, q.below_pi.len()),
        );
    }
    r
}

fn realized_ok(r: &mut Row, fam: Family, f: usize, free: Option<f64>) -> bool {
    let tag = match free {
        Some(a) => format!("{fam} f={f} a={a:.4}"),
        None => format!("{fam} f={f}"),
    };
    let p = match solve_family(fam, f, free) {
        Ok(p) => p,
        Err(e) => {
            r.fail(format!("{tag}: {e}"));
            return false;
        }
    };
    let t = match build(fam, f) {
        Ok(t) => t,
        Err(e) => {
            r.fail(format!("{tag}: {e}"));
            return false;
        }
    };
    match realize(&t, &p) {
        Ok(real) => {
            let area = (total_area(&real) - 4.0 * PI).abs();
            let per = real.tile_areas().iter().map(|a| (a - 4.0 * PI / f as f64).abs()).fold(0.0, f64::max);
            let bad = real.non_simple_tiles();
            let ok = real.closure_residual < CLOSURE_TOL && area <= 1e-8 && per <= 1e-9 && bad.is_empty();
            if !ok {
                r.fail(format!(
                    "{tag}: closure {:.1e}, area err {area:.1e}, tile err {per:.1e}, non-simple {bad:?}",
                    real.closure_residual
                ));
            }
            ok
        }
        Err(e) => {
            r.fail(format!("{tag}: {e}"));
            false
        }
    }
}

fn c11() -> Row {
    let mut r = Row::new();
    let mut n = 0;
    for (fam, f) in instances(12, 44, true) {
        let e2_based = matches!(fam.pentagon_family(), PentagonFamily::E2General | PentagonFamily::E2AlphaEqBeta);
        if e2_based && f < 16 {
            // no E2 pentagon exists at f = 12
            continue;
        }
        n += realized_ok(&mut r, fam, f, None) as usize;
    }
    for f in (16..=44).step_by(4) {
        let Ok((lo, hi)) = e2_parameter_interval(f) else {
            r.fail(format!("E2 interval f={f}"));
            continue;
        };
        for i in 1..8 {
            let a = lo + (hi - lo) * i as f64 / 8.0;
            for fam in [Family::E2, Family::RE2] {
                if fam.admissible(f).is_ok() {
                    n += realized_ok(&mut r, fam, f, Some(a)) as usize;
                }
            }
        }
    }
    r.check(true, format!("{n} realizations close, cover 4π and are simple"));
    r
}

fn c12() -> Row {
    let mut r = Row::new();
    for f in [12, 20, 28, 36, 44] {
        let t = match build(Family::F2E2, f) {
            Ok(t) => t,
            Err(e) => {
                r.fail(e);
                continue;
            }
        };
        let Some(p) = find_patches(&t).into_iter().next() else {
            r.fail(format!("F2E2({f}) has no patch"));
            continue;
        };
        match shift_flip_patch(&t, &p.locator, PatchAction::Flip) {
            Ok(once) => {
                let same = find_patches(&once).into_iter().find(|x| {
                    let mut a = x.tiles;
                    let mut b = p.tiles;
                    a.sort_unstable();
                    b.sort_unstable();
                    a == b
                });
                let twice = same.map(|q| shift_flip_patch(&once, &q.locator, PatchAction::Flip));
                r.check(matches!(twice, Some(Ok(ref u)) if *u == t), format!("F2E2({f}) flip twice is the identity"));
                let ps = find_patches(&once);
                let disjoint = ps
                    .iter()
                    .enumerate()
                    .any(|(i, a)| ps[i + 1..].iter().any(|b| a.tiles.iter().all(|x| !b.tiles.contains(x))));
                r.check(disjoint, format!("F2E2({f}) flipped has two disjoint patches ({} found)", ps.len()));
            }
            Err(e) => r.fail(format!("F2E2({f}) flip: {e}")),
        }
        let q = (f - 4) / 8;
        let mut ok = true;
        for s in 1..=q {
            match shift_flip_patch(&t, &p.locator, PatchAction::Shift(s)) {
                Ok(u) => ok &= verify_tiling(&u).pass(),
                Err(_) => ok = false,
            }
        }
        r.check(ok, format!("F2E2({f}) shifts 1..={q} all verify"));
    }
    r
}

pub const NAMES: [&str; 12] = [
    "subdivision f=24 (αδε, α³, γ⁴)",
    "subdivision f=60",
    "subdivision γ³ variant",
    "α=β earth map f=16",
    "S16",
    "symmetric E1 closed form and closure",
    "structural identities for every family",
    "AVC goldens",
    "infeasibility certificates",
    "α=β quadratic structure",
    "geometric realization",
    "patch algebra",
];

/// Runs criteria 1 to 12 in order.
pub fn run_goldens() -> Vec<GoldenRow> {
    let rows: [fn() -> Row; 12] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12];
    rows.iter().enumerate().map(|(i, f)| f().finish(i as u8 + 1, NAMES[i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_list() {
        let all = instances(12, 44, true);
        assert!(all.contains(&(Family::F2E2Prime { shift: 5 }, 44)));
        assert!(!all.contains(&(Family::F2E2Prime { shift: 2 }, 12)));
        assert!(all.contains(&(Family::PP20(PpVariant::GammaCubed), 60)));
    }
}
