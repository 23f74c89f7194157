//! Bracketed scalar root finding: safeguarded Newton with bisection fallback.

pub const NEWTON_TOL: f64 = 1e-12;
pub const MAX_ITER: usize = 100;

/// Root of `g` in `[lo, hi]`, which must bracket a sign change.
pub fn bracketed<F: Fn(f64) -> f64>(g: F, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (mut glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Some(lo);
    }
    if ghi == 0.0 {
        return Some(hi);
    }
    if glo.signum() == ghi.signum() || !glo.is_finite() || !ghi.is_finite() {
        return None;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_ITER {
        let gx = g(x);
        if gx == 0.0 {
            return Some(x);
        }
        if gx.signum() == glo.signum() {
            lo = x;
            glo = gx;
        } else {
            hi = x;
        }
        if hi - lo < NEWTON_TOL * (1.0 + x.abs()) {
            return Some(0.5 * (lo + hi));
        }
        let h = 1e-7 * (1.0 + x.abs());
        let d = (g(x + h) - g(x - h)) / (2.0 * h);
        let newton = x - gx / d;
        x = if d.is_finite() && d != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Some(0.5 * (lo + hi))
}

/// All sign-change roots of `g` on the open interval `(lo, hi)`, found by
/// sampling `n` midpoints and refining each bracket.
pub fn scan<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / n as f64;
    let xs: Vec<f64> = (0..n).map(|i| lo + (i as f64 + 0.5) * step).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if vs[i] == 0.0 {
            out.push(xs[i]);
        } else if vs[i].is_finite() && vs[i + 1].is_finite() && vs[i].signum() != vs[i + 1].signum() && vs[i + 1] != 0.0 {
            if let Some(r) = bracketed(&g, xs[i], xs[i + 1]) {
                out.push(r);
            }
        }
    }
    out
}

/// Bisection for a monotone predicate: the boundary between `lo` (false) and
/// `hi` (true).
pub fn boundary<P: Fn(f64) -> bool>(p: P, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if p(m) {
            hi = m;
        } else {
            lo = m;
        }
        if (hi - lo).abs() < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_roots() {
        let r = bracketed(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let rs = scan(f64::sin, 0.5, 10.0, 1000);
        assert_eq!(rs.len(), 3);
        assert!(bracketed(|x| x * x + 1.0, -1.0, 1.0).is_none());
        let b = boundary(|x| x > 0.3, 0.0, 1.0);
        assert!((b - 0.3).abs() < 1e-12);
    }
}
