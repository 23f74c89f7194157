//! Exact angles as rational multiples of π, plus the floating-point helpers
//! used everywhere a value is only known numerically.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for internally computed values, in radians.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance used when comparing against values printed to four decimals
/// (in units of π).
pub const PRINTED_TOL: f64 = 1.5e-4 * PI;

/// Tolerance used by [`angle_close`] examples for four-digit values.
pub const FOUR_DIGIT_TOL: f64 = 1e-4 * PI;

#[derive(Debug, Error, PartialEq)]
pub enum AngleError {
    #[error("tile count f={0} must be even and at least 12")]
    BadTileCount(i64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("free angle {0} is outside (0, 2π)")]
    OutOfRange(f64),
    #[error("cannot parse angle '{0}'")]
    Parse(String),
}

/// `(num/den)·π`, always stored in lowest terms with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational64);

impl Angle {
    pub fn new(num: i64, den: i64) -> Result<Self, AngleError> {
        if den == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Angle(Rational64::new(num, den)))
    }

    /// Panicking constructor for literals known to be valid.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Angle(Rational64::from_integer(0))
    }

    pub fn pi() -> Self {
        Angle(Rational64::from_integer(1))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Rational64 {
        self.0
    }

    pub fn radians(&self) -> f64 {
        self.num() as f64 / self.den() as f64 * PI
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        Angle(self.0 + o.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, o: Angle) -> Angle {
        Angle(self.0 - o.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

impl Mul<i64> for Angle {
    type Output = Angle;
    fn mul(self, k: i64) -> Angle {
        Angle(self.0 * k)
    }
}

impl std::iter::Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(it: I) -> Angle {
        it.fold(Angle::zero(), |a, b| a + b)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num(), self.den()) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (n, d) => write!(f, "({n}/{d})π"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AngleRepr {
    num: i64,
    den: i64,
}

impl Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AngleRepr { num: self.num(), den: self.den() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = AngleRepr::deserialize(d)?;
        Angle::new(r.num, r.den).map_err(serde::de::Error::custom)
    }
}

/// A numerically determined angle in radians, strictly inside (0, 2π).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct FreeAngle(f64);

impl FreeAngle {
    pub fn new(rad: f64) -> Result<Self, AngleError> {
        if rad > 0.0 && rad < 2.0 * PI {
            Ok(FreeAngle(rad))
        } else {
            Err(AngleError::OutOfRange(rad))
        }
    }

    pub fn radians(&self) -> f64 {
        self.0
    }
}

#[derive(Serialize, Deserialize)]
struct FreeRepr {
    rad: f64,
}

impl Serialize for FreeAngle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FreeRepr { rad: self.0 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FreeAngle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FreeRepr::deserialize(d)?;
        FreeAngle::new(r.rad).map_err(serde::de::Error::custom)
    }
}

/// Either kind of angle; serializes as `{"num","den"}` or `{"rad"}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Exact(Angle),
    Free(FreeAngle),
}

impl AngleValue {
    pub fn radians(&self) -> f64 {
        match self {
            AngleValue::Exact(a) => a.radians(),
            AngleValue::Free(a) => a.radians(),
        }
    }

    pub fn exact(&self) -> Option<Angle> {
        match self {
            AngleValue::Exact(a) => Some(*a),
            AngleValue::Free(_) => None,
        }
    }
}

impl From<Angle> for AngleValue {
    fn from(a: Angle) -> Self {
        AngleValue::Exact(a)
    }
}

impl From<FreeAngle> for AngleValue {
    fn from(a: FreeAngle) -> Self {
        AngleValue::Free(a)
    }
}

/// Sum of the five angles of a tile in a tiling with `f` tiles: (3 + 4/f)π.
pub fn pentagon_angle_sum(f: i64) -> Result<Angle, AngleError> {
    if f < 12 || f % 2 != 0 {
        return Err(AngleError::BadTileCount(f));
    }
    Ok(Angle::frac(3, 1) + Angle::frac(4, f))
}

pub fn angle_close(x: f64, y: f64, tol: f64) -> bool {
    debug_assert!(tol > 0.0);
    (x - y).abs() <= tol
}

/// Default tolerance, overridable through the `PENTILE_TOL` environment variable.
pub fn default_tol() -> f64 {
    std::env::var("PENTILE_TOL")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

/// Parses `"p/q pi"`, `"p/q π"`, `"pi"`, `"2pi/3"` style strings as exact
/// angles, and plain decimals as radians.
pub fn parse_angle(s: &str) -> Result<AngleValue, AngleError> {
    let err = || AngleError::Parse(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = t.to_lowercase().replace('π', "pi");
    if let Some(pos) = lower.find("pi") {
        let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
        let head = head.trim_end_matches('*');
        // forms: "p/qpi", "ppi/q", "pi", "-pi/2"
        let (mut num, mut den) = (1i64, 1i64);
        if !head.is_empty() && head != "+" {
            if head == "-" {
                num = -1;
            } else if let Some((p, q)) = head.split_once('/') {
                num = p.parse().map_err(|_| err())?;
                den = q.parse().map_err(|_| err())?;
            } else if let Ok(n) = head.parse() {
                num = n;
            } else {
                // decimal multiple of π, e.g. "0.824pi"
                let x: f64 = head.parse().map_err(|_| err())?;
                let q: f64 = match tail.strip_prefix('/') {
                    Some(q) => q.parse().map_err(|_| err())?,
                    None if tail.is_empty() => 1.0,
                    None => return Err(err()),
                };
                return FreeAngle::new(x * PI / q).map(AngleValue::Free);
            }
        }
        if !tail.is_empty() {
            let q = tail.strip_prefix('/').ok_or_else(err)?;
            let q: i64 = q.parse().map_err(|_| err())?;
            den = den.checked_mul(q).ok_or_else(err)?;
        }
        return Angle::new(num, den).map(AngleValue::Exact);
    }
    let x: f64 = lower.parse().map_err(|_| err())?;
    FreeAngle::new(x).map(AngleValue::Free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use proptest::test_runner::RngSeed;

    #[test]
    fn angle_sum_examples() {
        assert_eq!(pentagon_angle_sum(16).unwrap(), Angle::frac(13, 4));
        assert_eq!(pentagon_angle_sum(24).unwrap(), Angle::frac(19, 6));
        assert_eq!(pentagon_angle_sum(12).unwrap(), Angle::frac(10, 3));
        assert!(pentagon_angle_sum(13).is_err());
        assert!(pentagon_angle_sum(10).is_err());
    }

    #[test]
    fn close_examples() {
        assert!(angle_close(0.8240 * PI, 0.82401 * PI, FOUR_DIGIT_TOL));
        assert!(!angle_close(0.8240 * PI, 0.8242 * PI, FOUR_DIGIT_TOL));
        assert!(angle_close(PI, PI, 1e-12));
    }

    #[test]
    fn reduced_and_json() {
        let a = Angle::frac(6, -8);
        assert_eq!((a.num(), a.den()), (-3, 4));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"num":-3,"den":4}"#);
        let v: AngleValue = serde_json::from_str(r#"{"rad":0.5}"#).unwrap();
        assert_eq!(v.radians(), 0.5);
        let v: AngleValue = serde_json::from_str(&s).unwrap();
        assert_eq!(v.exact(), Some(a));
    }

    #[test]
    fn parsing() {
        let e = |s: &str| parse_angle(s).unwrap().exact().unwrap();
        assert_eq!(e("3/4 pi"), Angle::frac(3, 4));
        assert_eq!(e("3/4π"), Angle::frac(3, 4));
        assert_eq!(e("pi/2"), Angle::frac(1, 2));
        assert_eq!(e("2pi/3"), Angle::frac(2, 3));
        assert_eq!(e("pi"), Angle::pi());
        assert!(matches!(parse_angle("1.25"), Ok(AngleValue::Free(_))));
        assert!((parse_angle("0.9pi").unwrap().radians() - 0.9 * PI).abs() < 1e-15);
        assert!(parse_angle("x").is_err());
        assert!(parse_angle("7.0").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig { rng_seed: RngSeed::Fixed(1), ..ProptestConfig::default() })]
        #[test]
        fn arithmetic_is_exact(p in -50i64..50, q in 1i64..40, r in -50i64..50, s in 1i64..40, k in -6i64..6) {
            let x = Angle::frac(p, q);
            let y = Angle::frac(r, s);
            let z = x + y;
            prop_assert_eq!(z - y, x);
            prop_assert_eq!(num_integer::gcd(z.num().abs(), z.den()), if z.num() == 0 { z.den() } else { 1 });
            prop_assert!(z.den() > 0);
            prop_assert_eq!(x * k, (0..k.abs()).map(|_| if k < 0 { -x } else { x }).sum::<Angle>());
        }

        #[test]
        fn excess_identity(h in 6i64..200) {
            let f = 2 * h;
            prop_assert_eq!(pentagon_angle_sum(f).unwrap() - Angle::frac(3, 1), Angle::frac(4, f));
        }
    }
}
