//! Normal curves on the two-triangle boundary torus.
//!
//! A curve is stored by its arc counts `(x₁, x₂, x₃)` in one boundary
//! triangle: `x₁` cuts the corner between `h` and `d`, `x₂` between `v` and
//! `d`, `x₃` between `v` and `h`.  Homology classes are `[a, b] = a·E_h + b·E_v`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::Framing;

pub type Class = [i64; 2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve {0} has no zero coordinate after removing trivial components")]
    NoZeroCoordinate(BoundaryCurveCoords),
    #[error("curve has no essential part")]
    Empty,
    #[error("essential part has {0} components, expected one")]
    Disconnected(u64),
    #[error("malformed slope {0:?}")]
    MalformedSlope(String),
    #[error("malformed curve coordinates {0:?}")]
    MalformedCoords(String),
    #[error("slope {0} is not of the form 2m/1")]
    NotIntegralEven(Slope),
    #[error("integer overflow in curve arithmetic")]
    Overflow,
}

pub fn det(a: Class, b: Class) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Negates so that the first nonzero coordinate is positive.
pub fn normalize_sign(c: Class) -> Class {
    if c[0] < 0 || (c[0] == 0 && c[1] < 0) {
        [-c[0], -c[1]]
    } else {
        c
    }
}

/// Parses `"a/b"` into `[a, b]` without normalising.
pub fn parse_class(s: &str) -> Option<Class> {
    let (a, b) = s.trim().split_once('/')?;
    Some([a.trim().parse().ok()?, b.trim().parse().ok()?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryCurveCoords(pub [u64; 3]);

impl fmt::Display for BoundaryCurveCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "[{a},{b},{c}]")
    }
}

impl FromStr for BoundaryCurveCoords {
    type Err = CurveError;

    /// Accepts `a,b,c` with optional surrounding brackets.
    fn from_str(s: &str) -> Result<Self, CurveError> {
        let bad = || CurveError::MalformedCoords(s.to_string());
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let v: Vec<u64> = inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let arr: [u64; 3] = v.try_into().map_err(|_| bad())?;
        Ok(BoundaryCurveCoords(arr))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub trivial_count: u64,
    pub essential: BoundaryCurveCoords,
    pub components: u64,
}

pub fn decompose_curve(c: BoundaryCurveCoords) -> Decomposition {
    let t = *c.0.iter().min().expect("three coordinates");
    let essential = BoundaryCurveCoords(c.0.map(|x| x - t));
    let components = match oriented_edge_weights(essential) {
        Ok((a, b)) => a.unsigned_abs().gcd(&b.unsigned_abs()),
        Err(_) => 0,
    };
    Decomposition { trivial_count: t, essential, components }
}

/// Oriented edge weights `(w_v, w_h)` of an essential curve, which are also
/// its class `[a, b]` (up to an overall sign).
pub fn oriented_edge_weights(c: BoundaryCurveCoords) -> Result<(i64, i64), CurveError> {
    let [x1, x2, x3] = c.0.map(|x| i64::try_from(x).unwrap_or(i64::MAX));
    if c.0.iter().any(|&x| x > i64::MAX as u64 / 2) {
        return Err(CurveError::Overflow);
    }
    if x1 == 0 {
        Ok((x2 + x3, x3))
    } else if x2 == 0 {
        Ok((x3, x1 + x3))
    } else if x3 == 0 {
        Ok((x2, -x1))
    } else {
        Err(CurveError::NoZeroCoordinate(c))
    }
}

/// Homology class of the essential part (with multiplicity), `[0, 0]` if none.
pub fn class_of(c: BoundaryCurveCoords) -> Result<Class, CurveError> {
    let d = decompose_curve(c);
    if d.components == 0 {
        return Ok([0, 0]);
    }
    let (a, b) = oriented_edge_weights(d.essential)?;
    Ok([a, b])
}

/// Primitive class of a connected essential curve.
pub fn primitive_class_of(c: BoundaryCurveCoords) -> Result<Class, CurveError> {
    let d = decompose_curve(c);
    match d.components {
        0 => Err(CurveError::Empty),
        1 => class_of(c),
        k => Err(CurveError::Disconnected(k)),
    }
}

/// The essential multicurve with `gcd(a, b)` parallel copies of the class.
pub fn coords_of_class(c: Class) -> BoundaryCurveCoords {
    let [a, b] = normalize_sign(c);
    let x = if b < 0 {
        [-b, a, 0]
    } else if b > a {
        [b - a, 0, a]
    } else {
        [0, a - b, b]
    };
    BoundaryCurveCoords(x.map(|v| v as u64))
}

/// Determinant of the two oriented-edge-weight columns; zero if either
/// essential part is empty.
pub fn intersection_number(a: BoundaryCurveCoords, b: BoundaryCurveCoords) -> Result<i64, CurveError> {
    Ok(det(class_of(a)?, class_of(b)?))
}

/// A slope `p/q` with `gcd(p, q) = 1`, `q ≥ 0`, and `1/0` for `q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Reduces and normalises; `None` for `0/0`.
    pub fn new(p: i64, q: i64) -> Option<Slope> {
        if p == 0 && q == 0 {
            return None;
        }
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        Some(if q < 0 || (q == 0 && p < 0) { Slope { p: -p, q: -q } } else { Slope { p, q } })
    }

    pub fn integer(k: i64) -> Slope {
        Slope { p: k, q: 1 }
    }

    pub fn is_even(&self) -> bool {
        self.p % 2 == 0
    }

    /// Farey neighbours: `|p s − q r| = 1`.
    pub fn is_neighbour(&self, other: &Slope) -> bool {
        (self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128).abs() == 1
    }

    pub fn mediant(&self, other: &Slope) -> Slope {
        Slope::new(self.p + other.p, self.q + other.q).expect("mediant of neighbours is nonzero")
    }

    pub fn as_class(&self) -> Class {
        [self.p, self.q]
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = CurveError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, CurveError> {
        let bad = || CurveError::MalformedSlope(s.to_string());
        let [p, q] = match parse_class(s) {
            Some(c) => c,
            None => [s.trim().parse().map_err(|_| bad())?, 1],
        };
        Slope::new(p, q).ok_or_else(bad)
    }
}

impl Serialize for Slope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Slope of a class relative to a framing `(m, l)`: `c = p·m + q·l`.
pub fn slope_of_class(c: Class, fr: &Framing) -> Result<Slope, CurveError> {
    let (m, l) = (fr.first, fr.second);
    let d = det(m, l);
    let p = det(c, l) / d;
    let q = det(m, c) / d;
    Slope::new(p, q).ok_or(CurveError::Empty)
}

pub fn slope_of(c: BoundaryCurveCoords, fr: &Framing) -> Result<Slope, CurveError> {
    slope_of_class(primitive_class_of(c)?, fr)
}

pub fn class_of_slope(s: Slope, fr: &Framing) -> Class {
    let (m, l) = (fr.first, fr.second);
    [s.p * m[0] + s.q * l[0], s.p * m[1] + s.q * l[1]]
}

pub fn coords_of_slope(s: Slope, fr: &Framing) -> BoundaryCurveCoords {
    coords_of_class(class_of_slope(s, fr))
}

/// A single connected essential curve meeting the meridian once.
pub fn is_spanning_curve(c: BoundaryCurveCoords, meridian: Class) -> bool {
    let d = decompose_curve(c);
    d.trivial_count == 0 && d.components == 1 && class_of(c).is_ok_and(|k| det(k, meridian).abs() == 1)
}

/// Boundary of a surface spans iff it has exactly one torus entry that is a
/// spanning curve.
pub fn is_spanning(boundary: &[BoundaryCurveCoords], meridian: Class) -> bool {
    matches!(boundary, [c] if is_spanning_curve(*c, meridian))
}

/// The boundary pattern of a geometric framing: oriented edges
/// `h, v, d` represent `m^p l`, `m`, `m^{p+1} l`.  Classes in `(m, l)`
/// coordinates convert to edge coordinates by `[a, b] = [Q, P − pQ]`.
fn pattern_to_edges(s: Slope, p: i64) -> Class {
    [s.q, s.p - p * s.q]
}

fn edges_to_pattern(c: Class, p: i64) -> Result<Slope, CurveError> {
    Slope::new(c[0] * p + c[1], c[0]).ok_or(CurveError::Empty)
}

/// `μ(γ)`: maximal normal arc coordinate of `γ` on the pattern torus.
pub fn mu(gamma: Slope, p: i64) -> u64 {
    *coords_of_class(pattern_to_edges(gamma, p)).0.iter().max().expect("three coordinates")
}

/// Complementary slope `γ⊥` of the spanning slope `γ = 2m/1` on the
/// pattern torus with exponent `p ≥ 0`: the slope of `μ(γ)·(1,1,1) − x(γ)`.
pub fn complementary_slope(gamma: Slope, p: i64) -> Result<Slope, CurveError> {
    if gamma.q != 1 || !gamma.is_even() || p < 0 {
        return Err(CurveError::NotIntegralEven(gamma));
    }
    let x = coords_of_class(pattern_to_edges(gamma, p));
    let m = *x.0.iter().max().expect("three coordinates");
    let comp = BoundaryCurveCoords(x.0.map(|xi| m - xi));
    edges_to_pattern(primitive_class_of(comp)?, p)
}
