//! The Farey tessellation, visited lazily through its dual tree.
//!
//! The tree is rooted at the base triangle `(1/0, 0/1, −1/1)`.  Every other
//! triangle `{u, v, u ⊕ v}` has a unique newest vertex `u ⊕ v` (largest
//! `|p| + |q|`) and is reached from the root by a Stern–Brocot descent
//! towards it.  Each triangle has exactly one vertex with even numerator,
//! its *even slope*; a step between triangles with different even slopes
//! is a *saddle*.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{det, Class, Slope};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("slope {0} is not even")]
    NotEven(Slope),
    #[error("slopes {0}, {1}, {2} do not span a Farey triangle")]
    NotATriangle(Slope, Slope, Slope),
}

/// An ideal triangle: three pairwise Farey-neighbouring slopes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FareyTriangle {
    pub slopes: [Slope; 3],
}

impl PartialEq for FareyTriangle {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FareyTriangle {}

impl FareyTriangle {
    pub fn new(a: Slope, b: Slope, c: Slope) -> Result<Self, FareyError> {
        if a.is_neighbour(&b) && b.is_neighbour(&c) && a.is_neighbour(&c) {
            Ok(FareyTriangle { slopes: [a, b, c] })
        } else {
            Err(FareyError::NotATriangle(a, b, c))
        }
    }

    pub fn base() -> Self {
        FareyTriangle { slopes: [Slope::INFINITY, Slope::integer(0), Slope::integer(-1)] }
    }

    fn key(&self) -> [Slope; 3] {
        let mut k = self.slopes;
        k.sort();
        k
    }

    pub fn is_base(&self) -> bool {
        *self == Self::base()
    }

    pub fn even_slope(&self) -> Slope {
        *self.slopes.iter().find(|s| s.is_even()).expect("a Farey triangle has one even vertex")
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.slopes.contains(&s)
    }

    /// The triangle across the edge opposite `vertex`; `None` if `vertex` is
    /// not a vertex or the new slope overflows.
    pub fn flip(&self, vertex: Slope) -> Option<FareyTriangle> {
        let i = self.slopes.iter().position(|&s| s == vertex)?;
        let x = self.slopes[(i + 1) % 3].as_class();
        let y = self.slopes[(i + 2) % 3].as_class();
        let sum = Slope::new(x[0].checked_add(y[0])?, x[1].checked_add(y[1])?)?;
        let diff = Slope::new(x[0].checked_sub(y[0])?, x[1].checked_sub(y[1])?)?;
        let mut slopes = self.slopes;
        slopes[i] = if sum == vertex { diff } else { sum };
        Some(FareyTriangle { slopes })
    }

    /// The three triangles sharing an edge with this one.
    pub fn neighbours(&self) -> Vec<FareyTriangle> {
        self.slopes.iter().filter_map(|&s| self.flip(s)).collect()
    }

    /// The vertex farthest from the base triangle.
    fn newest(&self) -> Slope {
        *self.slopes.iter().max_by_key(|s| s.p.unsigned_abs() + s.q.unsigned_abs()).expect("three vertices")
    }
}

/// A flip across the boundary edge of the given slope, realised by
/// layering a tetrahedron on that edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipInstruction {
    pub edge_slope: Slope,
}

/// A path in the dual tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FareyPath {
    pub triangles: Vec<FareyTriangle>,
    pub saddle_count: u64,
}

impl FareyPath {
    fn new(triangles: Vec<FareyTriangle>) -> Self {
        let saddle_count = triangles.windows(2).filter(|w| w[0].even_slope() != w[1].even_slope()).count() as u64;
        FareyPath { triangles, saddle_count }
    }

    pub fn len(&self) -> usize {
        self.triangles.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The edge flipped at each step: the vertex that is dropped.
    pub fn flips(&self) -> Vec<FlipInstruction> {
        self.triangles
            .windows(2)
            .map(|w| {
                let edge_slope = *w[0].slopes.iter().find(|&&s| !w[1].contains(s)).expect("adjacent triangles");
                FlipInstruction { edge_slope }
            })
            .collect()
    }
}

const ROOT_CHILDREN: [(Class, Class); 3] = [([1, 0], [0, 1]), ([0, 1], [-1, 1]), ([-1, 1], [-1, 0])];

fn add(a: Class, b: Class) -> Class {
    [a[0] + b[0], a[1] + b[1]]
}

fn slope(c: Class) -> Slope {
    Slope::new(c[0], c[1]).expect("nonzero")
}

/// A non-root node `{u, v, u + v}` with `det(u, v) = 1`.
fn node_triangle((u, v): (Class, Class)) -> FareyTriangle {
    FareyTriangle { slopes: [slope(add(u, v)), slope(v), slope(u)] }
}

/// Moves from the root to the node whose newest vertex is `w`: the first
/// entry picks a root child, later entries pick the left (0) or right (1)
/// child.
fn address_of_slope(w: Slope) -> Vec<u8> {
    if FareyTriangle::base().contains(w) {
        return Vec::new();
    }
    let w = w.as_class();
    let inside = |u: Class, v: Class| det(u, w) > 0 && det(w, v) > 0;
    let r = ROOT_CHILDREN.iter().position(|&(u, v)| inside(u, v) || add(u, v) == w).expect("regions cover");
    let mut addr = vec![r as u8];
    let (mut u, mut v) = ROOT_CHILDREN[r];
    loop {
        let m = add(u, v);
        if m == w {
            return addr;
        }
        if inside(u, m) {
            addr.push(0);
            v = m;
        } else {
            addr.push(1);
            u = m;
        }
    }
}

fn address(t: &FareyTriangle) -> Vec<u8> {
    if t.is_base() {
        Vec::new()
    } else {
        address_of_slope(t.newest())
    }
}

/// The triangles at every prefix of `addr`, root first.
fn chain(addr: &[u8]) -> Vec<FareyTriangle> {
    let mut out = vec![FareyTriangle::base()];
    let Some((&r, rest)) = addr.split_first() else {
        return out;
    };
    let (mut u, mut v) = ROOT_CHILDREN[r as usize];
    out.push(node_triangle((u, v)));
    for &step in rest {
        let m = add(u, v);
        if step == 0 {
            v = m;
        } else {
            u = m;
        }
        out.push(node_triangle((u, v)));
    }
    out
}

/// `τ(α)`: the triangle with vertex `α` nearest the base triangle, written
/// `(α, β, γ)` with `α = β ⊕ γ`; the base triangle for its own vertices.
pub fn canonical_triangle(alpha: Slope) -> FareyTriangle {
    *chain(&address_of_slope(alpha)).last().expect("chain contains the root")
}

/// The unique path without backtracking between two triangles.
pub fn path_between(from: &FareyTriangle, to: &FareyTriangle) -> FareyPath {
    let (a, b) = (address(from), address(to));
    let k = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let (ca, cb) = (chain(&a), chain(&b));
    let mut triangles: Vec<FareyTriangle> = ca[k..].iter().rev().copied().collect();
    triangles.extend_from_slice(&cb[k + 1..]);
    FareyPath::new(triangles)
}

fn require_even(s: Slope) -> Result<(), FareyError> {
    if s.is_even() {
        Ok(())
    } else {
        Err(FareyError::NotEven(s))
    }
}

/// `d(α, β)`: saddles on the dual-tree path between `τ(α)` and `τ(β)`.
pub fn farey_distance(alpha: Slope, beta: Slope) -> Result<u64, FareyError> {
    require_even(alpha)?;
    require_even(beta)?;
    Ok(path_between(&canonical_triangle(alpha), &canonical_triangle(beta)).saddle_count)
}

fn is_even_integral(t: &FareyTriangle) -> bool {
    t.even_slope().q == 1
}

/// `d(α, F_e)`: saddles from `τ(α)` to the nearest triangle whose even slope
/// is an even integer.  The base triangle lies in `F_e`, and `F_e` is
/// connected, so the nearest point lies on the way to the root.
pub fn distance_to_even_integral_subtree(alpha: Slope) -> Result<u64, FareyError> {
    require_even(alpha)?;
    let ch = chain(&address_of_slope(alpha));
    let gate = ch.iter().rposition(is_even_integral).expect("the base triangle lies in F_e");
    Ok(FareyPath::new(ch[gate..].to_vec()).saddle_count)
}

/// Shortest flip sequence from `from` to a triangle having `to` as a vertex.
pub fn layering_sequence(from: &FareyTriangle, to: Slope) -> Vec<FlipInstruction> {
    let mut path = path_between(from, &canonical_triangle(to));
    let end = path.triangles.iter().position(|t| t.contains(to)).expect("τ(to) contains to");
    path.triangles.truncate(end + 1);
    path.flips()
}

/// `a₀ + 1/(a₁ + 1/(… + 1/aₙ))`; `None` for an empty list or a zero
/// denominator part-way through.
pub fn continued_fraction(terms: &[i64]) -> Option<Slope> {
    let (&last, rest) = terms.split_last()?;
    let (mut p, mut q) = (last, 1i64);
    for &a in rest.iter().rev() {
        (p, q) = (a.checked_mul(p)?.checked_add(q)?, p);
    }
    Slope::new(p, q)
}

/// The regular expansion (floor quotients) of a finite slope.
pub fn continued_fraction_expansion(s: Slope) -> Option<Vec<i64>> {
    if s.q == 0 {
        return None;
    }
    let (mut p, mut q) = (s.p, s.q);
    let mut out = Vec::new();
    while q != 0 {
        let a = p.div_euclid(q);
        out.push(a);
        (p, q) = (q, p - a * q);
    }
    Some(out)
}

/// Slopes with weights, answering `min (weight + d(slope, δ))` queries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SlopeTable {
    entries: BTreeMap<Slope, i64>,
}

/// The minimising entry of a [`SlopeTable`] query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nearest {
    pub value: i64,
    pub slope: Slope,
    pub distance: u64,
}

impl SlopeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps the smaller weight when the slope is already present.
    pub fn insert(&mut self, s: Slope, weight: i64) -> Result<(), FareyError> {
        require_even(s)?;
        let w = self.entries.entry(s).or_insert(weight);
        *w = (*w).min(weight);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Slope, i64)> + '_ {
        self.entries.iter().map(|(&s, &w)| (s, w))
    }

    /// Ties go to the smallest slope.
    pub fn query(&self, delta: Slope) -> Result<Option<Nearest>, FareyError> {
        require_even(delta)?;
        let mut best: Option<Nearest> = None;
        for (&slope, &w) in &self.entries {
            let distance = farey_distance(slope, delta)?;
            let value = w + distance as i64;
            if best.is_none_or(|b| value < b.value) {
                best = Some(Nearest { value, slope, distance });
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_triangles() {
        assert_eq!(canonical_triangle(s("0/1")), FareyTriangle::base());
        assert_eq!(canonical_triangle(s("1/0")), FareyTriangle::base());
        assert_eq!(canonical_triangle(s("2/3")).slopes, [s("2/3"), s("1/2"), s("1/1")]);
        assert_eq!(canonical_triangle(s("-2/1")).slopes[0], s("-2/1"));
    }

    #[test]
    fn flips_are_involutions() {
        let t = canonical_triangle(s("5/7"));
        for v in t.slopes {
            let u = t.flip(v).unwrap();
            let back = u.slopes.iter().find(|x| !t.contains(**x)).unwrap();
            assert_eq!(u.flip(*back).unwrap(), t);
        }
    }

    #[test]
    fn continued_fractions_round_trip() {
        assert_eq!(continued_fraction(&[4, 2, -4]), Some(s("32/7")));
        let x = s("-17/5");
        assert_eq!(continued_fraction(&continued_fraction_expansion(x).unwrap()), Some(x));
    }
}
