//! First homology of one-vertex triangulations and peripheral framings.
//!
//! With a single vertex every edge is a loop, so `H₁(M)` is presented by the
//! edge classes modulo the boundary words of the triangle classes.
//! Peripheral classes are integer vectors `[a, b] = a·E_h + b·E_v` in the
//! oriented boundary-edge basis of [`BoundaryTorus`].

mod canonical;
mod gf2;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{det, normalize_sign, parse_class, Class};
use crate::triangulation::{compute_skeleton, edge_index, BoundaryTorus, Skeleton, Triangulation, TriangulationError};

pub use canonical::{canonical_z2_surface, Z2Labelling};
pub use gf2::{BitRow, Gf2Span};
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("presentation needs a one-vertex triangulation, found {0} vertices")]
    MultipleVertices(usize),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("image of H1(boundary) in H1(M; Z2) has rank {0}, expected 1")]
    ImageRank(usize),
    #[error("peripheral subgroup does not have rank one in the free part of H1(M)")]
    PeripheralRank,
    #[error("meridian class {0:?} is not primitive")]
    NotPrimitive(Class),
    #[error("meridian class {0:?} maps to zero in H1(M; Z2)")]
    EvenMeridian(Class),
    #[error("meridian class {0:?} is the homological longitude")]
    MeridianIsLongitude(Class),
    #[error("framing classes do not form a basis (determinant {0})")]
    NotABasis(i64),
    #[error("labelling has {got} bits for {want} edge classes")]
    LabellingLength { got: usize, want: usize },
    #[error("labelling violates the triangle-sum condition on triangle {0}")]
    LabellingNotCocycle(usize),
    #[error("malformed framing {0:?}")]
    MalformedFraming(String),
}

/// Edge-class chains of the triangle boundaries, one row per triangle class.
pub fn h1_presentation(tri: &Triangulation) -> Result<Vec<Vec<BigInt>>, HomologyError> {
    let sk = compute_skeleton(tri);
    presentation(&sk)
}

fn presentation(sk: &Skeleton) -> Result<Vec<Vec<BigInt>>, HomologyError> {
    if sk.vertices.len() != 1 {
        return Err(HomologyError::MultipleVertices(sk.vertices.len()));
    }
    let e = sk.edges.len();
    Ok(sk
        .triangles
        .iter()
        .map(|tc| {
            let (t, f) = tc.embeddings[0];
            let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
            let mut row = vec![BigInt::zero(); e];
            // ∂[a,b,c] = [a,b] + [b,c] − [a,c]
            for (a, b, sign) in [(vs[0], vs[1], 1), (vs[1], vs[2], 1), (vs[0], vs[2], -1)] {
                let j = edge_index(a, b);
                row[sk.tet_edge[t][j]] += sign * sk.tet_edge_sign[t][j];
            }
            row
        })
        .collect())
}

/// `H₁(M; ℤ)` with the change of basis needed to reduce edge chains.
#[derive(Debug, Clone)]
pub struct H1 {
    smith: SmithForm,
}

impl H1 {
    pub fn compute(tri: &Triangulation) -> Result<Self, HomologyError> {
        Self::from_skeleton(&compute_skeleton(tri))
    }

    pub fn from_skeleton(sk: &Skeleton) -> Result<Self, HomologyError> {
        let rel = presentation(sk)?;
        Ok(H1 { smith: smith_normal_form(&rel, sk.edges.len()) })
    }

    pub fn betti(&self) -> usize {
        self.smith.diagonal.iter().filter(|d| d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.smith.diagonal.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect()
    }

    /// Coordinates of an edge chain: free coordinates, then torsion
    /// coordinates reduced modulo their invariant factors.
    pub fn coords(&self, chain: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let y = self.smith.transform(chain);
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for (yi, d) in y.iter().zip(&self.smith.diagonal) {
            if d.is_zero() {
                free.push(yi.clone());
            } else if !d.is_one() {
                tors.push(yi.mod_floor(d));
            }
        }
        (free, tors)
    }

    /// Order of an element given by its torsion coordinates; `None` if the
    /// free part is nonzero.
    pub fn order(&self, chain: &[BigInt]) -> Option<BigInt> {
        let (free, tors) = self.coords(chain);
        if free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let factors = self.torsion();
        Some(tors.iter().zip(&factors).fold(BigInt::one(), |acc, (t, d)| acc.lcm(&(d / t.gcd(d)))))
    }
}

impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.betti()];
        parts.extend(self.torsion().iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Skeleton, boundary torus and homology of a one-vertex-boundary triangulation.
#[derive(Debug, Clone)]
pub struct Peripheral {
    pub skeleton: Skeleton,
    pub torus: BoundaryTorus,
    pub h1: H1,
    z2: Gf2Span,
}

impl Peripheral {
    pub fn new(tri: &Triangulation) -> Result<Self, HomologyError> {
        let skeleton = compute_skeleton(tri);
        let torus = BoundaryTorus::new(&skeleton)?;
        let rel = presentation(&skeleton)?;
        let h1 = H1 { smith: smith_normal_form(&rel, skeleton.edges.len()) };
        let n = skeleton.edges.len();
        let z2 = Gf2Span::new(rel.iter().map(|row| {
            let mut bits = BitRow::zeros(n);
            for (i, x) in row.iter().enumerate() {
                if x.is_odd() {
                    bits.flip(i);
                }
            }
            bits
        }));
        Ok(Peripheral { skeleton, torus, h1, z2 })
    }

    /// Edge chain of a peripheral class.
    pub fn chain(&self, c: Class) -> Vec<BigInt> {
        let mut chain = vec![BigInt::zero(); self.skeleton.edges.len()];
        chain[self.torus.edges[0]] += c[0] * self.torus.signs[0] as i64;
        chain[self.torus.edges[1]] += c[1] * self.torus.signs[1] as i64;
        chain
    }

    /// Whether the class is nonzero in `H₁(M; ℤ₂)`.
    pub fn odd(&self, c: Class) -> bool {
        let mut bits = BitRow::zeros(self.skeleton.edges.len());
        if c[0].rem_euclid(2) == 1 {
            bits.flip(self.torus.edges[0]);
        }
        if c[1].rem_euclid(2) == 1 {
            bits.flip(self.torus.edges[1]);
        }
        !self.z2.contains(&bits)
    }
}

/// `φ: H₁(∂M) → H₁(M; ℤ₂)` on the oriented boundary edges `h, v, d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundaryMapZ2 {
    /// `true` where the edge maps to the nonzero class.
    pub images: [bool; 3],
}

impl BoundaryMapZ2 {
    pub fn apply(&self, c: Class) -> bool {
        (c[0].rem_euclid(2) == 1 && self.images[0]) ^ (c[1].rem_euclid(2) == 1 && self.images[1])
    }

    /// Position (0 = h, 1 = v, 2 = d) of the unique even boundary edge.
    pub fn even_edge(&self) -> usize {
        self.images.iter().position(|&b| !b).expect("rank-one image has an even edge")
    }
}

pub fn boundary_map_z2(tri: &Triangulation) -> Result<BoundaryMapZ2, HomologyError> {
    boundary_map_z2_of(&Peripheral::new(tri)?)
}

pub fn boundary_map_z2_of(p: &Peripheral) -> Result<BoundaryMapZ2, HomologyError> {
    let images = [p.odd([1, 0]), p.odd([0, 1]), p.odd([1, 1])];
    match images.iter().filter(|&&b| !b).count() {
        1 => Ok(BoundaryMapZ2 { images }),
        3 => Err(HomologyError::ImageRank(0)),
        _ => Err(HomologyError::ImageRank(2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FramingFlavor {
    Geometric,
    TwoTorsion,
    Homological,
}

/// An ordered basis `(first, second)` of `H₁(∂M)` — meridian-like, then
/// longitude-like — in `(E_h, E_v)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Framing {
    pub first: Class,
    pub second: Class,
    pub flavor: FramingFlavor,
}

impl Framing {
    pub fn new(first: Class, second: Class, flavor: FramingFlavor) -> Result<Self, HomologyError> {
        let d = det(first, second);
        if d.abs() != 1 {
            return Err(HomologyError::NotABasis(d));
        }
        Ok(Framing { first, second, flavor })
    }

    /// The two classes as `"a/b"` strings (`a·E_h + b·E_v`).
    pub fn to_strings(&self) -> [String; 2] {
        [self.first, self.second].map(|c| format!("{}/{}", c[0], c[1]))
    }

    pub fn from_strings(first: &str, second: &str, flavor: FramingFlavor) -> Result<Self, HomologyError> {
        let parse = |s: &str| parse_class(s).ok_or_else(|| HomologyError::MalformedFraming(s.to_string()));
        Framing::new(parse(first)?, parse(second)?, flavor)
    }

    /// Coefficient vectors over the oriented edges `(E_h, E_v, E_d)`.
    pub fn edge_vectors(&self) -> [[i64; 3]; 2] {
        [self.first, self.second].map(|c| [c[0], c[1], 0])
    }

    /// Re-expresses the framing after a change of peripheral basis.
    pub fn transform(&self, m: [[i64; 2]; 2]) -> Framing {
        let ap = |c: Class| [m[0][0] * c[0] + m[0][1] * c[1], m[1][0] * c[0] + m[1][1] * c[1]];
        Framing { first: ap(self.first), second: ap(self.second), flavor: self.flavor }
    }
}

impl Serialize for Framing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let [first, second] = self.to_strings();
        let mut st = s.serialize_struct("Framing", 3)?;
        st.serialize_field("first", &first)?;
        st.serialize_field("second", &second)?;
        st.serialize_field("flavor", &self.flavor)?;
        st.end()
    }
}

/// The 2-torsion framing `(m₂, l₂)`: `φ(m₂) ≠ 0 = φ(l₂)`.
///
/// Tie-break: minimise `|m₂|² + |l₂|²`, then take `m₂` and then `l₂`
/// lexicographically smallest after normalising signs (first nonzero
/// coordinate positive); finally `l₂` is negated if needed so that
/// `det(m₂, l₂) = 1`.
pub fn two_torsion_framing(tri: &Triangulation) -> Result<Framing, HomologyError> {
    two_torsion_framing_of(&Peripheral::new(tri)?)
}

pub fn two_torsion_framing_of(p: &Peripheral) -> Result<Framing, HomologyError> {
    let phi = boundary_map_z2_of(p)?;
    let mut vecs: Vec<Class> = Vec::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            let c = [a, b];
            if c != [0, 0] && normalize_sign(c) == c {
                vecs.push(c);
            }
        }
    }
    let norm = |c: Class| c[0] * c[0] + c[1] * c[1];
    let mut best: Option<(i64, Class, Class)> = None;
    for &m in vecs.iter().filter(|&&m| phi.apply(m)) {
        for &l in vecs.iter().filter(|&&l| !phi.apply(l)) {
            if det(m, l).abs() != 1 {
                continue;
            }
            let key = (norm(m) + norm(l), m, l);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let (_, m, l) = best.expect("a rank-one image always admits a 2-torsion basis");
    let l = if det(m, l) == 1 { l } else { [-l[0], -l[1]] };
    Framing::new(m, l, FramingFlavor::TwoTorsion)
}

/// The homological longitude and its order in `H₁(M; ℤ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologicalLongitude {
    pub class: Class,
    pub order: u64,
}

pub fn homological_longitude(tri: &Triangulation) -> Result<HomologicalLongitude, HomologyError> {
    homological_longitude_of(&Peripheral::new(tri)?)
}

pub fn homological_longitude_of(p: &Peripheral) -> Result<HomologicalLongitude, HomologyError> {
    let (u, _) = p.h1.coords(&p.chain([1, 0]));
    let (w, _) = p.h1.coords(&p.chain([0, 1]));
    // kernel of the rank-one map [u w]: ℤ² → ℤ^b
    let k = (0..u.len()).find(|&i| !u[i].is_zero() || !w[i].is_zero()).ok_or(HomologyError::PeripheralRank)?;
    let g = u[k].gcd(&w[k]);
    let a = (&w[k] / &g).to_i64().ok_or(HomologyError::PeripheralRank)?;
    let b = (-&u[k] / &g).to_i64().ok_or(HomologyError::PeripheralRank)?;
    if u.iter().zip(&w).any(|(ui, wi)| !(ui * a + wi * b).is_zero()) {
        return Err(HomologyError::PeripheralRank);
    }
    let class = normalize_sign([a, b]);
    let order = p.h1.order(&p.chain(class)).and_then(|o| o.to_u64()).ok_or(HomologyError::PeripheralRank)?;
    Ok(HomologicalLongitude { class, order })
}

/// The geometric framing `(m_g, l_g)` for a given meridian class.
///
/// `l_g` is the shortest member of `S(K) = { γ even : |det(γ, m_g)| = 1 }`,
/// measured in the real basis `(m_g, l_∞)` treated as orthonormal; this is
/// `l_∞` itself when an orientable spanning surface exists.  Ties go to the
/// lexicographically smaller normalised class.  Oriented so `det(m_g, l_g) = 1`.
pub fn geometric_framing(tri: &Triangulation, meridian: Class) -> Result<Framing, HomologyError> {
    geometric_framing_of(&Peripheral::new(tri)?, meridian)
}

pub fn geometric_framing_of(p: &Peripheral, meridian: Class) -> Result<Framing, HomologyError> {
    let m = meridian;
    if m[0].gcd(&m[1]) != 1 {
        return Err(HomologyError::NotPrimitive(m));
    }
    boundary_map_z2_of(p)?;
    if !p.odd(m) {
        return Err(HomologyError::EvenMeridian(m));
    }
    let l_inf = homological_longitude_of(p)?.class;
    let dml = det(m, l_inf);
    if dml == 0 {
        return Err(HomologyError::MeridianIsLongitude(m));
    }
    // γ* with det(γ*, m) = 1 via Bézout, then fix its parity
    let e = m[0].extended_gcd(&m[1]);
    let (s, t) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    let mut g0 = [t, -s];
    if p.odd(g0) {
        g0 = [g0[0] + m[0], g0[1] + m[1]];
    }
    // x(γ₀ + 2k·m) ∝ n0 + 2k·dml; minimise its absolute value
    let n0 = det(g0, l_inf);
    let k0 = Integer::div_floor(&(-n0), &(2 * dml));
    let mut best: Option<(i64, Class)> = None;
    for k in [k0 - 1, k0, k0 + 1, k0 + 2] {
        let c = [g0[0] + 2 * k * m[0], g0[1] + 2 * k * m[1]];
        let key = ((n0 + 2 * k * dml).abs(), normalize_sign(c));
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    let l = best.expect("candidates are nonempty").1;
    let l = if det(m, l) == 1 { l } else { [-l[0], -l[1]] };
    Framing::new(m, l, FramingFlavor::Geometric)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn framing_strings_round_trip() {
        let f = Framing::new([1, 0], [-1, 1], FramingFlavor::TwoTorsion).unwrap();
        let [a, b] = f.to_strings();
        assert_eq!((a.as_str(), b.as_str()), ("1/0", "-1/1"));
        assert_eq!(Framing::from_strings(&a, &b, FramingFlavor::TwoTorsion).unwrap(), f);
        assert!(Framing::new([2, 0], [0, 1], FramingFlavor::Geometric).is_err());
    }
}
