//! Explicit reconstruction of normal surfaces from coordinates.
//!
//! Discs are numbered per tetrahedron and type.  Arcs in a face are indexed
//! by the corner they cut and their position counted from that corner;
//! triangles sit nearest the corner, quads of type `k` are indexed from the
//! side containing vertex 0.  Gluing arcs across faces gives connectivity,
//! and a transverse orientation (triangles towards their vertex, quads
//! towards the vertex-0 side) gives two-sidedness.

use std::collections::VecDeque;

use serde::Serialize;

use super::matching::{quad_separating, CoordSystem, QUAD_PAIRS};
use super::NormalError;
use crate::curves::BoundaryCurveCoords;
use crate::triangulation::{BoundaryTorus, Skeleton, Triangulation, EDGE_VERTICES};
use crate::util::ParityUnionFind;

pub const DEFAULT_DISC_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalSurface {
    /// Coordinates in `system`.
    pub coords: Vec<u64>,
    pub system: CoordSystem,
    /// Standard coordinates (the minimal lift for quad input).
    #[serde(skip)]
    pub standard: Vec<u64>,
    #[serde(rename = "chi")]
    pub euler: i64,
    pub orientable: bool,
    pub connected: bool,
    pub components: usize,
    pub weight: u64,
    pub q_weight: u64,
    /// Boundary curve on each boundary torus of `M`.
    pub boundary: Vec<BoundaryCurveCoords>,
    pub is_vertex_linking: bool,
    pub has_vertex_linking_component: bool,
}

impl NormalSurface {
    pub fn is_closed(&self) -> bool {
        self.boundary.iter().all(|c| c.0 == [0, 0, 0])
    }

    pub fn is_empty(&self) -> bool {
        self.components == 0
    }
}

fn tri_count(std: &[u64], t: usize, v: usize) -> u64 {
    std[7 * t + v]
}

fn quad_count(std: &[u64], t: usize, k: usize) -> u64 {
    std[7 * t + 4 + k]
}

/// Number of arcs cutting corner `v` of face `f` of tetrahedron `t`.
pub fn arc_count(std: &[u64], t: usize, f: usize, v: usize) -> u64 {
    tri_count(std, t, v) + quad_count(std, t, quad_separating(v, f))
}

/// Minimal standard coordinates with the given quads.
pub fn lift_quads(tri: &Triangulation, sk: &Skeleton, quads: &[u64]) -> Result<Vec<u64>, NormalError> {
    let n = tri.size();
    let q = |t: usize, k: usize| quads[3 * t + k] as i128;
    let mut val: Vec<Option<i128>> = vec![None; 4 * n];
    for vc in &sk.vertices {
        let (t0, v0) = vc.embeddings[0];
        val[4 * t0 + v0] = Some(0);
        let mut queue = VecDeque::from([(t0, v0)]);
        while let Some((t, v)) = queue.pop_front() {
            let x = val[4 * t + v].expect("visited");
            for f in (0..4).filter(|&f| f != v) {
                let Some(g) = tri.gluing(t, f) else { continue };
                let (t2, v2, f2) = (g.tet, g.perm.apply(v), g.perm.apply(f));
                let y = x + q(t, quad_separating(v, f)) - q(t2, quad_separating(v2, f2));
                match val[4 * t2 + v2] {
                    None => {
                        val[4 * t2 + v2] = Some(y);
                        queue.push_back((t2, v2));
                    }
                    Some(z) if z != y => return Err(NormalError::NotMatching),
                    Some(_) => {}
                }
            }
        }
        let min = vc.embeddings.iter().map(|&(t, v)| val[4 * t + v].expect("visited")).min().unwrap_or(0);
        for &(t, v) in &vc.embeddings {
            val[4 * t + v] = Some(val[4 * t + v].expect("visited") - min);
        }
    }
    let mut std = vec![0u64; 7 * n];
    for t in 0..n {
        for v in 0..4 {
            std[7 * t + v] = u64::try_from(val[4 * t + v].expect("every corner has a vertex class"))
                .map_err(|_| NormalError::Overflow)?;
        }
        for k in 0..3 {
            std[7 * t + 4 + k] = quads[3 * t + k];
        }
    }
    Ok(std)
}

struct Discs {
    /// `base[7t + type]`: id of the first disc of that type in `t`.
    base: Vec<u64>,
    total: u64,
}

impl Discs {
    fn new(std: &[u64]) -> Result<Self, NormalError> {
        let mut base = Vec::with_capacity(std.len());
        let mut total = 0u64;
        for &c in std {
            base.push(total);
            total = total.checked_add(c).ok_or(NormalError::Overflow)?;
        }
        Ok(Discs { base, total })
    }

    /// Disc owning the `j`-th arc from corner `v` in face `f` of `t`, and
    /// whether its transverse orientation points towards that corner.
    fn at_arc(&self, std: &[u64], t: usize, f: usize, v: usize, j: u64) -> (u64, bool) {
        let tv = tri_count(std, t, v);
        if j < tv {
            return (self.base[7 * t + v] + j, true);
        }
        let k = quad_separating(v, f);
        let nq = quad_count(std, t, k);
        let near_p = QUAD_PAIRS[k][0].contains(&v);
        let i = if near_p { j - tv } else { nq - 1 - (j - tv) };
        (self.base[7 * t + 4 + k] + i, near_p)
    }

    /// Disc through the `j`-th point from `a` along edge `ab` of `t`.
    fn at_edge_point(&self, std: &[u64], t: usize, a: usize, b: usize, j: u64) -> u64 {
        let ta = tri_count(std, t, a);
        if j < ta {
            return self.base[7 * t + a] + j;
        }
        let mut j = j - ta;
        for k in (0..3).filter(|&k| k != quad_separating(a, b)) {
            let nq = quad_count(std, t, k);
            if j < nq {
                let i = if QUAD_PAIRS[k][0].contains(&a) { j } else { nq - 1 - j };
                return self.base[7 * t + 4 + k] + i;
            }
            j -= nq;
        }
        let tb = tri_count(std, t, b);
        self.base[7 * t + b] + (tb - 1 - j)
    }

    fn is_triangle(&self, d: u64) -> bool {
        // empty types share their base with the next type, so the last
        // base ≤ d belongs to a nonempty type
        let ty = self.base.partition_point(|&b| b <= d) - 1;
        ty % 7 < 4
    }
}

/// Builds the surface for admissible coordinates in `system`.
pub fn reconstruct(
    tri: &Triangulation,
    sk: &Skeleton,
    torus: Option<&BoundaryTorus>,
    system: CoordSystem,
    coords: &[u64],
    disc_cap: u64,
) -> Result<NormalSurface, NormalError> {
    let n = tri.size();
    if coords.len() != system.per_tet() * n {
        return Err(NormalError::Length { got: coords.len(), want: system.per_tet() * n });
    }
    let standard = match system {
        CoordSystem::Standard => coords.to_vec(),
        CoordSystem::Quad => lift_quads(tri, sk, coords)?,
    };
    let std = &standard;
    for t in 0..n {
        if (0..3).filter(|&k| quad_count(std, t, k) > 0).count() > 1 {
            return Err(NormalError::Inadmissible);
        }
    }
    for tc in sk.triangles.iter().filter(|tc| !tc.boundary) {
        let (t, f) = tc.embeddings[0];
        let g = tri.gluing(t, f).expect("internal triangle");
        for v in (0..4).filter(|&v| v != f) {
            if arc_count(std, t, f, v) != arc_count(std, g.tet, g.perm.apply(f), g.perm.apply(v)) {
                return Err(NormalError::NotMatching);
            }
        }
    }
    let discs = Discs::new(std)?;
    if discs.total > disc_cap {
        return Err(NormalError::DiscCap { discs: discs.total, cap: disc_cap });
    }
    let total = usize::try_from(discs.total).map_err(|_| NormalError::Overflow)?;

    let mut uf = ParityUnionFind::new(total);
    for t in 0..n {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            let f2 = g.perm.apply(f);
            if (g.tet, f2) < (t, f) {
                continue;
            }
            for v in (0..4).filter(|&v| v != f) {
                let v2 = g.perm.apply(v);
                for j in 0..arc_count(std, t, f, v) {
                    let (d1, o1) = discs.at_arc(std, t, f, v, j);
                    let (d2, o2) = discs.at_arc(std, g.tet, f2, v2, j);
                    uf.union(d1 as usize, d2 as usize, o1 != o2);
                }
            }
        }
    }

    // components in order of their smallest disc
    let mut comp_of_root = vec![usize::MAX; total];
    let mut comp = vec![0usize; total];
    let mut count = 0;
    for d in 0..total {
        let (r, _) = uf.find(d);
        if comp_of_root[r] == usize::MAX {
            comp_of_root[r] = count;
            count += 1;
        }
        comp[d] = comp_of_root[r];
    }
    let mut euler = vec![0i64; count];
    let mut two_sided = vec![true; count];
    let mut all_triangles = vec![true; count];
    for d in 0..total {
        let c = comp[d];
        euler[c] += 1;
        if uf.has_conflict(d) {
            two_sided[c] = false;
        }
        if !discs.is_triangle(d as u64) {
            all_triangles[c] = false;
        }
    }
    for tc in &sk.triangles {
        let (t, f) = tc.embeddings[0];
        for v in (0..4).filter(|&v| v != f) {
            for j in 0..arc_count(std, t, f, v) {
                euler[comp[discs.at_arc(std, t, f, v, j).0 as usize]] -= 1;
            }
        }
    }
    let mut weight = 0u64;
    for ec in &sk.edges {
        let (t, e) = ec.embeddings[0];
        let [a, b] = EDGE_VERTICES[e];
        let w = edge_weight(std, t, a, b);
        weight += w;
        for j in 0..w {
            euler[comp[discs.at_edge_point(std, t, a, b, j) as usize]] += 1;
        }
    }

    let q_weight = (0..n).flat_map(|t| (0..3).map(move |k| (t, k))).map(|(t, k)| quad_count(std, t, k)).sum();
    let boundary = torus
        .map(|bt| {
            let (t, f) = bt.face;
            vec![BoundaryCurveCoords(bt.corners.map(|v| arc_count(std, t, f, v)))]
        })
        .unwrap_or_default();
    Ok(NormalSurface {
        coords: coords.to_vec(),
        system,
        standard,
        euler: euler.iter().sum(),
        orientable: two_sided.iter().all(|&b| b),
        connected: count == 1,
        components: count,
        weight,
        q_weight,
        boundary,
        is_vertex_linking: count > 0 && all_triangles.iter().all(|&b| b),
        has_vertex_linking_component: all_triangles.iter().any(|&b| b),
    })
}

pub fn edge_weight(std: &[u64], t: usize, a: usize, b: usize) -> u64 {
    let quads: u64 = (0..3).filter(|&k| k != quad_separating(a, b)).map(|k| quad_count(std, t, k)).sum();
    tri_count(std, t, a) + tri_count(std, t, b) + quads
}

/// Edge weights per edge class.
pub fn edge_weights(sk: &Skeleton, std: &[u64]) -> Vec<u64> {
    sk.edges
        .iter()
        .map(|ec| {
            let (t, e) = ec.embeddings[0];
            let [a, b] = EDGE_VERTICES[e];
            edge_weight(std, t, a, b)
        })
        .collect()
}
