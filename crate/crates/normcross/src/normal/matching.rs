use serde::{Deserialize, Serialize};

use super::Cone;
use crate::triangulation::{Skeleton, Triangulation, EDGE_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordSystem {
    Standard,
    Quad,
}

impl CoordSystem {
    pub fn per_tet(self) -> usize {
        match self {
            CoordSystem::Standard => 7,
            CoordSystem::Quad => 3,
        }
    }

    /// Offset of quad type `k` within one tetrahedron's block.
    pub fn quad_offset(self, k: usize) -> usize {
        match self {
            CoordSystem::Standard => 4 + k,
            CoordSystem::Quad => k,
        }
    }
}

impl std::fmt::Display for CoordSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoordSystem::Standard => "standard",
            CoordSystem::Quad => "quad",
        })
    }
}

impl std::str::FromStr for CoordSystem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "standard" | "std" => Ok(CoordSystem::Standard),
            "quad" | "q" => Ok(CoordSystem::Quad),
            _ => Err(format!("unknown coordinate system {s:?}")),
        }
    }
}

/// Quad type `k` separates `{0, k+1}` from the other two vertices.
pub const QUAD_PAIRS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

/// The quad type separating `{a, b}` from its complement.
pub fn quad_separating(a: usize, b: usize) -> usize {
    let other = if a == 0 {
        b
    } else if b == 0 {
        a
    } else {
        6 - a - b
    };
    other - 1
}

/// The matching equations of a triangulation together with the quadrilateral
/// constraints, one exclusive group per tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingSystem {
    pub coords: CoordSystem,
    pub cone: Cone,
}

pub fn matching_system(tri: &Triangulation, sk: &Skeleton, coords: CoordSystem) -> MatchingSystem {
    let n = tri.size();
    let w = coords.per_tet();
    let exclusive = (0..n).map(|t| (0..3).map(|k| w * t + coords.quad_offset(k)).collect()).collect();
    let equations = match coords {
        CoordSystem::Standard => standard_equations(tri, sk),
        CoordSystem::Quad => quad_equations(tri, sk),
    };
    MatchingSystem { coords, cone: Cone { columns: w * n, equations, exclusive } }
}

fn standard_equations(tri: &Triangulation, sk: &Skeleton) -> Vec<Vec<i64>> {
    let n = tri.size();
    let mut rows = Vec::new();
    for tc in sk.triangles.iter().filter(|tc| !tc.boundary) {
        let (t, f) = tc.embeddings[0];
        let g = tri.gluing(t, f).expect("internal triangle");
        for v in (0..4).filter(|&v| v != f) {
            let (t2, f2, v2) = (g.tet, g.perm.apply(f), g.perm.apply(v));
            let mut row = vec![0i64; 7 * n];
            row[7 * t + v] += 1;
            row[7 * t + 4 + quad_separating(v, f)] += 1;
            row[7 * t2 + v2] -= 1;
            row[7 * t2 + 4 + quad_separating(v2, f2)] -= 1;
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    rows
}

/// One equation per internal edge: walking around the edge `ab`, each
/// tetrahedron entered through the face opposite `d` and left through the
/// face opposite `c` contributes `Q(ac|bd) − Q(ad|bc)`.
fn quad_equations(tri: &Triangulation, sk: &Skeleton) -> Vec<Vec<i64>> {
    let n = tri.size();
    let mut rows = Vec::new();
    for ec in sk.edges.iter().filter(|e| !e.boundary) {
        let (t0, j0) = ec.embeddings[0];
        let [a0, b0] = EDGE_VERTICES[j0];
        let mut rest = (0..4).filter(|&x| x != a0 && x != b0);
        let (c0, d0) = (rest.next().unwrap(), rest.next().unwrap());
        let mut row = vec![0i64; 3 * n];
        let (mut t, mut a, mut b, mut c, mut d) = (t0, a0, b0, c0, d0);
        for _ in 0..=ec.degree() {
            row[3 * t + quad_separating(a, c)] += 1;
            row[3 * t + quad_separating(a, d)] -= 1;
            let g = tri.gluing(t, c).expect("internal edge has no boundary faces");
            let p = g.perm;
            let (a2, b2, d2) = (p.apply(a), p.apply(b), p.apply(c));
            let c2 = 6 - a2 - b2 - d2;
            (t, a, b, c, d) = (g.tet, a2, b2, c2, d2);
            if (t, a, b, c, d) == (t0, a0, b0, c0, d0) {
                break;
            }
        }
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_pairs_agree_with_separating() {
        for (k, [[a, b], [c, d]]) in QUAD_PAIRS.iter().enumerate() {
            assert_eq!(quad_separating(*a, *b), k);
            assert_eq!(quad_separating(*b, *a), k);
            assert_eq!(quad_separating(*c, *d), k);
        }
    }
}
