use super::skeleton::{compute_skeleton, BoundaryTorus, Skeleton};
use super::{edge_index, Gluing, Perm4, Triangulation, TriangulationError};

/// Result of layering: the new triangulation and the integer matrix taking
/// `(E_h, E_v)`-coordinates of a peripheral class before layering to its
/// coordinates afterwards.
#[derive(Debug, Clone)]
pub struct Layered {
    pub triangulation: Triangulation,
    pub boundary_map: [[i64; 2]; 2],
}

impl Layered {
    pub fn map(&self, v: (i64, i64)) -> (i64, i64) {
        let m = &self.boundary_map;
        (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
    }
}

const BASIS: [(i64, i64); 3] = [(1, 0), (0, 1), (1, 1)];

/// Layers a tetrahedron across boundary edge class `edge`, flipping it.
///
/// The new tetrahedron's edge 01 is glued onto `edge`, its face 3 onto one
/// boundary triangle and its face 2 onto the other; edge 23 becomes the new
/// boundary edge.
pub fn layer_on_boundary_edge(tri: &Triangulation, edge: usize) -> Result<Layered, TriangulationError> {
    let sk = compute_skeleton(tri);
    let torus = BoundaryTorus::new(&sk)?;
    if edge >= sk.edges.len() || torus.position(edge).is_none() {
        return Err(TriangulationError::NotBoundaryEdge(edge));
    }

    let side = |tc: usize| -> (usize, usize, [usize; 3], i32) {
        let (t, f) = sk.triangles[tc].embeddings[0];
        let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        for (a, b, c) in [(vs[0], vs[1], vs[2]), (vs[0], vs[2], vs[1]), (vs[1], vs[2], vs[0])] {
            let j = edge_index(a, b);
            if sk.tet_edge[t][j] == edge {
                return (t, f, [a, b, c], sk.tet_edge_sign[t][j]);
            }
        }
        unreachable!("boundary triangle misses a boundary edge of a one-vertex torus")
    };
    let (t1, f1, [a1, b1, c1], s1) = side(torus.triangles[0]);
    let (t2, f2, [mut a2, mut b2, c2], s2) = side(torus.triangles[1]);
    if s1 != s2 {
        std::mem::swap(&mut a2, &mut b2);
    }

    let mut out = tri.clone();
    let sigma = out.push_free();
    let to = |images: [usize; 4]| Perm4::new(images.map(|x| x as u8)).expect("distinct vertices");
    out.join(sigma, 3, Gluing { tet: t1, perm: to([a1, b1, c1, f1]) });
    out.join(sigma, 2, Gluing { tet: t2, perm: to([a2, b2, f2, c2]) });

    let new_sk = compute_skeleton(&out);
    let new_torus = BoundaryTorus::new(&new_sk)?;
    let boundary_map = change_of_basis(&sk, &torus, &new_sk, &new_torus, edge)?;
    Ok(Layered { triangulation: out, boundary_map })
}

/// Matrix sending old peripheral coordinates to new ones, computed from the
/// two boundary edges that survive the flip.
fn change_of_basis(
    old: &Skeleton,
    old_torus: &BoundaryTorus,
    new: &Skeleton,
    new_torus: &BoundaryTorus,
    flipped: usize,
) -> Result<[[i64; 2]; 2], TriangulationError> {
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for k in 0..3 {
        let e = old_torus.edges[k];
        if e == flipped {
            continue;
        }
        let (t, j) = old.edges[e].embeddings[0];
        let e2 = new.tet_edge[t][j];
        let k2 = new_torus.position(e2).ok_or(TriangulationError::BoundaryNotTorus)?;
        // canonical_old = flip · canonical_new, E_k = signs[k] · canonical
        let flip = (old.tet_edge_sign[t][j] * new.tet_edge_sign[t][j]) as i64;
        let s_old = old_torus.signs[k] as i64;
        let s_new = new_torus.signs[k2] as i64 * flip;
        src.push((BASIS[k].0 * s_old, BASIS[k].1 * s_old));
        dst.push((BASIS[k2].0 * s_new, BASIS[k2].1 * s_new));
    }
    // M · S = D with S = [src0 src1] unimodular
    let (s0, s1) = (src[0], src[1]);
    let det = s0.0 * s1.1 - s1.0 * s0.1;
    if det.abs() != 1 {
        return Err(TriangulationError::BoundaryNotTorus);
    }
    let inv = [[s1.1 * det, -s1.0 * det], [-s0.1 * det, s0.0 * det]];
    let (d0, d1) = (dst[0], dst[1]);
    let d = [[d0.0, d1.0], [d0.1, d1.1]];
    let mut m = [[0i64; 2]; 2];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = d[i][0] * inv[0][j] + d[i][1] * inv[1][j];
        }
    }
    Ok(m)
}
