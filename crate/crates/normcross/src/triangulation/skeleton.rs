use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{edge_index, Triangulation, TriangulationError, EDGE_VERTICES};
use crate::util::{ParityUnionFind, UnionFind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    /// `(tet, vertex)` pairs, sorted.
    pub embeddings: Vec<(usize, usize)>,
    pub boundary: bool,
    /// Euler characteristic of the vertex link (2 for a sphere, 1 for a disc).
    pub link_euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    /// `(tet, local edge)` pairs, sorted; the first is the canonical representative.
    pub embeddings: Vec<(usize, usize)>,
    pub boundary: bool,
    /// False if the edge is identified with itself in reverse.
    pub valid: bool,
    /// Tail and head vertex classes in the canonical orientation.
    pub ends: [usize; 2],
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleClass {
    /// `(tet, face)` pairs: one for boundary triangles, two otherwise.
    pub embeddings: Vec<(usize, usize)>,
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    pub triangles: Vec<usize>,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl BoundaryComponent {
    pub fn euler(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }
}

/// Vertex, edge and triangle classes of a triangulation, canonically
/// numbered by their smallest `(tet, sub-simplex)` representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skeleton {
    pub tetrahedra: usize,
    pub vertices: Vec<VertexClass>,
    pub edges: Vec<EdgeClass>,
    pub triangles: Vec<TriangleClass>,
    pub tet_vertex: Vec<[usize; 4]>,
    pub tet_edge: Vec<[usize; 6]>,
    /// +1 if the local edge (low → high vertex) agrees with its class's
    /// canonical orientation, −1 otherwise.
    pub tet_edge_sign: Vec<[i32; 6]>,
    pub tet_triangle: Vec<[usize; 4]>,
    /// Per-tetrahedron orientation signs, or `None` if non-orientable.
    pub orientation: Option<Vec<i32>>,
    pub components: usize,
    pub boundary_components: Vec<BoundaryComponent>,
}

impl Skeleton {
    pub fn is_orientable(&self) -> bool {
        self.orientation.is_some()
    }

    /// V − E + F − T.
    pub fn euler(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64 - self.tetrahedra as i64
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].boundary).collect()
    }

    pub fn internal_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| !self.edges[e].boundary).collect()
    }
}

/// Numbers union-find classes by first appearance in index order and
/// collects their members.
fn canonical_classes(uf: &mut UnionFind, n: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut id_of_root = vec![usize::MAX; n];
    let mut class = vec![0; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = uf.find(x);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = members.len();
            members.push(Vec::new());
        }
        class[x] = id_of_root[r];
        members[id_of_root[r]].push(x);
    }
    (class, members)
}

pub fn compute_skeleton(tri: &Triangulation) -> Skeleton {
    let n = tri.size();

    let mut vuf = UnionFind::new(4 * n);
    let mut euf = ParityUnionFind::new(6 * n);
    let mut tuf = UnionFind::new(4 * n);
    let mut comp = UnionFind::new(n);
    for t in 0..n {
        for f in 0..4 {
            let Some(g) = tri.gluing(t, f) else { continue };
            comp.union(t, g.tet);
            tuf.union(4 * t + f, 4 * g.tet + g.perm.apply(f));
            for v in (0..4).filter(|&v| v != f) {
                vuf.union(4 * t + v, 4 * g.tet + g.perm.apply(v));
            }
            for (j, &[a, b]) in EDGE_VERTICES.iter().enumerate() {
                if a == f || b == f {
                    continue;
                }
                let (a2, b2) = (g.perm.apply(a), g.perm.apply(b));
                euf.union(6 * t + j, 6 * g.tet + edge_index(a2, b2), a2 > b2);
            }
        }
    }

    let (vclass, vmembers) = canonical_classes(&mut vuf, 4 * n);
    let (tclass, tmembers) = canonical_classes(&mut tuf, 4 * n);

    // edges: classes by first appearance; signs relative to the representative
    let mut eroot_id = vec![usize::MAX; 6 * n];
    let mut eclass = vec![0usize; 6 * n];
    let mut esign = vec![1i32; 6 * n];
    let mut emembers: Vec<Vec<usize>> = Vec::new();
    let mut rep_parity: Vec<bool> = Vec::new();
    for x in 0..6 * n {
        let (r, p) = euf.find(x);
        if eroot_id[r] == usize::MAX {
            eroot_id[r] = emembers.len();
            emembers.push(Vec::new());
            rep_parity.push(p);
        }
        let id = eroot_id[r];
        eclass[x] = id;
        esign[x] = if p == rep_parity[id] { 1 } else { -1 };
        emembers[id].push(x);
    }

    let face_is_boundary = |t: usize, f: usize| tri.gluing(t, f).is_none();

    let triangles: Vec<TriangleClass> = tmembers
        .iter()
        .map(|m| TriangleClass { embeddings: m.iter().map(|&x| (x / 4, x % 4)).collect(), boundary: m.len() == 1 })
        .collect();

    let edges: Vec<EdgeClass> = emembers
        .iter()
        .map(|m| {
            let embeddings: Vec<(usize, usize)> = m.iter().map(|&x| (x / 6, x % 6)).collect();
            let boundary = embeddings.iter().any(|&(t, j)| {
                let [a, b] = EDGE_VERTICES[j];
                (0..4).any(|f| f != a && f != b && face_is_boundary(t, f))
            });
            let (t0, j0) = embeddings[0];
            let [a, b] = EDGE_VERTICES[j0];
            EdgeClass {
                valid: !euf.has_conflict(m[0]),
                boundary,
                ends: [vclass[4 * t0 + a], vclass[4 * t0 + b]],
                embeddings,
            }
        })
        .collect();

    let mut vertices: Vec<VertexClass> = vmembers
        .iter()
        .map(|m| {
            let embeddings: Vec<(usize, usize)> = m.iter().map(|&x| (x / 4, x % 4)).collect();
            let boundary = embeddings.iter().any(|&(t, v)| (0..4).any(|f| f != v && face_is_boundary(t, f)));
            VertexClass { embeddings, boundary, link_euler: 0 }
        })
        .collect();

    // vertex links: F = corners, E = corner sides (glued ones shared), V = edge ends
    for (vi, vc) in vertices.iter_mut().enumerate() {
        let faces = vc.embeddings.len() as i64;
        let mut twice_edges = 0i64;
        for &(t, v) in &vc.embeddings {
            for f in (0..4).filter(|&f| f != v) {
                twice_edges += if face_is_boundary(t, f) { 2 } else { 1 };
            }
        }
        let ends =
            edges.iter().filter(|e| e.valid).map(|e| e.ends.iter().filter(|&&x| x == vi).count() as i64).sum::<i64>();
        vc.link_euler = ends - twice_edges / 2 + faces;
    }

    let tet_vertex: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|v| vclass[4 * t + v])).collect();
    let tet_edge: Vec<[usize; 6]> = (0..n).map(|t| std::array::from_fn(|j| eclass[6 * t + j])).collect();
    let tet_edge_sign: Vec<[i32; 6]> = (0..n).map(|t| std::array::from_fn(|j| esign[6 * t + j])).collect();
    let tet_triangle: Vec<[usize; 4]> = (0..n).map(|t| std::array::from_fn(|f| tclass[4 * t + f])).collect();

    let orientation = orient(tri);
    let components = (0..n).filter(|&t| comp.find(t) == t).count();
    let boundary_components = boundary_components(&triangles, &tet_edge, &tet_vertex);

    Skeleton {
        tetrahedra: n,
        vertices,
        edges,
        triangles,
        tet_vertex,
        tet_edge,
        tet_edge_sign,
        tet_triangle,
        orientation,
        components,
        boundary_components,
    }
}

/// Propagates orientations: across a gluing by `π`, the neighbour's sign is
/// `−sign(π)` times ours.
fn orient(tri: &Triangulation) -> Option<Vec<i32>> {
    let n = tri.size();
    let mut o = vec![0i32; n];
    for start in 0..n {
        if o[start] != 0 {
            continue;
        }
        o[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for f in 0..4 {
                let Some(g) = tri.gluing(t, f) else { continue };
                let want = -g.perm.sign() * o[t];
                if o[g.tet] == 0 {
                    o[g.tet] = want;
                    queue.push_back(g.tet);
                } else if o[g.tet] != want {
                    return None;
                }
            }
        }
    }
    Some(o)
}

fn boundary_components(
    triangles: &[TriangleClass],
    tet_edge: &[[usize; 6]],
    tet_vertex: &[[usize; 4]],
) -> Vec<BoundaryComponent> {
    let bfaces: Vec<usize> = (0..triangles.len()).filter(|&i| triangles[i].boundary).collect();
    let face_edges = |tc: usize| -> [usize; 3] {
        let (t, f) = triangles[tc].embeddings[0];
        let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        [
            tet_edge[t][edge_index(vs[0], vs[1])],
            tet_edge[t][edge_index(vs[0], vs[2])],
            tet_edge[t][edge_index(vs[1], vs[2])],
        ]
    };
    let mut uf = UnionFind::new(bfaces.len());
    let mut first_face_of_edge = std::collections::HashMap::new();
    for (i, &tc) in bfaces.iter().enumerate() {
        for e in face_edges(tc) {
            match first_face_of_edge.get(&e) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    first_face_of_edge.insert(e, i);
                }
            }
        }
    }
    let mut out: Vec<BoundaryComponent> = Vec::new();
    let mut id_of_root = std::collections::HashMap::new();
    for (i, &tc) in bfaces.iter().enumerate() {
        let r = uf.find(i);
        let id = *id_of_root.entry(r).or_insert_with(|| {
            out.push(BoundaryComponent { triangles: vec![], edges: vec![], vertices: vec![] });
            out.len() - 1
        });
        out[id].triangles.push(tc);
    }
    for bc in &mut out {
        let mut es = BTreeSet::new();
        let mut vs = BTreeSet::new();
        for &tc in &bc.triangles {
            es.extend(face_edges(tc));
            let (t, f) = triangles[tc].embeddings[0];
            vs.extend((0..4).filter(|&v| v != f).map(|v| tet_vertex[t][v]));
        }
        bc.edges = es.into_iter().collect();
        bc.vertices = vs.into_iter().collect();
    }
    out
}

/// A failed check in [`validate_knot_exterior`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Diagnostic {
    NotOrientable,
    NotConnected { components: usize },
    InvalidEdge { edge: usize },
    BadVertexLink { vertex: usize, link_euler: i64 },
    NoBoundary,
    BoundaryComponents { count: usize },
    BoundaryNotTorus { euler: i64 },
    BoundaryVertices { count: usize },
    BoundaryEdges { count: usize },
    BoundaryTriangles { count: usize },
    EulerCharacteristic { euler: i64 },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NotOrientable => write!(f, "triangulation is not orientable"),
            Diagnostic::NotConnected { components } => {
                write!(f, "triangulation is not connected ({components} components)")
            }
            Diagnostic::InvalidEdge { edge } => {
                write!(f, "edge {edge} is identified with its reverse")
            }
            Diagnostic::BadVertexLink { vertex, link_euler } => {
                write!(f, "vertex {vertex} has a link with Euler characteristic {link_euler}")
            }
            Diagnostic::NoBoundary => {
                write!(f, "no boundary: expected exactly one boundary component")
            }
            Diagnostic::BoundaryComponents { count } => {
                write!(f, "expected one boundary component, found {count}")
            }
            Diagnostic::BoundaryNotTorus { euler } => {
                write!(f, "boundary is not a torus (Euler characteristic {euler})")
            }
            Diagnostic::BoundaryVertices { count } => {
                write!(f, "boundary has {count} vertices, expected 1")
            }
            Diagnostic::BoundaryEdges { count } => {
                write!(f, "boundary has {count} edges, expected 3")
            }
            Diagnostic::BoundaryTriangles { count } => {
                write!(f, "boundary has {count} triangles, expected 2")
            }
            Diagnostic::EulerCharacteristic { euler } => {
                write!(f, "Euler characteristic is {euler}, expected 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExteriorReport {
    pub orientable: bool,
    pub connected: bool,
    pub boundary_components: usize,
    pub boundary_is_torus: bool,
    pub boundary_vertices: usize,
    pub boundary_edges: usize,
    pub boundary_triangles: usize,
    /// The whole triangulation has a single vertex (necessarily on the boundary).
    pub one_vertex: bool,
    pub euler: i64,
    pub diagnostics: Vec<Diagnostic>,
}

impl ExteriorReport {
    pub fn passed(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Checks that the triangulation is a plausible knot exterior: connected,
/// orientable, valid, with one torus boundary component triangulated by one
/// vertex, three edges and two triangles.
pub fn validate_knot_exterior(tri: &Triangulation) -> ExteriorReport {
    let sk = compute_skeleton(tri);
    let mut diagnostics = Vec::new();
    if !sk.is_orientable() {
        diagnostics.push(Diagnostic::NotOrientable);
    }
    if sk.components != 1 {
        diagnostics.push(Diagnostic::NotConnected { components: sk.components });
    }
    for (i, e) in sk.edges.iter().enumerate() {
        if !e.valid {
            diagnostics.push(Diagnostic::InvalidEdge { edge: i });
        }
    }
    for (i, v) in sk.vertices.iter().enumerate() {
        let want = if v.boundary { 1 } else { 2 };
        if v.link_euler != want {
            diagnostics.push(Diagnostic::BadVertexLink { vertex: i, link_euler: v.link_euler });
        }
    }
    let nbc = sk.boundary_components.len();
    let (mut bv, mut be, mut bt, mut torus) = (0, 0, 0, false);
    match nbc {
        0 => diagnostics.push(Diagnostic::NoBoundary),
        1 => {
            let bc = &sk.boundary_components[0];
            bv = bc.vertices.len();
            be = bc.edges.len();
            bt = bc.triangles.len();
            torus = bc.euler() == 0 && sk.is_orientable();
            if !torus {
                diagnostics.push(Diagnostic::BoundaryNotTorus { euler: bc.euler() });
            }
            if bv != 1 {
                diagnostics.push(Diagnostic::BoundaryVertices { count: bv });
            }
            if be != 3 {
                diagnostics.push(Diagnostic::BoundaryEdges { count: be });
            }
            if bt != 2 {
                diagnostics.push(Diagnostic::BoundaryTriangles { count: bt });
            }
        }
        _ => diagnostics.push(Diagnostic::BoundaryComponents { count: nbc }),
    }
    if nbc == 1 && torus && sk.euler() != 0 {
        diagnostics.push(Diagnostic::EulerCharacteristic { euler: sk.euler() });
    }
    ExteriorReport {
        orientable: sk.is_orientable(),
        connected: sk.components == 1,
        boundary_components: nbc,
        boundary_is_torus: torus,
        boundary_vertices: bv,
        boundary_edges: be,
        boundary_triangles: bt,
        one_vertex: sk.vertices.len() == 1,
        euler: sk.euler(),
        diagnostics,
    }
}

/// The induced one-vertex triangulation of the boundary torus.
///
/// The three boundary edge classes, in canonical order, are labelled
/// `h`, `v`, `d`, and oriented (`signs` relative to each class's canonical
/// orientation) so that `E_d = E_h + E_v` in `H₁(∂M)`.  A normal curve is
/// recorded by its arc counts `(x₁, x₂, x₃)` in the first boundary
/// triangle: `x₁` cuts off the corner between `h` and `d`, `x₂` the corner
/// between `v` and `d`, `x₃` the corner between `v` and `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryTorus {
    pub triangles: [usize; 2],
    /// `(tet, face)` of the first boundary triangle.
    pub face: (usize, usize),
    /// Edge classes `[h, v, d]`.
    pub edges: [usize; 3],
    pub signs: [i32; 3],
    /// Local vertices of `face` at the corners for `x₁, x₂, x₃`.
    pub corners: [usize; 3],
}

impl BoundaryTorus {
    pub fn new(sk: &Skeleton) -> Result<Self, TriangulationError> {
        let [bc] = sk.boundary_components.as_slice() else {
            return Err(TriangulationError::BoundaryNotTorus);
        };
        if bc.triangles.len() != 2 || bc.edges.len() != 3 || bc.vertices.len() != 1 {
            return Err(TriangulationError::BoundaryNotTorus);
        }
        let triangles = [bc.triangles[0], bc.triangles[1]];
        let edges = [bc.edges[0], bc.edges[1], bc.edges[2]];
        let (t, f) = sk.triangles[triangles[0]].embeddings[0];
        let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
        // oriented boundary cycle a→b→c→a of the face
        let sides = [(vs[0], vs[1]), (vs[1], vs[2]), (vs[2], vs[0])];
        let mut coeff = [0i32; 3];
        let mut local = [(0usize, 0usize); 3];
        for &(a, b) in &sides {
            let j = edge_index(a, b);
            let class = sk.tet_edge[t][j];
            let k = edges.iter().position(|&e| e == class).ok_or(TriangulationError::BoundaryNotTorus)?;
            if coeff[k] != 0 {
                return Err(TriangulationError::BoundaryNotTorus);
            }
            coeff[k] = sk.tet_edge_sign[t][j] * if a < b { 1 } else { -1 };
            local[k] = (a, b);
        }
        let signs = [-coeff[0] * coeff[2], -coeff[1] * coeff[2], 1];
        let common = |p: (usize, usize), q: (usize, usize)| -> usize {
            if p.0 == q.0 || p.0 == q.1 {
                p.0
            } else {
                p.1
            }
        };
        let corners = [common(local[0], local[2]), common(local[1], local[2]), common(local[1], local[0])];
        Ok(BoundaryTorus { triangles, face: (t, f), edges, signs, corners })
    }

    /// Position (0 = h, 1 = v, 2 = d) of an edge class, if it is a boundary edge.
    pub fn position(&self, edge: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == edge)
    }
}
