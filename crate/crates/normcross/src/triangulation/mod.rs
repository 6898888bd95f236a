//! Singular triangulations of 3-manifolds with torus boundary.
//!
//! A [`Triangulation`] is a list of tetrahedra whose faces are either on the
//! boundary or glued to a face of some (possibly the same) tetrahedron by a
//! permutation of vertex labels.  Everything else — vertex, edge and
//! triangle classes, orientability, the induced boundary torus — lives in
//! [`Skeleton`] and [`BoundaryTorus`].

mod isosig;
mod layering;
mod perm;
mod skeleton;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use layering::{layer_on_boundary_edge, Layered};
pub use perm::{Perm4, S4};
pub use skeleton::{
    compute_skeleton, validate_knot_exterior, BoundaryTorus, Diagnostic, EdgeClass, ExteriorReport, Skeleton,
    TriangleClass, VertexClass,
};

/// Vertex pairs of the six edges of a tetrahedron, in the standard order.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Local edge index joining vertices `a` and `b` (`a != b`).
pub fn edge_index(a: usize, b: usize) -> usize {
    const TABLE: [[usize; 4]; 4] =
        [[usize::MAX, 0, 1, 2], [0, usize::MAX, 3, 4], [1, 3, usize::MAX, 5], [2, 4, 5, usize::MAX]];
    debug_assert!(a != b);
    TABLE[a][b]
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("malformed triangulation document: {0}")]
    Malformed(String),
    #[error("malformed isomorphism signature: {0}")]
    IsoSig(String),
    #[error("invalid permutation {0:?}")]
    BadPermutation(String),
    #[error("tetrahedron {tet}: gluing target {target} out of range")]
    TargetOutOfRange { tet: usize, target: usize },
    #[error("face index {0} out of range")]
    FaceOutOfRange(usize),
    #[error("non-involutive gluing at tetrahedron {tet}, face {face}")]
    NonInvolutive { tet: usize, face: usize },
    #[error("face {face} of tetrahedron {tet} is glued to itself")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("edge {0} is not a boundary edge")]
    NotBoundaryEdge(usize),
    #[error("boundary is not a one-vertex two-triangle torus")]
    BoundaryNotTorus,
}

/// Where a face goes: the target tetrahedron, and the permutation carrying
/// this tetrahedron's vertex labels to the target's.  Face `f` lands on
/// face `perm(f)` of the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

#[derive(Serialize, Deserialize)]
struct GluingTableDoc {
    tets: usize,
    gluings: Vec<Vec<Option<(usize, String)>>>,
}

impl Triangulation {
    /// Builds a triangulation, checking that targets exist, that each
    /// permutation maps the face to a face and that gluings are involutive.
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self, TriangulationError> {
        let n = gluings.len();
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(TriangulationError::TargetOutOfRange { tet: t, target: g.tet });
                }
                let f2 = g.perm.apply(f);
                if g.tet == t && f2 == f {
                    return Err(TriangulationError::SelfGluedFace { tet: t, face: f });
                }
                match gluings[g.tet][f2] {
                    Some(back) if back.tet == t && back.perm == g.perm.inverse() => {}
                    _ => return Err(TriangulationError::NonInvolutive { tet: t, face: f }),
                }
            }
        }
        Ok(Triangulation { gluings })
    }

    /// `n` tetrahedra with every face on the boundary.
    pub fn free(n: usize) -> Self {
        Triangulation { gluings: vec![[None; 4]; n] }
    }

    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    /// Parses either a gluing-table JSON document or an isomorphism
    /// signature (anything not starting with `{`).
    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            Self::from_json(trimmed)
        } else {
            Self::from_isosig(trimmed)
        }
    }

    pub fn from_json(text: &str) -> Result<Self, TriangulationError> {
        let doc: GluingTableDoc =
            serde_json::from_str(text).map_err(|e| TriangulationError::Malformed(e.to_string()))?;
        if doc.gluings.len() != doc.tets {
            return Err(TriangulationError::Malformed(format!(
                "declared {} tetrahedra but {} gluing rows",
                doc.tets,
                doc.gluings.len()
            )));
        }
        let mut gluings = Vec::with_capacity(doc.tets);
        for row in doc.gluings {
            if row.len() != 4 {
                return Err(TriangulationError::FaceOutOfRange(row.len()));
            }
            let mut faces = [None; 4];
            for (slot, entry) in faces.iter_mut().zip(row) {
                if let Some((tet, perm)) = entry {
                    *slot = Some(Gluing { tet, perm: Perm4::from_digits(&perm)? });
                }
            }
            gluings.push(faces);
        }
        Triangulation::new(gluings)
    }

    pub fn to_json(&self) -> String {
        let doc = GluingTableDoc {
            tets: self.size(),
            gluings: self
                .gluings
                .iter()
                .map(|faces| faces.iter().map(|g| g.map(|g| (g.tet, g.perm.to_digits()))).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("gluing table serialises")
    }

    pub fn from_isosig(sig: &str) -> Result<Self, TriangulationError> {
        isosig::decode(sig)
    }

    /// Appends a tetrahedron with all faces on the boundary, returning its index.
    pub(crate) fn push_free(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    /// Glues face `face` of `tet` by `g`, together with the inverse gluing.
    /// Both faces must currently be boundary.
    pub(crate) fn join(&mut self, tet: usize, face: usize, g: Gluing) {
        let f2 = g.perm.apply(face);
        debug_assert!(self.gluings[tet][face].is_none() && self.gluings[g.tet][f2].is_none());
        self.gluings[tet][face] = Some(g);
        self.gluings[g.tet][f2] = Some(Gluing { tet, perm: g.perm.inverse() });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_free_tetrahedron_parses() {
        let t = Triangulation::parse(r#"{"tets":1,"gluings":[[null,null,null,null]]}"#).unwrap();
        assert_eq!(t.size(), 1);
        assert!(t.gluing(0, 0).is_none());
    }

    #[test]
    fn non_involutive_gluing_is_rejected() {
        let doc = r#"{"tets":2,"gluings":[[[1,"0123"],null,null,null],[null,[0,"1023"],null,null]]}"#;
        assert!(matches!(Triangulation::from_json(doc), Err(TriangulationError::NonInvolutive { .. })));
    }

    #[test]
    fn json_round_trip() {
        let doc = r#"{"tets":2,"gluings":[[[1,"0123"],[1,"0123"],[1,"0123"],[1,"0123"]],[[0,"0123"],[0,"0123"],[0,"0123"],[0,"0123"]]]}"#;
        let t = Triangulation::from_json(doc).unwrap();
        assert_eq!(Triangulation::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn malformed_documents_are_errors() {
        assert!(Triangulation::from_json(r#"{"tets":2,"gluings":[[null,null,null,null]]}"#).is_err());
        assert!(Triangulation::from_json(r#"{"tets":1,"gluings":[[null,null,null]]}"#).is_err());
        assert!(Triangulation::from_json(r#"{"tets":1,"gluings":[[[3,"0123"],null,null,null]]}"#).is_err());
        assert!(Triangulation::from_json("{not json").is_err());
    }

    #[test]
    fn edge_index_inverts_edge_vertices() {
        for (i, [a, b]) in EDGE_VERTICES.iter().enumerate() {
            assert_eq!(edge_index(*a, *b), i);
            assert_eq!(edge_index(*b, *a), i);
        }
    }
}
