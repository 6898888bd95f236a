use serde::{Deserialize, Serialize};

use super::HomologyError;
use crate::normal::{quad_separating, reconstruct, CoordSystem, NormalError, NormalSurface, DEFAULT_DISC_CAP};
use crate::triangulation::{compute_skeleton, edge_index, BoundaryTorus, Skeleton, Triangulation, EDGE_VERTICES};

/// One bit per edge class, summing to zero around every triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Z2Labelling(pub Vec<bool>);

impl Z2Labelling {
    pub fn validate(&self, sk: &Skeleton) -> Result<(), HomologyError> {
        if self.0.len() != sk.edges.len() {
            return Err(HomologyError::LabellingLength { got: self.0.len(), want: sk.edges.len() });
        }
        for (i, tc) in sk.triangles.iter().enumerate() {
            let (t, f) = tc.embeddings[0];
            let vs: Vec<usize> = (0..4).filter(|&v| v != f).collect();
            let odd = [(0, 1), (1, 2), (0, 2)]
                .iter()
                .filter(|&&(a, b)| self.0[sk.tet_edge[t][edge_index(vs[a], vs[b])]])
                .count()
                % 2;
            if odd == 1 {
                return Err(HomologyError::LabellingNotCocycle(i));
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    #[error(transparent)]
    Labelling(#[from] HomologyError),
    #[error("tetrahedron {0}: edge bits realise no normal disc")]
    NoPattern(usize),
    #[error(transparent)]
    Surface(#[from] NormalError),
}

/// The surface with a corner on exactly the 1-labelled edges: at most one
/// triangle or one quad per tetrahedron.
pub fn canonical_z2_surface(tri: &Triangulation, lab: &Z2Labelling) -> Result<NormalSurface, CanonicalError> {
    let sk = compute_skeleton(tri);
    lab.validate(&sk)?;
    let n = tri.size();
    let mut coords = vec![0u64; 7 * n];
    for t in 0..n {
        let bits: [bool; 6] = std::array::from_fn(|j| lab.0[sk.tet_edge[t][j]]);
        let ones = bits.iter().filter(|&&b| b).count();
        let slot = match ones {
            0 => None,
            3 => (0..4)
                .find(|&v| EDGE_VERTICES.iter().enumerate().all(|(j, e)| bits[j] == e.contains(&v)))
                .map(Some)
                .ok_or(CanonicalError::NoPattern(t))?,
            4 => {
                let zero: Vec<usize> = (0..6).filter(|&j| !bits[j]).collect();
                let [a, b] = EDGE_VERTICES[zero[0]];
                let [c, d] = EDGE_VERTICES[zero[1]];
                if [a, b, c, d].iter().collect::<std::collections::BTreeSet<_>>().len() != 4 {
                    return Err(CanonicalError::NoPattern(t));
                }
                Some(4 + quad_separating(a, b))
            }
            _ => return Err(CanonicalError::NoPattern(t)),
        };
        if let Some(s) = slot {
            coords[7 * t + s] = 1;
        }
    }
    let torus = BoundaryTorus::new(&sk).ok();
    Ok(reconstruct(tri, &sk, torus.as_ref(), CoordSystem::Standard, &coords, DEFAULT_DISC_CAP)?)
}
