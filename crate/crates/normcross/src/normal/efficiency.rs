use rayon::prelude::*;
use serde::Serialize;

use super::{extreme_rays, matching_system, reconstruct, to_u64, Caps, CoordSystem, NormalError};
use crate::triangulation::{compute_skeleton, BoundaryTorus, Triangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Sphere,
    /// A one-sided projective plane; its double is a normal sphere.
    ProjectivePlane,
    Disc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub coords: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficiencyReport {
    pub vertex_surfaces: usize,
    pub no_normal_spheres: bool,
    pub zero_efficient: bool,
    pub witnesses: Vec<Witness>,
}

/// Scans the admissible vertex surfaces in standard coordinates: a normal
/// sphere or a non-vertex-linking normal disc exists iff one (or its
/// double) appears among them.
pub fn zero_efficiency_check(tri: &Triangulation, caps: Caps) -> Result<EfficiencyReport, NormalError> {
    let sk = compute_skeleton(tri);
    let torus = BoundaryTorus::new(&sk).ok();
    let sys = matching_system(tri, &sk, CoordSystem::Standard);
    let rays = extreme_rays(&sys.cone, caps.generators)?;
    let found: Vec<Option<Witness>> = rays
        .par_iter()
        .map(|r| {
            let coords = to_u64(r)?;
            let s = reconstruct(tri, &sk, torus.as_ref(), CoordSystem::Standard, &coords, caps.discs)?;
            let kind = match (s.connected, s.is_closed(), s.euler) {
                (true, true, 2) => Some(WitnessKind::Sphere),
                (true, true, 1) => Some(WitnessKind::ProjectivePlane),
                (true, false, 1) if !s.is_vertex_linking => Some(WitnessKind::Disc),
                _ => None,
            };
            Ok(kind.map(|kind| Witness { kind, coords }))
        })
        .collect::<Result<_, NormalError>>()?;
    let witnesses: Vec<Witness> = found.into_iter().flatten().collect();
    Ok(EfficiencyReport {
        vertex_surfaces: rays.len(),
        no_normal_spheres: !witnesses.iter().any(|w| w.kind != WitnessKind::Disc),
        zero_efficient: witnesses.is_empty(),
        witnesses,
    })
}
