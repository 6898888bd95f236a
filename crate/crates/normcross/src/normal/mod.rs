//! Normal surfaces: matching systems, fundamental and vertex enumeration,
//! reconstruction, and 0-efficiency.

mod dd;
mod efficiency;
mod hilbert;
mod matching;
mod surface;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::triangulation::{compute_skeleton, BoundaryTorus, Triangulation};

pub use dd::extreme_rays;
pub use efficiency::{zero_efficiency_check, EfficiencyReport, Witness, WitnessKind};
pub use hilbert::{hilbert_basis, Cone, HilbertError};
pub use matching::{matching_system, quad_separating, CoordSystem, MatchingSystem, QUAD_PAIRS};
pub use surface::{arc_count, edge_weight, edge_weights, lift_quads, reconstruct, NormalSurface, DEFAULT_DISC_CAP};

/// Default bound on intermediate generators during Hilbert basis completion.
pub const DEFAULT_HB_CAP: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalError {
    #[error(transparent)]
    Enumeration(#[from] HilbertError),
    #[error("surface has {discs} discs, above the cap of {cap}")]
    DiscCap { discs: u64, cap: u64 },
    #[error("coordinate vector has length {got}, expected {want}")]
    Length { got: usize, want: usize },
    #[error("coordinates violate the quadrilateral constraints")]
    Inadmissible,
    #[error("coordinates violate the matching equations")]
    NotMatching,
    #[error("coordinate exceeds the supported range")]
    Overflow,
}

impl NormalError {
    /// Resource exhaustion rather than bad input.
    pub fn is_abort(&self) -> bool {
        matches!(self, NormalError::Enumeration(_) | NormalError::DiscCap { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub discs: u64,
    pub generators: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { discs: DEFAULT_DISC_CAP, generators: DEFAULT_HB_CAP }
    }
}

/// Fundamental surfaces (standard) or Q-fundamental surfaces (quad).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSet {
    pub system: CoordSystem,
    pub surfaces: Vec<NormalSurface>,
    /// Quad Hilbert basis elements whose minimal lift is disconnected.
    pub disconnected_excluded: usize,
}

pub(crate) fn to_u64(v: &[BigInt]) -> Result<Vec<u64>, NormalError> {
    v.iter().map(|x| x.to_u64().ok_or(NormalError::Overflow)).collect()
}

pub fn fundamental_surfaces(
    tri: &Triangulation,
    system: CoordSystem,
    caps: Caps,
) -> Result<FundamentalSet, NormalError> {
    let sk = compute_skeleton(tri);
    let torus = BoundaryTorus::new(&sk).ok();
    let sys = matching_system(tri, &sk, system);
    let basis = hilbert_basis(&sys.cone, caps.generators)?;
    let surfaces: Vec<NormalSurface> = basis
        .par_iter()
        .map(|v| reconstruct(tri, &sk, torus.as_ref(), system, &to_u64(v)?, caps.discs))
        .collect::<Result<_, _>>()?;
    let (surfaces, excluded): (Vec<_>, Vec<_>) = match system {
        CoordSystem::Standard => (surfaces, Vec::new()),
        CoordSystem::Quad => surfaces.into_iter().partition(|s| s.connected),
    };
    Ok(FundamentalSet { system, surfaces, disconnected_excluded: excluded.len() })
}
