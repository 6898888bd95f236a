//! Slope norms, crosscap numbers and knot genus from fundamental surfaces.
//!
//! Each invariant has a `*_from` form that works on an already enumerated
//! surface list, and a wrapper that checks preconditions and enumerates.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curves::{
    decompose_curve, is_spanning_curve, primitive_class_of, slope_of, BoundaryCurveCoords, Class, CurveError, Slope,
};
use crate::farey::{distance_to_even_integral_subtree, FareyError, SlopeTable};
use crate::homology::{
    boundary_map_z2_of, geometric_framing_of, homological_longitude_of, Framing, HomologyError, Peripheral,
};
use crate::normal::{
    fundamental_surfaces, zero_efficiency_check, Caps, CoordSystem, NormalError, NormalSurface, WitnessKind,
};
use crate::triangulation::{BoundaryTorus, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error("triangulation is not {required}: found {found:?}")]
    NotEfficient { required: &'static str, found: Vec<WitnessKind> },
    #[error("edge {0} is not a boundary edge")]
    NotBoundaryEdge(usize),
    #[error("meridian {0} is not a single essential curve")]
    BadMeridian(BoundaryCurveCoords),
    #[error("framing does not send its second curve to 0 in H1(M; Z2)")]
    NotTwoTorsion,
    #[error("longitude has order {0} in H1(M); the knot is not null-homologous")]
    LongitudeOrder(u64),
    #[error("inconsistent input: no fundamental surface {0}")]
    Inconsistent(&'static str),
}

impl InvariantError {
    /// Resource exhaustion during enumeration, as opposed to bad input.
    pub fn is_abort(&self) -> bool {
        matches!(self, InvariantError::Normal(e) if e.is_abort())
    }
}

/// An integer or `+∞` (the minimum of an empty set).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(i64),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<i64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    fn min_of(it: impl IntoIterator<Item = i64>) -> Extended {
        it.into_iter().min().map_or(Extended::Infinite, Extended::Finite)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite values as numbers, `+∞` as the string `"inf"`.
impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_i64(*v),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub caps: Caps,
    /// Run the efficiency precondition check (a vertex enumeration).
    pub check_efficiency: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config { caps: Caps::default(), check_efficiency: true }
    }
}

/// How a surface relates to the meridian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceRole {
    SpanningNonOrientable,
    SpanningOrientable,
    /// A single essential boundary curve meeting the meridian more than once.
    NonSpanning,
    /// Closed, or boundary not a single essential curve.
    Other,
}

pub fn single_essential_boundary(s: &NormalSurface) -> Option<BoundaryCurveCoords> {
    match s.boundary.as_slice() {
        [c] => {
            let d = decompose_curve(*c);
            (d.trivial_count == 0 && d.components == 1).then_some(*c)
        }
        _ => None,
    }
}

pub fn classify(s: &NormalSurface, meridian: Class) -> SurfaceRole {
    match single_essential_boundary(s) {
        Some(c) if is_spanning_curve(c, meridian) => {
            if s.orientable {
                SurfaceRole::SpanningOrientable
            } else {
                SurfaceRole::SpanningNonOrientable
            }
        }
        Some(_) => SurfaceRole::NonSpanning,
        None => SurfaceRole::Other,
    }
}

/// The surface realising one term of a crosscap or norm computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceWitness {
    pub chi: i64,
    pub orientable: bool,
    pub boundary: BoundaryCurveCoords,
    pub slope: Slope,
    pub coords: Vec<u64>,
}

fn witness(s: &NormalSurface, fr: &Framing) -> Result<SurfaceWitness, InvariantError> {
    let boundary =
        single_essential_boundary(s).ok_or(InvariantError::Inconsistent("with a single essential boundary"))?;
    Ok(SurfaceWitness {
        chi: s.euler,
        orientable: s.orientable,
        boundary,
        slope: slope_of(boundary, fr)?,
        coords: s.coords.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeNormResult {
    pub slope: Slope,
    pub norm: i64,
    /// The fundamental surface `F` minimising `−χ(F) + d(∂F, δ)`.
    pub witness: SurfaceWitness,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldNorm {
    pub norm: i64,
    pub minimising_slopes: Vec<Slope>,
    pub system: CoordSystem,
}

fn check_two_torsion(p: &Peripheral, fr: &Framing) -> Result<(), InvariantError> {
    let phi = boundary_map_z2_of(p)?;
    if phi.apply(fr.first) && !phi.apply(fr.second) {
        Ok(())
    } else {
        Err(InvariantError::NotTwoTorsion)
    }
}

type BestPerSlope<'a> = Vec<(Slope, &'a NormalSurface)>;

/// Slopes of fundamental surfaces with a single essential boundary curve,
/// weighted by `−χ` (best surface per slope, smallest coordinates on ties).
fn slope_table<'a>(
    surfaces: &'a [NormalSurface],
    fr: &Framing,
) -> Result<(SlopeTable, BestPerSlope<'a>), InvariantError> {
    let mut table = SlopeTable::new();
    let mut best: Vec<(Slope, &NormalSurface)> = Vec::new();
    for s in surfaces {
        let Some(c) = single_essential_boundary(s) else {
            continue;
        };
        let slope = slope_of(c, fr)?;
        table.insert(slope, -s.euler)?;
        match best.iter_mut().find(|(t, _)| *t == slope) {
            Some(entry) if (-s.euler, &s.coords) < (-entry.1.euler, &entry.1.coords) => entry.1 = s,
            Some(_) => {}
            None => best.push((slope, s)),
        }
    }
    Ok((table, best))
}

pub fn slope_norm_from(
    surfaces: &[NormalSurface],
    fr: &Framing,
    delta: Slope,
) -> Result<SlopeNormResult, InvariantError> {
    let (table, best) = slope_table(surfaces, fr)?;
    let near = table.query(delta)?.ok_or(InvariantError::Inconsistent("with connected essential boundary"))?;
    let surface = best.iter().find(|(s, _)| *s == near.slope).expect("table and surfaces agree").1;
    Ok(SlopeNormResult { slope: delta, norm: near.value, witness: witness(surface, fr)?, distance: near.distance })
}

pub fn slope_norm_of_manifold_from(
    surfaces: &[NormalSurface],
    fr: &Framing,
    system: CoordSystem,
) -> Result<ManifoldNorm, InvariantError> {
    let (table, _) = slope_table(surfaces, fr)?;
    let norm =
        table.iter().map(|(_, w)| w).min().ok_or(InvariantError::Inconsistent("with connected essential boundary"))?;
    let minimising_slopes = table.iter().filter(|&(_, w)| w == norm).map(|(s, _)| s).collect();
    Ok(ManifoldNorm { norm, minimising_slopes, system })
}

fn require_efficiency(tri: &Triangulation, cfg: &Config, zero: bool) -> Result<(), InvariantError> {
    if !cfg.check_efficiency {
        return Ok(());
    }
    let report = zero_efficiency_check(tri, cfg.caps)?;
    let found: Vec<WitnessKind> =
        report.witnesses.iter().map(|w| w.kind).filter(|&k| zero || k != WitnessKind::Disc).collect();
    if found.is_empty() {
        Ok(())
    } else {
        let required = if zero { "0-efficient" } else { "free of normal spheres" };
        Err(InvariantError::NotEfficient { required, found })
    }
}

/// `‖δ‖` for an even slope `δ` relative to a 2-torsion framing.
pub fn slope_norm(
    tri: &Triangulation,
    fr: &Framing,
    delta: Slope,
    cfg: &Config,
) -> Result<SlopeNormResult, InvariantError> {
    let p = Peripheral::new(tri)?;
    check_two_torsion(&p, fr)?;
    if !delta.is_even() {
        return Err(FareyError::NotEven(delta).into());
    }
    require_efficiency(tri, cfg, true)?;
    let set = fundamental_surfaces(tri, CoordSystem::Standard, cfg.caps)?;
    slope_norm_from(&set.surfaces, fr, delta)
}

/// `‖M‖` and the minimising slopes, from fundamental or Q-fundamental surfaces.
pub fn slope_norm_of_manifold(
    tri: &Triangulation,
    fr: &Framing,
    system: CoordSystem,
    cfg: &Config,
) -> Result<ManifoldNorm, InvariantError> {
    let p = Peripheral::new(tri)?;
    check_two_torsion(&p, fr)?;
    require_efficiency(tri, cfg, true)?;
    let set = fundamental_surfaces(tri, system, cfg.caps)?;
    slope_norm_of_manifold_from(&set.surfaces, fr, system)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrosscapMethod {
    /// Efficient suitable triangulation, standard coordinates.
    Suitable,
    /// 0-efficient triangulation with a meridian curve, standard coordinates.
    General,
    /// 0-efficient suitable triangulation, quadrilateral coordinates.
    Quad,
}

/// Terms are `A, B, Z` for the standard methods (`Z` only for
/// [`CrosscapMethod::General`]) and `A′, B′, N′` for the quad method.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscapResult {
    pub crosscap: u64,
    pub method: CrosscapMethod,
    pub system: CoordSystem,
    pub trivial: bool,
    #[serde(rename = "A")]
    pub a: Extended,
    #[serde(rename = "B")]
    pub b: Extended,
    /// `min(1 − χ + d(∂S, F_e))` over non-spanning surfaces (general method).
    #[serde(rename = "Z", skip_serializing_if = "Option::is_none")]
    pub z: Option<Extended>,
    /// `min(1 − χ)` over non-spanning surfaces.
    #[serde(rename = "N")]
    pub n: Extended,
    /// Maximal χ of non-orientable spanning, orientable spanning and
    /// non-spanning surfaces.
    #[serde(rename = "nOr")]
    pub n_or: Option<i64>,
    pub or: Option<i64>,
    #[serde(rename = "nSp")]
    pub n_sp: Option<i64>,
    /// `N < min(A, B)`: the weaker criterion alone would be inconclusive.
    pub inconclusive_guard: bool,
    pub framing: Framing,
    pub fundamental_count: usize,
    pub witnesses: Vec<SurfaceWitness>,
}

/// Best surface per role: maximal χ, then smallest coordinates.
fn best_in<'a>(surfaces: &'a [NormalSurface], roles: &[SurfaceRole], meridian: Class) -> Option<&'a NormalSurface> {
    surfaces
        .iter()
        .filter(|s| roles.contains(&classify(s, meridian)))
        .min_by(|x, y| (-x.euler, &x.coords).cmp(&(-y.euler, &y.coords)))
}

/// Crosscap number and its terms from an enumerated surface list.
pub fn crosscap_from(
    surfaces: &[NormalSurface],
    method: CrosscapMethod,
    meridian: Class,
    fr: &Framing,
) -> Result<CrosscapResult, InvariantError> {
    use SurfaceRole::*;
    let non_or = best_in(surfaces, &[SpanningNonOrientable], meridian);
    let or = best_in(surfaces, &[SpanningOrientable], meridian);
    let non_sp = best_in(surfaces, &[NonSpanning], meridian);
    let a = Extended::min_of(non_or.map(|s| 1 - s.euler));
    let b = Extended::min_of(or.map(|s| 2 - s.euler));
    let n = Extended::min_of(non_sp.map(|s| 1 - s.euler));

    let mut z_witness = None;
    let z = if method == CrosscapMethod::General {
        let mut terms = Vec::new();
        for s in surfaces.iter().filter(|s| classify(s, meridian) == NonSpanning) {
            let slope = slope_of(single_essential_boundary(s).expect("non-spanning has one curve"), fr)?;
            let term = 1 - s.euler + distance_to_even_integral_subtree(slope)? as i64;
            terms.push((term, s));
        }
        let best = terms.iter().min_by(|x, y| (x.0, &x.1.coords).cmp(&(y.0, &y.1.coords)));
        z_witness = best.map(|b| b.1);
        Some(Extended::min_of(best.map(|b| b.0)))
    } else {
        None
    };

    let spanning = [non_or, or].into_iter().flatten().max_by_key(|s| s.euler);
    let x = spanning.map(|s| s.euler);
    let trivial = x == Some(1);
    let crosscap = match method {
        // Algorithm 2: read off the best spanning surface
        CrosscapMethod::Suitable => match (x, non_or) {
            (None, _) => return Err(InvariantError::Inconsistent("spanning the knot")),
            (Some(1), _) => 0,
            (Some(0), _) => 1,
            (Some(x), Some(s)) if s.euler == x => 1 - x,
            (Some(x), _) => 2 - x,
        },
        CrosscapMethod::General | CrosscapMethod::Quad if trivial => 0,
        _ => {
            let m = a.min(b).min(z.unwrap_or(Extended::Infinite));
            m.finite().ok_or(InvariantError::Inconsistent("spanning the knot"))?
        }
    }
    .try_into()
    .map_err(|_| InvariantError::Inconsistent("of positive genus"))?;

    let mut witnesses = Vec::new();
    for s in [non_or, or, non_sp, z_witness].into_iter().flatten() {
        let w = witness(s, fr)?;
        if !witnesses.contains(&w) {
            witnesses.push(w);
        }
    }
    Ok(CrosscapResult {
        crosscap,
        method,
        system: if method == CrosscapMethod::Quad { CoordSystem::Quad } else { CoordSystem::Standard },
        trivial,
        a,
        b,
        z,
        n,
        n_or: a.finite().map(|v| 1 - v),
        or: b.finite().map(|v| 2 - v),
        n_sp: n.finite().map(|v| 1 - v),
        inconclusive_guard: n < a.min(b),
        framing: *fr,
        fundamental_count: surfaces.len(),
        witnesses,
    })
}

/// Class `E_h`, `E_v` or `E_d` of a boundary edge.
pub fn edge_class(torus: &BoundaryTorus, edge: usize) -> Result<Class, InvariantError> {
    match torus.position(edge) {
        Some(0) => Ok([1, 0]),
        Some(1) => Ok([0, 1]),
        Some(_) => Ok([1, 1]),
        None => Err(InvariantError::NotBoundaryEdge(edge)),
    }
}

pub fn meridian_class(coords: BoundaryCurveCoords) -> Result<Class, InvariantError> {
    let d = decompose_curve(coords);
    if d.trivial_count != 0 || d.components != 1 {
        return Err(InvariantError::BadMeridian(coords));
    }
    Ok(primitive_class_of(coords)?)
}

/// Algorithm 2 on an efficient suitable triangulation.
pub fn crosscap_suitable(
    tri: &Triangulation,
    meridian_edge: usize,
    cfg: &Config,
) -> Result<CrosscapResult, InvariantError> {
    let p = Peripheral::new(tri)?;
    let m = edge_class(&p.torus, meridian_edge)?;
    let fr = geometric_framing_of(&p, m)?;
    require_efficiency(tri, cfg, false)?;
    let set = fundamental_surfaces(tri, CoordSystem::Standard, cfg.caps)?;
    crosscap_from(&set.surfaces, CrosscapMethod::Suitable, m, &fr)
}

/// `min(A, B, Z)` on a 0-efficient triangulation with a meridian curve.
pub fn crosscap_general(
    tri: &Triangulation,
    meridian: BoundaryCurveCoords,
    cfg: &Config,
) -> Result<CrosscapResult, InvariantError> {
    let p = Peripheral::new(tri)?;
    let m = meridian_class(meridian)?;
    let fr = geometric_framing_of(&p, m)?;
    require_efficiency(tri, cfg, true)?;
    let set = fundamental_surfaces(tri, CoordSystem::Standard, cfg.caps)?;
    crosscap_from(&set.surfaces, CrosscapMethod::General, m, &fr)
}

/// `min(A′, B′)` from Q-fundamental surfaces on a 0-efficient suitable
/// triangulation, with `N′` and the guard flag as diagnostics.
pub fn crosscap_quad(
    tri: &Triangulation,
    meridian_edge: usize,
    cfg: &Config,
) -> Result<CrosscapResult, InvariantError> {
    let p = Peripheral::new(tri)?;
    let m = edge_class(&p.torus, meridian_edge)?;
    let fr = geometric_framing_of(&p, m)?;
    require_efficiency(tri, cfg, true)?;
    let set = fundamental_surfaces(tri, CoordSystem::Quad, cfg.caps)?;
    crosscap_from(&set.surfaces, CrosscapMethod::Quad, m, &fr)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub genus: u64,
    pub trivial: bool,
    pub witness: SurfaceWitness,
}

pub fn knot_genus_from(
    surfaces: &[NormalSurface],
    meridian: Class,
    fr: &Framing,
) -> Result<GenusResult, InvariantError> {
    let s = best_in(surfaces, &[SurfaceRole::SpanningOrientable], meridian)
        .ok_or(InvariantError::Inconsistent("that is an orientable spanning surface"))?;
    let genus = u64::try_from((1 - s.euler) / 2).map_err(|_| InvariantError::Inconsistent("of genus ≥ 0"))?;
    Ok(GenusResult { genus, trivial: genus == 0, witness: witness(s, fr)? })
}

/// Genus of a null-homologous knot from its orientable fundamental spanning surfaces.
pub fn knot_genus(tri: &Triangulation, meridian: Class, cfg: &Config) -> Result<GenusResult, InvariantError> {
    let p = Peripheral::new(tri)?;
    let order = homological_longitude_of(&p)?.order;
    if order != 1 {
        return Err(InvariantError::LongitudeOrder(order));
    }
    let fr = geometric_framing_of(&p, meridian)?;
    require_efficiency(tri, cfg, true)?;
    let set = fundamental_surfaces(tri, CoordSystem::Standard, cfg.caps)?;
    knot_genus_from(&set.surfaces, meridian, &fr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_orders_infinity_last() {
        assert!(Extended::Finite(i64::MAX) < Extended::Infinite);
        assert_eq!(Extended::min_of([]), Extended::Infinite);
        assert_eq!(serde_json::to_string(&Extended::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Extended::Finite(-3)).unwrap(), "-3");
    }
}
