mod common;

use common::hilbert_oracle::{box_bound, box_size, brute_force_basis, extreme_rays as oracle_rays, small_cone};
use normcross::normal::{
    extreme_rays, fundamental_surfaces, hilbert_basis, matching_system, reconstruct, Caps, Cone, CoordSystem,
    DEFAULT_DISC_CAP,
};
use normcross::triangulation::{compute_skeleton, BoundaryTorus};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

fn to_i64(v: Vec<Vec<BigInt>>) -> Vec<Vec<i64>> {
    v.into_iter().map(|x| x.into_iter().map(|b| i64::try_from(b).unwrap()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn hilbert_basis_matches_brute_force(cone in small_cone()) {
        prop_assume!(box_size(&box_bound(cone.columns, &cone.equations)) <= 300_000);
        let got = to_i64(hilbert_basis(&cone, 1_000_000).unwrap());
        let want = brute_force_basis(cone.columns, &cone.equations, &cone.exclusive);
        prop_assert_eq!(got, want);
    }

    #[test]
    fn extreme_rays_match_minimal_supports(cone in small_cone()) {
        let plain = Cone { exclusive: vec![], ..cone.clone() };
        let got = to_i64(extreme_rays(&plain, 1_000_000).unwrap());
        prop_assert_eq!(got, oracle_rays(cone.columns, &cone.equations));
    }
}

#[test]
fn fundamental_counts() {
    // independent enumeration of the same triangulations gave these counts
    for (name, std, quad) in [("trefoil", 16, 11), ("figure8", 108, 69)] {
        let (tri, _) = common::load(name);
        let s = fundamental_surfaces(&tri, CoordSystem::Standard, Caps::default()).unwrap();
        let q = fundamental_surfaces(&tri, CoordSystem::Quad, Caps::default()).unwrap();
        assert_eq!(s.surfaces.len(), std, "{name}");
        assert_eq!(q.surfaces.len() + q.disconnected_excluded, quad, "{name}");
    }
}

#[test]
fn trefoil_has_a_mobius_band() {
    let (tri, _) = common::load("trefoil");
    let s = fundamental_surfaces(&tri, CoordSystem::Standard, Caps::default()).unwrap();
    assert!(s.surfaces.iter().any(|f| f.euler == 0 && !f.orientable && f.connected && f.boundary.len() == 1));
}

#[test]
fn figure8_has_a_punctured_torus() {
    let (tri, _) = common::load("figure8");
    let s = fundamental_surfaces(&tri, CoordSystem::Standard, Caps::default()).unwrap();
    assert!(s.surfaces.iter().any(|f| f.euler == -1 && f.orientable && f.connected && !f.is_closed()));
}

#[test]
fn vertex_link_is_fundamental() {
    for name in ["trefoil", "figure8"] {
        let (tri, _) = common::load(name);
        let s = fundamental_surfaces(&tri, CoordSystem::Standard, Caps::default()).unwrap();
        let links: Vec<_> = s.surfaces.iter().filter(|f| f.is_vertex_linking).collect();
        assert_eq!(links.len(), 1, "{name}");
        // the link of the boundary vertex is a disc bounded by a trivial curve
        assert_eq!(links[0].euler, 1);
        assert_eq!(links[0].boundary[0].0, [1, 1, 1]);
    }
}

#[test]
fn quad_surfaces_lift_to_standard_solutions() {
    let (tri, _) = common::load("figure8");
    let sk = compute_skeleton(&tri);
    let std_cone = matching_system(&tri, &sk, CoordSystem::Standard).cone;
    let q = fundamental_surfaces(&tri, CoordSystem::Quad, Caps::default()).unwrap();
    for f in &q.surfaces {
        let x: Vec<BigInt> = f.standard.iter().map(|&v| BigInt::from(v)).collect();
        assert!(std_cone.contains(&x) && std_cone.is_admissible(&x));
        assert!(f.connected);
    }
}

#[test]
fn disc_cap_aborts() {
    let (tri, _) = common::load("figure8");
    let err = fundamental_surfaces(&tri, CoordSystem::Standard, Caps { discs: 2, generators: 1_000_000 }).unwrap_err();
    assert!(err.is_abort());
}

/// Standard fundamental coordinates of the two small fixtures, computed once.
fn bases() -> &'static [Vec<Vec<u64>>; 2] {
    static BASES: OnceLock<[Vec<Vec<u64>>; 2]> = OnceLock::new();
    BASES.get_or_init(|| {
        ["trefoil", "figure8"].map(|name| {
            let (tri, _) = common::load(name);
            let fs = fundamental_surfaces(&tri, CoordSystem::Standard, Caps::default()).unwrap();
            fs.surfaces.into_iter().map(|f| f.coords).collect()
        })
    })
}

/// Sums of nonnegative combinations of fundamental surfaces.
fn combination(basis: &[Vec<u64>], picks: &[(usize, u64)]) -> Vec<u64> {
    let mut x = vec![0; basis[0].len()];
    for &(i, c) in picks {
        for (a, b) in x.iter_mut().zip(&basis[i % basis.len()]) {
            *a += c * b;
        }
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn euler_and_weight_are_additive(
        fixture in 0usize..2,
        xs in prop::collection::vec((0usize..200, 1u64..=2), 1..=3),
        ys in prop::collection::vec((0usize..200, 1u64..=2), 1..=3),
    ) {
        let (tri, _) = common::load(["trefoil", "figure8"][fixture]);
        let sk = compute_skeleton(&tri);
        let torus = BoundaryTorus::new(&sk).ok();
        let cone = matching_system(&tri, &sk, CoordSystem::Standard).cone;
        let basis = &bases()[fixture];
        let (x, y) = (combination(basis, &xs), combination(basis, &ys));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assume!(cone.is_admissible(&sum));
        let build = |v: &[u64]| reconstruct(&tri, &sk, torus.as_ref(), CoordSystem::Standard, v, DEFAULT_DISC_CAP).unwrap();
        let (sx, sy, ss) = (build(&x), build(&y), build(&sum));
        prop_assert_eq!(ss.euler, sx.euler + sy.euler);
        prop_assert_eq!(ss.weight, sx.weight + sy.weight);
        prop_assert_eq!(ss.q_weight, sx.q_weight + sy.q_weight);
    }
}
