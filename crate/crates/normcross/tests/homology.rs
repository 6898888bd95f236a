mod common;

use normcross::curves::det;
use normcross::homology::{
    boundary_map_z2, geometric_framing, homological_longitude, smith_normal_form, two_torsion_framing, Peripheral, H1,
};
use normcross::invariants::edge_class;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn minor(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> i64 {
    if rows.len() == 1 {
        return m[rows[0]][cols[0]];
    }
    let rest: Vec<usize> = rows[1..].to_vec();
    (0..cols.len())
        .map(|j| {
            let sub: Vec<usize> = cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &c)| c).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[rows[0]][cols[j]] * minor(m, &rest, &sub)
        })
        .sum()
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            choose(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Invariant factors from determinantal divisors: `d_k = gcd` of the
/// `k × k` minors and `s_k = d_k / d_{k−1}`.
fn invariant_factors(m: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=m.len().min(cols) {
        let d = choose(m.len(), k)
            .iter()
            .flat_map(|r| choose(cols, k).into_iter().map(move |c| (r.clone(), c)))
            .fold(0i64, |g, (r, c)| g.gcd(&minor(m, &r, &c)));
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out.resize(cols, 0);
    out
}

proptest! {
    #[test]
    fn smith_form_matches_determinantal_divisors(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-6i64..=6, 16),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&big, cols);
        let got: Vec<i64> = snf.diagonal.iter().map(|d| i64::try_from(d).unwrap()).collect();
        prop_assert_eq!(got, invariant_factors(&m, cols));
    }
}

#[test]
fn knot_exteriors_have_infinite_cyclic_homology() {
    for f in common::manifest() {
        let (tri, _) = common::load(&f.name);
        let h = H1::compute(&tri).unwrap();
        assert_eq!(h.betti(), 1, "{}", f.name);
        assert!(h.torsion().is_empty(), "{}", f.name);
        assert_eq!(h.to_string(), "Z");
    }
}

#[test]
fn two_torsion_framing_properties() {
    for f in common::manifest() {
        let (tri, _) = common::load(&f.name);
        let fr = two_torsion_framing(&tri).unwrap();
        let phi = boundary_map_z2(&tri).unwrap();
        assert!(phi.apply(fr.first) && !phi.apply(fr.second), "{}", f.name);
        assert_eq!(det(fr.first, fr.second), 1);
        // exactly one of the three edges is even
        assert_eq!(phi.images.iter().filter(|&&x| !x).count(), 1);
    }
}

#[test]
fn geometric_framing_of_a_knot_in_the_sphere() {
    for f in common::manifest() {
        let (tri, e) = common::load(&f.name);
        let p = Peripheral::new(&tri).unwrap();
        let m = edge_class(&p.torus, e).unwrap();
        let fr = geometric_framing(&tri, m).unwrap();
        let lon = homological_longitude(&tri).unwrap();
        assert_eq!(lon.order, 1, "{}", f.name);
        assert_eq!(fr.first, m);
        assert_eq!(det(fr.first, fr.second), 1);
        // the longitude bounds, so it is the geometric longitude up to sign
        assert!(fr.second == lon.class || fr.second == [-lon.class[0], -lon.class[1]], "{}", f.name);
        assert!(p.odd(m));
        assert!(!p.odd(lon.class));
    }
}

#[test]
fn meridian_must_be_primitive_and_odd() {
    let (tri, e) = common::load("figure8");
    let p = Peripheral::new(&tri).unwrap();
    let m = edge_class(&p.torus, e).unwrap();
    assert!(geometric_framing(&tri, [2 * m[0], 2 * m[1]]).is_err());
    let lon = homological_longitude(&tri).unwrap().class;
    assert!(geometric_framing(&tri, lon).is_err());
}
