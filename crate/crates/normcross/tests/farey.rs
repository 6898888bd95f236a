mod common;

use common::flip_graph::{even_slopes, FlipGraph};
use normcross::curves::Slope;
use normcross::farey::{
    canonical_triangle, distance_to_even_integral_subtree, farey_distance, layering_sequence, path_between,
    FareyTriangle, FlipInstruction,
};
use proptest::prelude::*;

fn s(text: &str) -> Slope {
    text.parse().unwrap()
}

#[test]
fn canonical_triangle_examples() {
    assert_eq!(canonical_triangle(s("0/1")).slopes, [s("1/0"), s("0/1"), s("-1/1")]);
    assert_eq!(canonical_triangle(s("2/3")).slopes, [s("2/3"), s("1/2"), s("1/1")]);
    assert!(canonical_triangle(s("1/0")).is_base());
}

#[test]
fn canonical_triangle_is_a_mediant_split() {
    for q in 1..=25 {
        for p in -60..=60 {
            let a = Slope::new(p, q).unwrap();
            let t = canonical_triangle(a);
            assert!(t.contains(a));
            assert!(t.slopes.iter().filter(|x| x.is_even()).count() == 1);
            if !t.is_base() {
                let [w, b, c] = t.slopes;
                assert_eq!(w, a);
                assert!(b.is_neighbour(&c));
                assert!(b.mediant(&c) == a || Slope::new(b.p - c.p, b.q - c.q) == Some(a));
            }
        }
    }
}

#[test]
fn small_distances() {
    assert_eq!(farey_distance(s("0"), s("0")).unwrap(), 0);
    assert_eq!(farey_distance(s("0"), s("2")).unwrap(), 1);
    assert_eq!(farey_distance(s("0"), s("2/3")).unwrap(), 1);
    assert_eq!(distance_to_even_integral_subtree(s("2/3")).unwrap(), 1);
    assert_eq!(distance_to_even_integral_subtree(s("-4")).unwrap(), 0);
    assert_eq!(distance_to_even_integral_subtree(s("32/7")).unwrap(), 2);
    assert!(farey_distance(s("1/2"), s("0")).is_err());
    assert!(distance_to_even_integral_subtree(s("1/0")).is_err());
}

#[test]
fn distances_match_the_flip_graph_search() {
    let g = FlipGraph::build();
    let slopes = even_slopes();
    let n = slopes.len();
    let mut d = vec![vec![0u64; n]; n];
    for (i, &a) in slopes.iter().enumerate() {
        let oracle = g.saddles_from(|t| t.even_slope() == a);
        for (j, &b) in slopes.iter().enumerate() {
            let want =
                (0..g.triangles.len()).filter(|&k| g.triangles[k].even_slope() == b).map(|k| oracle[k]).min().unwrap();
            d[i][j] = farey_distance(a, b).unwrap();
            assert_eq!(d[i][j], want, "d({a}, {b})");
        }
        let to_fe =
            (0..g.triangles.len()).filter(|&k| g.triangles[k].even_slope().q == 1).map(|k| oracle[k]).min().unwrap();
        assert_eq!(distance_to_even_integral_subtree(a).unwrap(), to_fe, "d({a}, F_e)");
    }
    for i in 0..n {
        assert_eq!(d[i][i], 0);
        for j in 0..n {
            assert_eq!(d[i][j], d[j][i]);
            for k in 0..n {
                assert!(d[i][k] <= d[i][j] + d[j][k]);
            }
        }
    }
}

#[test]
fn subtree_distance_is_nearest_even_integer() {
    for a in even_slopes() {
        let bound = 2 + a.p.abs() / a.q;
        let oracle = (-bound..=bound).map(|k| farey_distance(a, Slope::integer(2 * k)).unwrap()).min().unwrap();
        assert_eq!(distance_to_even_integral_subtree(a).unwrap(), oracle, "{a}");
    }
}

/// Other triangles with even slope `a`: pivot around `a` a few times each way.
fn pivots(a: Slope) -> Vec<FareyTriangle> {
    let t = canonical_triangle(a);
    let mut out = vec![t];
    for start in t.slopes.iter().filter(|&&x| x != a) {
        let mut cur = t;
        let mut drop = *start;
        for _ in 0..4 {
            let next = cur.flip(drop).unwrap();
            let kept = *cur.slopes.iter().find(|&&x| x != a && x != drop).unwrap();
            assert_eq!(next.even_slope(), a);
            assert_eq!(path_between(&cur, &next).saddle_count, 0);
            out.push(next);
            // keep turning the same way around `a`
            drop = kept;
            cur = next;
        }
    }
    out
}

#[test]
fn distance_is_independent_of_representatives() {
    let slopes: Vec<Slope> = even_slopes().into_iter().filter(|x| x.q <= 9).collect();
    for &a in &slopes {
        let ta = pivots(a);
        for &b in &slopes {
            let want = farey_distance(a, b).unwrap();
            for x in &ta {
                for y in pivots(b).iter().take(3) {
                    assert_eq!(path_between(x, y).saddle_count, want, "{a} {b}");
                }
            }
        }
    }
}

#[test]
fn layering_sequence_examples() {
    let t = FareyTriangle::new(s("1/0"), s("0/1"), s("1/1")).unwrap();
    assert_eq!(layering_sequence(&t, s("2/1")), vec![FlipInstruction { edge_slope: s("0/1") }]);
    assert_eq!(layering_sequence(&FareyTriangle::base(), s("2/1")).len(), 2);
    assert!(layering_sequence(&t, s("1/1")).is_empty());
    let json = serde_json::to_string(&layering_sequence(&t, s("2/1"))).unwrap();
    assert_eq!(json, r#"[{"edge_slope":"0/1"}]"#);
}

#[test]
fn layering_sequences_are_shortest() {
    let g = FlipGraph::build();
    let starts = [FareyTriangle::base(), canonical_triangle(s("3/5")), canonical_triangle(s("-4/7"))];
    for start in starts {
        let dist = g.flips_from(&start);
        for q in 1..=12 {
            for p in -q..=q {
                let Some(target) = Slope::new(p, q) else {
                    continue;
                };
                let seq = layering_sequence(&start, target);
                let mut cur = start;
                for f in &seq {
                    cur = cur.flip(f.edge_slope).unwrap();
                }
                assert!(cur.contains(target));
                let best = (0..g.triangles.len()).filter(|&k| g.triangles[k].contains(target)).map(|k| dist[k]).min();
                assert_eq!(Some(seq.len() as u64), best, "{target}");
            }
        }
    }
}

proptest! {
    #[test]
    fn paths_do_not_backtrack(p1 in -200i64..200, q1 in 1i64..60, p2 in -200i64..200, q2 in 1i64..60) {
        let (a, b) = (Slope::new(p1, q1).unwrap(), Slope::new(p2, q2).unwrap());
        let path = path_between(&canonical_triangle(a), &canonical_triangle(b));
        prop_assert!(path.saddle_count as usize <= path.len());
        for w in path.triangles.windows(3) {
            prop_assert!(w[0] != w[2]);
        }
        for w in path.triangles.windows(2) {
            prop_assert_eq!(w[0].slopes.iter().filter(|x| w[1].contains(**x)).count(), 2);
        }
    }

    #[test]
    fn distance_is_symmetric(p1 in -100i64..100, q1 in 1i64..40, p2 in -100i64..100, q2 in 1i64..40) {
        let a = Slope::new(2 * p1, 2 * q1 + 1).unwrap();
        let b = Slope::new(2 * p2, 2 * q2 + 1).unwrap();
        prop_assert_eq!(farey_distance(a, b).unwrap(), farey_distance(b, a).unwrap());
    }
}
