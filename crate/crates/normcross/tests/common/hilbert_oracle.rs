//! Brute-force Hilbert bases for small cones `{x ≥ 0, A·x = 0}`.
//!
//! Extreme rays are found as nonnegative kernel vectors with one-dimensional
//! kernel on their support.  Every irreducible element is either a ray or a
//! fractional combination of rays, so coordinate `j` of any irreducible is
//! at most the sum of coordinate `j` over all rays; the box below that bound
//! is searched exhaustively.

use normcross::normal::Cone;
use num_integer::Integer;
use proptest::prelude::*;

/// Exact rational kernel of `a` restricted to columns `cols`; returns a
/// primitive integer vector when the kernel is one-dimensional.
fn kernel_line(a: &[Vec<i64>], cols: &[usize]) -> Option<Vec<i64>> {
    let k = cols.len();
    // fraction-free row reduction over i128
    let mut m: Vec<Vec<i128>> = a.iter().map(|row| cols.iter().map(|&c| row[c] as i128).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (x, y) = (m[r][c], m[i][c]);
                for j in 0..k {
                    m[i][j] = m[i][j] * x - m[r][j] * y;
                }
                let g = m[i].iter().fold(0i128, |g, &v| g.gcd(&v));
                if g > 1 {
                    m[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if k - pivots.len() != 1 {
        return None;
    }
    let free = (0..k).find(|c| !pivots.contains(c))?;
    // x_free = L (lcm of pivots), x_pivot = −m[row][free]·L/m[row][pivot]
    let l = pivots.iter().enumerate().fold(1i128, |l, (row, &c)| l.lcm(&m[row][c].abs()));
    let mut x = vec![0i128; k];
    x[free] = l;
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = -m[row][free] * l / m[row][c];
    }
    let g = x.iter().fold(0i128, |g, &v| g.gcd(&v));
    let sign = if x.iter().any(|&v| v < 0) { -1 } else { 1 };
    Some(x.iter().map(|&v| (sign * v / g) as i64).collect())
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 0..n {
        let extra: Vec<Vec<usize>> =
            out.iter().filter(|s| s.len() < max).map(|s| [s.as_slice(), &[i]].concat()).collect();
        out.extend(extra);
    }
    out.retain(|s| !s.is_empty());
    out
}

pub fn extreme_rays(n: usize, a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rays = Vec::new();
    for s in subsets(n, a.len() + 1) {
        let Some(x) = kernel_line(a, &s) else { continue };
        if x.iter().all(|&v| v > 0) {
            let mut full = vec![0; n];
            for (&c, &v) in s.iter().zip(&x) {
                full[c] = v;
            }
            rays.push(full);
        }
    }
    rays.sort();
    rays.dedup();
    rays
}

/// Per-coordinate bound on irreducible elements.
pub fn box_bound(n: usize, a: &[Vec<i64>]) -> Vec<i64> {
    let rays = extreme_rays(n, a);
    (0..n).map(|j| rays.iter().map(|r| r[j]).sum()).collect()
}

pub fn box_size(bound: &[i64]) -> u128 {
    bound.iter().map(|&b| b as u128 + 1).product()
}

/// All nonzero cone points in the box, by depth-first search with interval pruning.
fn cone_points(a: &[Vec<i64>], bound: &[i64]) -> Vec<Vec<i64>> {
    let n = bound.len();
    // reach[j][i] = (min, max) of Σ_{k ≥ j} a[i][k]·x_k over the box
    let mut reach = vec![vec![(0i64, 0i64); a.len()]; n + 1];
    for j in (0..n).rev() {
        for (i, row) in a.iter().enumerate() {
            let t = row[j] * bound[j];
            let (lo, hi) = reach[j + 1][i];
            reach[j][i] = (lo + t.min(0), hi + t.max(0));
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let mut partial = vec![0i64; a.len()];
    fn go(
        j: usize,
        a: &[Vec<i64>],
        bound: &[i64],
        reach: &[Vec<(i64, i64)>],
        x: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if partial.iter().zip(&reach[j]).any(|(&p, &(lo, hi))| p + lo > 0 || p + hi < 0) {
            return;
        }
        if j == x.len() {
            if x.iter().any(|&v| v != 0) {
                out.push(x.clone());
            }
            return;
        }
        for v in 0..=bound[j] {
            x[j] = v;
            for (i, row) in a.iter().enumerate() {
                partial[i] += row[j] * v;
            }
            go(j + 1, a, bound, reach, x, partial, out);
            for (i, row) in a.iter().enumerate() {
                partial[i] -= row[j] * v;
            }
        }
        x[j] = 0;
    }
    go(0, a, bound, &reach, &mut x, &mut partial, &mut out);
    out
}

/// Irreducible cone points that meet each exclusive group at most once, sorted.
pub fn brute_force_basis(n: usize, a: &[Vec<i64>], exclusive: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let bound = box_bound(n, a);
    let mut points = cone_points(a, &bound);
    points.sort_by_key(|x| x.iter().sum::<i64>());
    let mut irreducible: Vec<Vec<i64>> = Vec::new();
    for x in points {
        let reducible = irreducible.iter().any(|y| y.iter().zip(&x).all(|(a, b)| a <= b));
        if !reducible {
            irreducible.push(x);
        }
    }
    irreducible.retain(|x| exclusive.iter().all(|g| g.iter().filter(|&&i| x[i] != 0).count() <= 1));
    irreducible.sort();
    irreducible
}

/// Sparse small-coefficient systems; about a third carry exclusive pairs.
pub fn small_cone() -> impl Strategy<Value = Cone> {
    (2usize..=12)
        .prop_flat_map(|n| (Just(n), 1usize..=6.min(n - 1).max(1)))
        .prop_flat_map(|(n, m)| {
            let row = prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], n);
            let groups = prop::collection::vec((0..n, 0..n), 0..=2);
            (Just(n), prop::collection::vec(row, m), groups)
        })
        .prop_map(|(n, equations, pairs)| {
            let exclusive = pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| vec![a.min(b), a.max(b)]).collect();
            Cone { columns: n, equations, exclusive }
        })
}
