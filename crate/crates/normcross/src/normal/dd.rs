//! Admissible extreme rays by the double description method.
//!
//! Rays violating an exclusive group are discarded at every stage, and
//! only pairs with admissible combined support are combined; adjacency is
//! the combinatorial test on zero sets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::hilbert::{Cone, HilbertError};

#[derive(Clone)]
struct Ray {
    x: Vec<BigInt>,
    /// Bitmask of nonzero coordinates.
    supp: Vec<u64>,
}

impl Ray {
    fn eval(&self, row: &[i64]) -> BigInt {
        row.iter().zip(&self.x).filter(|(a, _)| **a != 0).map(|(&a, x)| x * a).sum()
    }
}

fn support(x: &[BigInt]) -> Vec<u64> {
    let mut m = vec![0u64; x.len().div_ceil(64)];
    for (i, v) in x.iter().enumerate() {
        if !v.is_zero() {
            m[i / 64] |= 1 << (i % 64);
        }
    }
    m
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Exact row echelon form, used to track the rank of processed equations.
#[derive(Default)]
struct RowSpace {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    /// Adds a row; `false` if it was already in the span.
    fn insert(&mut self, row: &[i64]) -> bool {
        let mut r: Vec<BigInt> = row.iter().map(|&v| BigInt::from(v)).collect();
        for (p, basis) in &self.rows {
            if !r[*p].is_zero() {
                let (a, b) = (basis[*p].clone(), r[*p].clone());
                r = r.iter().zip(basis).map(|(x, y)| x * &a - y * &b).collect();
                let g = r.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
                if !g.is_zero() {
                    r.iter_mut().for_each(|v| *v /= &g);
                }
            }
        }
        match r.iter().position(|v| !v.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Primitive admissible extreme rays of the cone, sorted lexicographically.
pub fn extreme_rays(cone: &Cone, cap: usize) -> Result<Vec<Vec<BigInt>>, HilbertError> {
    let n = cone.columns;
    let groups: Vec<Vec<u64>> = cone
        .exclusive
        .iter()
        .map(|g| {
            let mut m = vec![0u64; n.div_ceil(64)];
            for &i in g {
                m[i / 64] |= 1 << (i % 64);
            }
            m
        })
        .collect();
    let admissible =
        |m: &[u64]| groups.iter().all(|g| g.iter().zip(m).map(|(a, b)| (a & b).count_ones()).sum::<u32>() <= 1);

    let mut rays: Vec<Ray> = (0..n)
        .map(|i| {
            let mut x = vec![BigInt::zero(); n];
            x[i] = BigInt::from(1);
            Ray { supp: support(&x), x }
        })
        .collect();
    let mut remaining: Vec<&Vec<i64>> = cone.equations.iter().collect();
    let mut rank = RowSpace::default();
    while !remaining.is_empty() {
        let k = (0..remaining.len())
            .min_by_key(|&k| {
                let (mut p, mut q) = (0usize, 0usize);
                for r in &rays {
                    match r.eval(remaining[k]).sign() {
                        num_bigint::Sign::Plus => p += 1,
                        num_bigint::Sign::Minus => q += 1,
                        num_bigint::Sign::NoSign => {}
                    }
                }
                (p * q, k)
            })
            .expect("nonempty");
        let row = remaining.remove(k);
        if !rank.insert(row) {
            continue;
        }
        // adjacent rays share at least dim − 2 zero coordinates
        let max_support = rank.rank() + 1;
        let vals: Vec<BigInt> = rays.iter().map(|r| r.eval(row)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let all = &rays;
        let new: Vec<Ray> = pos
            .par_iter()
            .flat_map_iter(|&i| neg.iter().map(move |&j| (i, j)))
            .filter_map(|(i, j)| {
                let (u, v) = (&all[i], &all[j]);
                let joint: Vec<u64> = u.supp.iter().zip(&v.supp).map(|(a, b)| a | b).collect();
                if !admissible(&joint) || joint.iter().map(|w| w.count_ones() as usize).sum::<usize>() > max_support {
                    return None;
                }
                // adjacent iff no third ray's support lies inside the joint support
                if all.iter().enumerate().any(|(w, r)| w != i && w != j && subset(&r.supp, &joint)) {
                    return None;
                }
                let x: Vec<BigInt> = u.x.iter().zip(&v.x).map(|(a, b)| a * -&vals[j] + b * &vals[i]).collect();
                let g = x.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
                let x: Vec<BigInt> = x.into_iter().map(|v| v / &g).collect();
                Some(Ray { supp: support(&x), x })
            })
            .collect();
        let mut next: Vec<Ray> = (0..rays.len()).filter(|&i| vals[i].is_zero()).map(|i| rays[i].clone()).collect();
        next.extend(new);
        if next.len() > cap {
            return Err(HilbertError::Aborted { cap });
        }
        rays = next;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().filter(|r| admissible(&r.supp)).map(|r| r.x).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
