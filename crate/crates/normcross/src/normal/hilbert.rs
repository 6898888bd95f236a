//! Hilbert bases of admissible regions of `{x ≥ 0 : A·x = 0}`.
//!
//! Equations are added one at a time.  Given the Hilbert basis `H` of the
//! monoid cut out so far and a new form `λ`, the completion step repeatedly
//! adds sums `p + n` with `λ(p) > 0 > λ(n)` that are not reducible, where
//! `c` is reducible by `y` when `y ≤ c` componentwise, `λ(y)` is zero or has
//! the sign of `λ(c)`, and `|λ(y)| ≤ |λ(c)|`.  At the fixed point the
//! irreducible elements with `λ = 0` form the next Hilbert basis.
//!
//! A vector is admissible when each exclusive group has at most one nonzero
//! entry.  Supports only grow under addition and every summand of an
//! admissible vector is admissible, so inadmissible candidates are dropped
//! as soon as they appear; the admissible irreducibles are exactly the
//! union of the Hilbert bases of the maximal admissible faces.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

/// `{x ∈ ℤⁿ, x ≥ 0, A·x = 0}` with at most one nonzero entry per exclusive group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cone {
    pub columns: usize,
    pub equations: Vec<Vec<i64>>,
    pub exclusive: Vec<Vec<usize>>,
}

impl Cone {
    pub fn is_admissible<T: PartialEq + Default>(&self, x: &[T]) -> bool {
        let zero = T::default();
        self.exclusive.iter().all(|g| g.iter().filter(|&&i| x[i] != zero).count() <= 1)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.columns
            && x.iter().all(|v| !v.is_negative())
            && self.equations.iter().all(|row| row.iter().zip(x).map(|(&a, b)| b * a).sum::<BigInt>() == BigInt::ZERO)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("enumeration aborted: more than {cap} intermediate generators")]
    Aborted { cap: usize },
}

/// Exact integer arithmetic for the completion: machine words with
/// overflow detection, or arbitrary precision.
trait Int: Clone + Ord + Debug + Send + Sync {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul_i64(&self, k: i64) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn into_big(self) -> BigInt;
}

impl Int for i64 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul_i64(&self, k: i64) -> Option<Self> {
        self.checked_mul(k)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul_i64(&self, k: i64) -> Option<Self> {
        Some(self * k)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

#[derive(Debug)]
enum Failure {
    Overflow,
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Elem<T> {
    deg: T,
    x: Vec<T>,
    mask: Vec<u64>,
    lam: T,
}

impl<T: Int> Elem<T> {
    fn unit(n: usize, i: usize) -> Self {
        let mut x = vec![T::zero(); n];
        x[i] = T::from_i64(1);
        let mut mask = vec![0u64; n.div_ceil(64)];
        mask[i / 64] |= 1 << (i % 64);
        Elem { deg: T::from_i64(1), x, mask, lam: T::zero() }
    }

    fn eval(&self, row: &[i64]) -> Option<T> {
        let mut s = T::zero();
        for (v, &a) in self.x.iter().zip(row) {
            if a != 0 && !v.is_zero() {
                s = s.add(&v.mul_i64(a)?)?;
            }
        }
        Some(s)
    }

    fn sum(&self, other: &Self) -> Option<Self> {
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a.add(b)).collect::<Option<Vec<T>>>()?;
        let mask = self.mask.iter().zip(&other.mask).map(|(a, b)| a | b).collect();
        Some(Elem { deg: self.deg.add(&other.deg)?, x, mask, lam: self.lam.add(&other.lam)? })
    }

    /// `self ≤ c` componentwise (support test first).
    fn le(&self, c: &Self) -> bool {
        self.mask.iter().zip(&c.mask).all(|(a, b)| a & !b == 0) && self.x.iter().zip(&c.x).all(|(a, b)| a <= b)
    }

    fn sign(&self) -> Ordering {
        self.lam.cmp(&T::zero())
    }
}

fn admissible_mask(groups: &[Vec<u64>], mask: &[u64]) -> bool {
    groups.iter().all(|g| g.iter().zip(mask).map(|(a, b)| (a & b).count_ones()).sum::<u32>() <= 1)
}

/// Elements kept sorted by degree, so reducer scans stop early.
struct Pool<T> {
    items: Vec<Elem<T>>,
}

impl<T: Int> Pool<T> {
    fn reduces(&self, c: &Elem<T>) -> bool {
        let sign = c.sign();
        for y in &self.items {
            if y.deg > c.deg {
                break;
            }
            let ok = match (sign, y.sign()) {
                (_, Ordering::Equal) => true,
                (Ordering::Greater, Ordering::Greater) => y.lam <= c.lam,
                (Ordering::Less, Ordering::Less) => y.lam >= c.lam,
                _ => false,
            };
            if ok && y.le(c) {
                return true;
            }
        }
        false
    }

    fn merge(&mut self, mut new: Vec<Elem<T>>) {
        self.items.append(&mut new);
        self.items.sort_by(|a, b| a.deg.cmp(&b.deg).then_with(|| a.x.cmp(&b.x)));
    }
}

fn completion<T: Int>(
    basis: Vec<Elem<T>>,
    row: &[i64],
    groups: &[Vec<u64>],
    cap: usize,
) -> Result<Vec<Elem<T>>, Failure> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut zero = Vec::new();
    for mut e in basis {
        e.lam = e.eval(row).ok_or(Failure::Overflow)?;
        match e.sign() {
            Ordering::Greater => pos.push(e),
            Ordering::Less => neg.push(e),
            Ordering::Equal => zero.push(e),
        }
    }
    let mut pool = Pool { items: Vec::new() };
    pool.merge(pos.iter().chain(&neg).chain(&zero).cloned().collect());
    let (mut new_pos, mut new_neg) = (pos.len(), neg.len());
    let mut zero_out = zero;
    // pos[..pos.len()-new_pos] are old, the rest are new; likewise neg
    while new_pos > 0 || new_neg > 0 {
        let old_p = pos.len() - new_pos;
        let old_n = neg.len() - new_neg;
        let candidates: Vec<Elem<T>> = pos
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, p)| {
                let start = if i >= old_p { 0 } else { old_n };
                neg[start..].iter().map(move |n| (p, n))
            })
            .filter(|(p, n)| admissible_mask(groups, &or_mask(&p.mask, &n.mask)))
            .map(|(p, n)| p.sum(n).ok_or(Failure::Overflow))
            .filter(|c| c.as_ref().map_or(true, |c| !pool.reduces(c)))
            .collect::<Result<_, _>>()?;
        let mut candidates = candidates;
        candidates.sort_by(|a, b| a.deg.cmp(&b.deg).then_with(|| a.x.cmp(&b.x)));
        candidates.dedup_by(|a, b| a.x == b.x);

        // inter-reduce: only strictly smaller degrees can reduce
        let mut accepted: Pool<T> = Pool { items: Vec::new() };
        let mut i = 0;
        while i < candidates.len() {
            let mut j = i;
            while j < candidates.len() && candidates[j].deg == candidates[i].deg {
                j += 1;
            }
            let batch: Vec<Elem<T>> = candidates[i..j].par_iter().filter(|c| !accepted.reduces(c)).cloned().collect();
            accepted.items.extend(batch);
            i = j;
        }

        let (mut np, mut nn) = (Vec::new(), Vec::new());
        let mut nz = Vec::new();
        for e in accepted.items {
            match e.sign() {
                Ordering::Greater => np.push(e),
                Ordering::Less => nn.push(e),
                Ordering::Equal => nz.push(e),
            }
        }
        new_pos = np.len();
        new_neg = nn.len();
        pool.merge(np.iter().chain(&nn).chain(&nz).cloned().collect());
        pos.extend(np);
        neg.extend(nn);
        zero_out.extend(nz);
        if pool.items.len() > cap {
            return Err(Failure::Aborted);
        }
    }
    Ok(minimal(zero_out))
}

fn or_mask(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

fn minimal<T: Int>(mut v: Vec<Elem<T>>) -> Vec<Elem<T>> {
    v.sort_by(|a, b| a.deg.cmp(&b.deg).then_with(|| a.x.cmp(&b.x)));
    v.dedup_by(|a, b| a.x == b.x);
    let keep: Vec<bool> =
        v.par_iter().enumerate().map(|(i, c)| !v[..i].iter().any(|y| y.deg < c.deg && y.le(c))).collect();
    v.into_iter().zip(keep).filter_map(|(e, k)| k.then_some(e)).collect()
}

fn run<T: Int>(cone: &Cone, cap: usize) -> Result<Vec<Vec<BigInt>>, Failure> {
    let n = cone.columns;
    let words = n.div_ceil(64);
    let groups: Vec<Vec<u64>> = cone
        .exclusive
        .iter()
        .map(|g| {
            let mut m = vec![0u64; words];
            for &i in g {
                m[i / 64] |= 1 << (i % 64);
            }
            m
        })
        .collect();
    let mut basis: Vec<Elem<T>> = (0..n).map(|i| Elem::unit(n, i)).collect();
    let mut remaining: Vec<&Vec<i64>> = cone.equations.iter().collect();
    while !remaining.is_empty() {
        // next equation: fewest positive × negative pairs
        let (k, _) = remaining
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let (mut p, mut q) = (0usize, 0usize);
                for e in &basis {
                    match e.eval(row).map(|v| v.cmp(&T::zero())) {
                        Some(Ordering::Greater) => p += 1,
                        Some(Ordering::Less) => q += 1,
                        _ => {}
                    }
                }
                (k, p * q)
            })
            .min_by_key(|&(k, c)| (c, k))
            .expect("nonempty");
        let row = remaining.remove(k);
        basis = completion(basis, row, &groups, cap)?;
    }
    let mut out: Vec<Vec<BigInt>> = basis
        .into_iter()
        .filter(|e| admissible_mask(&groups, &e.mask))
        .map(|e| e.x.into_iter().map(Int::into_big).collect())
        .collect();
    out.sort();
    Ok(out)
}

fn run_exact(cone: &Cone, cap: usize) -> Result<Vec<Vec<BigInt>>, HilbertError> {
    match run::<i64>(cone, cap) {
        Ok(v) => Ok(v),
        Err(Failure::Aborted) => Err(HilbertError::Aborted { cap }),
        Err(Failure::Overflow) => run::<BigInt>(cone, cap).map_err(|_| HilbertError::Aborted { cap }),
    }
}

/// A cone with forced-zero columns dropped and columns related by
/// `x_i = x_j` merged; `columns[k]` lists the original columns of variable `k`.
struct Presolved {
    cone: Cone,
    columns: Vec<Vec<usize>>,
}

fn presolve(columns: usize, equations: &[Vec<i64>], support: impl Fn(usize) -> bool) -> Presolved {
    let mut cols: Vec<Vec<usize>> = (0..columns).filter(|&i| support(i)).map(|i| vec![i]).collect();
    let mut eqs: Vec<Vec<i64>> = equations.iter().map(|row| cols.iter().map(|c| row[c[0]]).collect()).collect();
    loop {
        eqs.retain(|row| row.iter().any(|&a| a != 0));
        let mut action = None;
        for row in &eqs {
            let nz: Vec<usize> = (0..row.len()).filter(|&i| row[i] != 0).collect();
            if nz.iter().all(|&i| row[i] > 0) || nz.iter().all(|&i| row[i] < 0) {
                action = Some((nz, None));
                break;
            }
            if let [i, j] = nz[..] {
                if row[i] == -row[j] {
                    action = Some((vec![j], Some(i)));
                    break;
                }
            }
        }
        match action {
            None => break,
            Some((zeros, None)) => {
                // drop forced-zero variables, highest index first
                for &k in zeros.iter().rev() {
                    cols.remove(k);
                    eqs.iter_mut().for_each(|row| {
                        row.remove(k);
                    });
                }
            }
            Some((j, Some(i))) => {
                let j = j[0];
                let moved = cols.remove(j);
                let i = if i > j { i - 1 } else { i };
                cols[i].extend(moved);
                for row in eqs.iter_mut() {
                    let v = row.remove(j);
                    row[i] += v;
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    eqs.retain(|row| seen.insert(row.clone()));
    Presolved { cone: Cone { columns: cols.len(), equations: eqs, exclusive: Vec::new() }, columns: cols }
}

/// Hilbert basis of `{x ≥ 0 : A·x = 0, x_i = 0 off the support}`.
fn face_basis(cone: &Cone, support: &[u64], cap: usize) -> Result<Vec<Vec<BigInt>>, HilbertError> {
    let pre = presolve(cone.columns, &cone.equations, |i| support[i / 64] >> (i % 64) & 1 == 1);
    let reduced = run_exact(&pre.cone, cap)?;
    Ok(reduced
        .into_iter()
        .map(|y| {
            let mut x = vec![<BigInt as Zero>::zero(); cone.columns];
            for (v, cols) in y.iter().zip(&pre.columns) {
                for &c in cols {
                    x[c] = v.clone();
                }
            }
            x
        })
        .collect())
}

/// Supports of the maximal admissible faces: maximal sets of pairwise
/// compatible extreme rays (Bron–Kerbosch with pivoting).
fn maximal_faces(rays: &[Vec<BigInt>], cone: &Cone) -> Vec<Vec<u64>> {
    let r = rays.len();
    let words = r.div_ceil(64);
    let sig: Vec<Vec<Option<usize>>> = rays
        .iter()
        .map(|x| cone.exclusive.iter().map(|g| g.iter().position(|&i| !Zero::is_zero(&x[i]))).collect())
        .collect();
    let compatible = |a: usize, b: usize| sig[a].iter().zip(&sig[b]).all(|(p, q)| p.is_none() || q.is_none() || p == q);
    let mut adj = vec![vec![0u64; words]; r];
    for a in 0..r {
        for b in a + 1..r {
            if compatible(a, b) {
                adj[a][b / 64] |= 1 << (b % 64);
                adj[b][a / 64] |= 1 << (a % 64);
            }
        }
    }
    let bits = |m: &[u64]| -> Vec<usize> { (0..r).filter(|&i| m[i / 64] >> (i % 64) & 1 == 1).collect() };
    let and = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| x & y).collect() };
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut all = vec![0u64; words];
    for i in 0..r {
        all[i / 64] |= 1 << (i % 64);
    }
    stack.push((Vec::new(), all, vec![0u64; words]));
    while let Some((clique, mut p, mut x)) = stack.pop() {
        if p.iter().all(|&w| w == 0) {
            if x.iter().all(|&w| w == 0) {
                cliques.push(clique);
            }
            continue;
        }
        let px: Vec<u64> = p.iter().zip(&x).map(|(a, b)| a | b).collect();
        let pivot = bits(&px)
            .into_iter()
            .max_by_key(|&u| and(&p, &adj[u]).iter().map(|w| w.count_ones()).sum::<u32>())
            .expect("P ∪ X is nonempty");
        let branch: Vec<usize> = bits(&p).into_iter().filter(|&v| adj[pivot][v / 64] >> (v % 64) & 1 == 0).collect();
        for v in branch {
            let mut c = clique.clone();
            c.push(v);
            stack.push((c, and(&p, &adj[v]), and(&x, &adj[v])));
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
    }
    let cw = cone.columns.div_ceil(64);
    let mut faces: Vec<Vec<u64>> = cliques
        .into_iter()
        .map(|c| {
            let mut m = vec![0u64; cw];
            for v in c {
                for (i, val) in rays[v].iter().enumerate() {
                    if !Zero::is_zero(val) {
                        m[i / 64] |= 1 << (i % 64);
                    }
                }
            }
            m
        })
        .collect();
    faces.sort();
    faces.dedup();
    faces
}

/// All admissible fundamental vectors, sorted lexicographically.
///
/// Without exclusive groups this is a single completion run.  With them,
/// the admissible extreme rays are enumerated first; each maximal set of
/// compatible rays spans a maximal admissible face, whose Hilbert basis is
/// computed on its own support, and the results are merged.  `cap` bounds
/// the number of rays and of intermediate generators held at once.
pub fn hilbert_basis(cone: &Cone, cap: usize) -> Result<Vec<Vec<BigInt>>, HilbertError> {
    let full = vec![u64::MAX; cone.columns.div_ceil(64)];
    if cone.exclusive.is_empty() {
        return face_basis(cone, &full, cap);
    }
    let rays = super::dd::extreme_rays(cone, cap)?;
    let faces = maximal_faces(&rays, cone);
    let per_face: Vec<Vec<Vec<BigInt>>> =
        faces.par_iter().map(|f| face_basis(cone, f, cap)).collect::<Result<_, _>>()?;
    let mut out: Vec<Vec<BigInt>> = per_face.into_iter().flatten().collect();
    out.sort();
    out.dedup();
    Ok(out)
}
