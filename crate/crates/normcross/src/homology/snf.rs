//! Smith normal form over ℤ with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonal form `U·A·V = D` of an integer matrix, keeping only `V`.
///
/// `diagonal` has one entry per column of `A` (zero past the rank), with
/// each nonzero entry dividing the next.  A row vector `x` over the columns
/// has coordinates `x·V` in the diagonal basis.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    pub fn transform(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.v.len();
        (0..n).map(|j| x.iter().zip(&self.v).map(|(xi, row)| xi * &row[j]).sum()).collect()
    }
}

pub fn smith_normal_form(matrix: &[Vec<BigInt>], cols: usize) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let rows = a.len();
    let mut v: Vec<Vec<BigInt>> =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();

    let col_axpy = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
        for row in v.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };
    let col_swap = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        col_swap(&mut a, &mut v, t, bj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(&head[t]) {
                        *x -= &q * y;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, &mut v, j, t, &q);
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                // a remainder is smaller than the pivot: bring it in
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    col_swap(&mut a, &mut v, t, best.1);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }

    let diagonal = (0..cols).map(|i| if i < rows { a[i][i].clone() } else { BigInt::zero() }).collect();
    SmithForm { diagonal, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn invariant_factors() {
        let f = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        let d: Vec<i64> = f.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn rank_deficient_and_wide() {
        let f = smith_normal_form(&m(&[&[1, 1, 0], &[1, 1, 0]]), 3);
        let d: Vec<i64> = f.diagonal.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 0, 0]);
    }

    #[test]
    fn v_is_unimodular_and_diagonalises() {
        let a = m(&[&[3, 5, 7], &[2, 4, 6]]);
        let f = smith_normal_form(&a, 3);
        // the row space of A·V is the row space of D
        for row in &a {
            let y = f.transform(row);
            for (yi, di) in y.iter().zip(&f.diagonal) {
                if di.is_zero() {
                    assert!(yi.is_zero());
                } else {
                    assert!(yi.is_multiple_of(di));
                }
            }
        }
    }
}
