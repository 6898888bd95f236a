//! Alexander polynomials from planar diagram codes, as an independent
//! genus oracle: for alternating knots the genus is half the span.

type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Exact division; panics if `b` does not divide `a`.
fn div(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    if r.is_empty() {
        return r;
    }
    let lead = *b.last().unwrap();
    let mut q = vec![0; r.len() + 1 - b.len()];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        assert_eq!(c * lead, *r.last().unwrap(), "inexact division");
        q[shift] = c;
        let mut s = vec![0; shift];
        s.extend(b.iter().map(|x| x * c));
        r = sub(&r, &s);
    }
    assert!(r.is_empty(), "inexact division");
    trim(q)
}

/// Fraction-free Gaussian elimination over ℤ[t].
fn det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign = 1;
    let mut prev: Poly = vec![1];
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_empty()) else {
            return Vec::new();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = sub(&mul(&m[i][j], &m[k][k]), &mul(&m[i][k], &m[k][j]));
                m[i][j] = div(&v, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].iter().map(|c| c * sign).collect()
}

/// Degree span of the Alexander polynomial of a knot given by a PD code
/// `X[i, j, k, l]` (incoming under-strand `i`, outgoing under-strand `k`).
pub fn alexander_span(pd: &[[usize; 4]]) -> usize {
    let edges = 2 * pd.len();
    let mut parent: Vec<usize> = (0..=edges).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for x in pd {
        let (a, b) = (find(&mut parent, x[1]), find(&mut parent, x[3]));
        parent[a] = b;
    }
    let mut arcs: Vec<usize> = (1..=edges).map(|e| find(&mut parent, e)).collect();
    arcs.sort();
    arcs.dedup();
    let arc = |p: &mut Vec<usize>, e: usize| arcs.iter().position(|&a| a == find(p, e)).unwrap();
    let n = pd.len();
    let mut m = vec![vec![Vec::new(); n]; n];
    for (r, x) in pd.iter().enumerate() {
        let (over, inc, out) = (arc(&mut parent, x[1]), arc(&mut parent, x[0]), arc(&mut parent, x[2]));
        m[r][over] = trim(sub(&m[r][over], &vec![-1, 1]));
        m[r][inc] = trim(sub(&m[r][inc], &vec![0, -1]));
        m[r][out] = trim(sub(&m[r][out], &vec![1]));
    }
    let minor: Vec<Vec<Poly>> = m[..n - 1].iter().map(|row| row[..n - 1].to_vec()).collect();
    let d = det(minor);
    let low = d.iter().position(|&c| c != 0).expect("nonzero Alexander polynomial");
    d.len() - 1 - low
}

pub const TREFOIL_PD: [[usize; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
pub const FIGURE8_PD: [[usize; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];
