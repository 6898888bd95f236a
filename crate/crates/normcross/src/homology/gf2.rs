//! Row reduction over GF(2) on packed bit rows.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow(Vec<u64>);

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn lowest(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize)
    }
}

/// A reduced basis of a subspace of GF(2)ⁿ, for membership tests.
#[derive(Debug, Clone)]
pub struct Gf2Span {
    /// Basis rows keyed by their pivot (lowest set bit); each pivot is
    /// cleared from every other row.
    rows: Vec<(usize, BitRow)>,
}

impl Gf2Span {
    pub fn new(generators: impl IntoIterator<Item = BitRow>) -> Self {
        let mut span = Gf2Span { rows: Vec::new() };
        for g in generators {
            span.insert(g);
        }
        span
    }

    /// Adds a vector; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: BitRow) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.lowest() else { return false };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor(&r);
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn reduce(&self, mut v: BitRow) -> BitRow {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
