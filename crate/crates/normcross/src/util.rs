//! Union-find structures shared by the skeleton and surface reconstruction.

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Union-find carrying a ℤ₂ label on each element relative to its root.
/// `union(a, b, p)` asserts `label(a) ⊕ label(b) = p`; a contradiction is
/// remembered rather than rejected.
#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
    conflict: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![false; n], rank: vec![0; n], conflict: vec![false; n] }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress: walk back from the node nearest the root
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Returns `false` if the relation contradicts earlier ones.
    pub fn union(&mut self, a: usize, b: usize, p: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != p {
                self.conflict[ra] = true;
                return false;
            }
            return true;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        self.parity[lo] = pa ^ pb ^ p;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.conflict[hi] |= self.conflict[lo];
        true
    }

    /// Whether the class of `x` has seen a contradictory relation.
    pub fn has_conflict(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.conflict[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_chain_is_consistent() {
        let mut uf = ParityUnionFind::new(4);
        assert!(uf.union(0, 1, true));
        assert!(uf.union(1, 2, true));
        assert!(uf.union(2, 3, false));
        let (r0, p0) = uf.find(0);
        let (r3, p3) = uf.find(3);
        assert_eq!(r0, r3);
        assert!(!(p0 ^ p3));
        assert!(!uf.has_conflict(0));
        assert!(!uf.union(0, 3, true));
        assert!(uf.has_conflict(2));
    }

    #[test]
    fn plain_union_find() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 4));
        assert!(!uf.union(4, 0));
        assert_eq!(uf.find(0), uf.find(4));
        assert_ne!(uf.find(1), uf.find(4));
    }
}
