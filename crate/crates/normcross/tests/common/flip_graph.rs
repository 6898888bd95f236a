//! The Farey flip graph restricted to a bounded window of slopes, searched
//! directly.

use std::collections::{HashMap, VecDeque};

use normcross::curves::Slope;
use normcross::farey::FareyTriangle;

pub const MAX_Q: i64 = 30;

fn in_region(x: &Slope) -> bool {
    x.q <= MAX_Q && x.p.abs() <= 2 * x.q + 4
}

/// The flip graph on triangles whose vertices all lie in a bounded window,
/// built by plain search from the base triangle.
pub struct FlipGraph {
    pub triangles: Vec<FareyTriangle>,
    pub adj: Vec<Vec<usize>>,
}

fn key(t: &FareyTriangle) -> [Slope; 3] {
    let mut k = t.slopes;
    k.sort();
    k
}

impl FlipGraph {
    pub fn build() -> Self {
        let mut index: HashMap<[Slope; 3], usize> = HashMap::new();
        let mut triangles = vec![FareyTriangle::base()];
        index.insert(key(&triangles[0]), 0);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let t = triangles[i];
            for u in t.neighbours() {
                if !u.slopes.iter().all(in_region) {
                    continue;
                }
                let j = *index.entry(key(&u)).or_insert_with(|| {
                    triangles.push(u);
                    adj.push(Vec::new());
                    queue.push_back(triangles.len() - 1);
                    triangles.len() - 1
                });
                if !adj[i].contains(&j) {
                    adj[i].push(j);
                }
            }
        }
        FlipGraph { triangles, adj }
    }

    /// 0-1 search: a step costs one iff the even slopes differ.
    pub fn saddles_from(&self, sources: impl Fn(&FareyTriangle) -> bool) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.triangles.len()];
        let mut dq = VecDeque::new();
        for (i, t) in self.triangles.iter().enumerate() {
            if sources(t) {
                dist[i] = 0;
                dq.push_back(i);
            }
        }
        while let Some(i) = dq.pop_front() {
            for &j in &self.adj[i] {
                let w = u64::from(self.triangles[i].even_slope() != self.triangles[j].even_slope());
                if dist[i] + w < dist[j] {
                    dist[j] = dist[i] + w;
                    if w == 0 {
                        dq.push_front(j);
                    } else {
                        dq.push_back(j);
                    }
                }
            }
        }
        dist
    }

    /// Unweighted flip distance.
    pub fn flips_from(&self, start: &FareyTriangle) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.triangles.len()];
        let s = self.triangles.iter().position(|t| t == start).unwrap();
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for &j in &self.adj[i] {
                if dist[j] == u64::MAX {
                    dist[j] = dist[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        dist
    }
}

/// Even slopes in `[-1, 1]` with denominator at most 30.
pub fn even_slopes() -> Vec<Slope> {
    let mut out = Vec::new();
    for q in 1..=MAX_Q {
        for p in -q..=q {
            if p % 2 == 0 {
                if let Some(x) = Slope::new(p, q).filter(|x| x.q == q) {
                    out.push(x);
                }
            }
        }
    }
    out
}
