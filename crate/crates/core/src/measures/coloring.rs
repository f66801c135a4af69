//! Exact k-coloring decision by DSATUR-ordered branch and bound.

use crate::normed::DistMatrix;

/// Simple undirected graph on `0..n` with bitset adjacency rows.
#[derive(Clone, Debug)]
pub(crate) struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    degree: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            degree: vec![0; n],
        }
    }

    /// Conflict graph: `i ~ j` iff `d(i, j) > threshold`.
    pub fn above_threshold(d: &DistMatrix, threshold: f64) -> Self {
        let mut g = Graph::new(d.len());
        for i in 0..d.len() {
            for j in (i + 1)..d.len() {
                if d.get(i, j) > threshold {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        if i == j || self.has_edge(i, j) {
            return;
        }
        self.adj[i * self.words + j / 64] |= 1 << (j % 64);
        self.adj[j * self.words + i / 64] |= 1 << (i % 64);
        self.degree[i] += 1;
        self.degree[j] += 1;
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / 64] & (1 << (j % 64)) != 0
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.words..(v + 1) * self.words];
        row.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let t = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Greedy clique, seeded from every vertex in turn; returns the largest found.
    pub fn greedy_clique(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| self.degree[b].cmp(&self.degree[a]).then(a.cmp(&b)));
        let mut best: Vec<usize> = Vec::new();
        for &seed in &order {
            if self.degree[seed] + 1 <= best.len() {
                continue;
            }
            let mut clique = vec![seed];
            for &v in &order {
                if v != seed && clique.iter().all(|&u| self.has_edge(u, v)) {
                    clique.push(v);
                }
            }
            if clique.len() > best.len() {
                best = clique;
            }
        }
        best.sort_unstable();
        best
    }
}

/// Returns a proper coloring with at most `k` colors, or `None` if none exists.
/// Colors are numbered in order of first use along the search.
pub(crate) fn k_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.len();
    if n == 0 {
        return Some(Vec::new());
    }
    if k >= n {
        return Some((0..n).collect());
    }
    if k == 0 {
        return None;
    }
    if g.greedy_clique().len() > k {
        return None;
    }
    let mut s = Search {
        g,
        k,
        color: vec![UNCOLORED; n],
        forbidden: vec![0; n * k],
        saturation: vec![0; n],
        free_degree: g.degree.clone(),
    };
    if s.run(0, 0) {
        Some(s.color)
    } else {
        None
    }
}

const UNCOLORED: usize = usize::MAX;

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<usize>,
    /// forbidden[v * k + c] = number of colored neighbors of v with color c
    forbidden: Vec<u32>,
    saturation: Vec<usize>,
    free_degree: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, colored: usize, used: usize) -> bool {
        if colored == self.g.len() {
            return true;
        }
        let v = self.pick();
        if self.saturation[v] >= self.k {
            return false;
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            if self.forbidden[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.run(colored + 1, used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }

    /// Uncolored vertex of maximum saturation, then maximum uncolored degree,
    /// then lowest index.
    fn pick(&self) -> usize {
        let mut best = UNCOLORED;
        for v in 0..self.g.len() {
            if self.color[v] != UNCOLORED {
                continue;
            }
            if best == UNCOLORED
                || (self.saturation[v], self.free_degree[v]) > (self.saturation[best], self.free_degree[best])
            {
                best = v;
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        let k = self.k;
        for u in self.g.neighbors(v) {
            let slot = &mut self.forbidden[u * k + c];
            if *slot == 0 {
                self.saturation[u] += 1;
            }
            *slot += 1;
            self.free_degree[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = UNCOLORED;
        let k = self.k;
        for u in self.g.neighbors(v) {
            let slot = &mut self.forbidden[u * k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[u] -= 1;
            }
            self.free_degree[u] += 1;
        }
    }
}
