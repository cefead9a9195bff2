//! Bitmask machinery shared by the subset dynamic programs.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex, WeightedGraph};

const UNSET: u32 = u32::MAX;

/// Graph on `0..n` (n ≤ 64) with adjacency bitmasks.
pub(crate) struct Dense {
    labels: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    adj: Vec<u64>,
}

pub(crate) struct Solved {
    pub value: u64,
    /// Dense indices in elimination order.
    pub ordering: Vec<usize>,
}

pub(crate) fn mask_weight(w: &[u64], mask: u64) -> u64 {
    let mut m = mask;
    let mut total = 0;
    while m != 0 {
        total += w[m.trailing_zeros() as usize];
        m &= m - 1;
    }
    total
}

impl Dense {
    pub fn new(g: &Graph) -> Self {
        assert!(g.num_vertices() <= 64, "dense representation holds at most 64 vertices");
        let labels: Vec<Vertex> = g.vertices().collect();
        let index: BTreeMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = labels.iter().map(|&v| g.neighbors(v).iter().fold(0u64, |m, u| m | 1 << index[u])).collect();
        Dense { labels, index, adj }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, v: Vertex) -> usize {
        self.index[&v]
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<Vertex> {
        idx.iter().map(|&i| self.labels[i]).collect()
    }

    pub fn weights(&self, wg: &WeightedGraph) -> Vec<u64> {
        self.labels.iter().map(|&v| wg.weight(v)).collect()
    }

    /// Connected components of the subgraph induced by `set`, each paired
    /// with its open neighborhood.
    fn components(&self, set: u64) -> Vec<(u64, u64)> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            let mut reach = 0u64;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                reach |= self.adj[x];
                let fresh = self.adj[x] & set & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push((comp, reach & !comp));
        }
        out
    }

    /// Vertices outside `eliminated ∪ {v}` reachable from `v` through
    /// `eliminated`, given the components of the eliminated set.
    fn reach(&self, v: usize, eliminated: u64, comps: &[(u64, u64)]) -> u64 {
        let mut r = self.adj[v];
        for &(c, nb) in comps {
            if self.adj[v] & c != 0 {
                r |= nb;
            }
        }
        r & !eliminated & !(1 << v)
    }

    /// Minimum over orderings of `elim` (dense indices) of the maximum step
    /// cost, where a step's cost is `cost(v, reach)`. Vertices outside `elim`
    /// are never eliminated.
    pub fn solve(&self, elim: &[usize], cost: impl Fn(usize, u64) -> u64) -> Solved {
        let k = elim.len();
        assert!(k < 32, "subset table too large");
        let size = 1usize << k;
        let mut table = vec![UNSET; size];
        table[0] = 0;
        let scatter = |state: usize| -> u64 {
            let mut s = state;
            let mut full = 0u64;
            while s != 0 {
                full |= 1 << elim[s.trailing_zeros() as usize];
                s &= s - 1;
            }
            full
        };
        for state in 0..size {
            let cur = table[state];
            if cur == UNSET {
                continue;
            }
            let full = scatter(state);
            let comps = self.components(full);
            for (p, &v) in elim.iter().enumerate() {
                if state & (1 << p) != 0 {
                    continue;
                }
                let step = cost(v, self.reach(v, full, &comps));
                let step = u32::try_from(step).expect("cost fits the table");
                let next = state | (1 << p);
                let val = cur.max(step);
                if val < table[next] {
                    table[next] = val;
                }
            }
        }
        // Walk back from the full state to recover a witness ordering.
        let mut ordering = Vec::with_capacity(k);
        let mut state = size - 1;
        while state != 0 {
            let target = table[state];
            let (p, prev) = (0..k)
                .filter(|p| state & (1 << p) != 0)
                .map(|p| (p, state & !(1 << p)))
                .find(|&(p, prev)| {
                    let before = table[prev];
                    if before == UNSET {
                        return false;
                    }
                    let full = scatter(prev);
                    let comps = self.components(full);
                    let step = cost(elim[p], self.reach(elim[p], full, &comps)) as u32;
                    before.max(step) == target
                })
                .expect("optimal predecessor exists");
            ordering.push(elim[p]);
            state = prev;
        }
        ordering.reverse();
        Solved { value: u64::from(table[size - 1]), ordering }
    }

    /// Largest degree met while eliminating in the given order.
    pub fn elimination_width(&self, order: &[usize]) -> usize {
        let mut adj = self.adj.clone();
        let mut width = 0;
        for &v in order {
            let ns = adj[v];
            width = width.max(ns.count_ones() as usize);
            let mut m = ns;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[u] = (adj[u] | ns) & !(1 << u) & !(1 << v);
            }
            adj[v] = 0;
        }
        width
    }

    /// Minimum over layouts of the largest prefix cut.
    pub fn cutwidth(&self) -> usize {
        let n = self.len();
        assert!(n < 32, "subset table too large");
        let size = 1usize << n;
        let mut best = vec![u32::MAX; size];
        best[0] = 0;
        for state in 1..size {
            let s = state as u64;
            let mut cut = 0u32;
            let mut m = s;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                cut += (self.adj[v] & !s).count_ones();
            }
            let mut prefix = u32::MAX;
            let mut m = s;
            while m != 0 {
                let bit = m & m.wrapping_neg();
                m &= m - 1;
                prefix = prefix.min(best[state & !(bit as usize)]);
            }
            best[state] = prefix.max(cut);
        }
        best[size - 1] as usize
    }
}
