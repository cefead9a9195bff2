use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::{Graph, Vertex, VertexSet};

/// A vertex set together with an optional witness `v` such that
/// `vertices - {v}` is a clique.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeparatorSet {
    pub vertices: VertexSet,
    pub almost_clique_witness: Option<Vertex>,
}

impl SeparatorSet {
    /// Whether the separator is already a clique in `g`.
    pub fn is_clique_in(&self, g: &Graph) -> bool {
        g.is_clique(&self.vertices)
    }
}

/// Full-component test: `g - q` must have at least two components `C` with
/// `N(C) = q`.
pub fn is_minimal_separator(g: &Graph, q: &VertexSet) -> bool {
    g.components_avoiding(q).iter().filter(|c| g.set_neighborhood(c) == *q).take(2).count() == 2
}

/// Minimal triangulation by maximum cardinality search with minimal fill
/// (MCS-M). Returns the chordal supergraph and a perfect elimination ordering
/// of it, first-eliminated vertex first.
pub fn minimal_triangulation(g: &Graph) -> (Graph, Vec<Vertex>) {
    let verts: Vec<Vertex> = g.vertices().collect();
    let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let nbrs: Vec<Vec<usize>> = verts.iter().map(|&v| g.neighbors(v).iter().map(|u| index[u]).collect()).collect();
    let mut weight = vec![0i64; n];
    let mut numbered = vec![false; n];
    let mut order = vec![0usize; n];
    let mut filled = g.clone();

    for step in (0..n).rev() {
        let v = (0..n)
            .filter(|&x| !numbered[x])
            .max_by_key(|&x| (weight[x], Reverse(x)))
            .expect("an unnumbered vertex remains");
        // Minimax search: best[u] is the smallest possible maximum weight of
        // an interior vertex over unnumbered v-u paths.
        let mut best = vec![i64::MAX; n];
        let mut heap = BinaryHeap::new();
        for &u in &nbrs[v] {
            if !numbered[u] {
                best[u] = -1;
                heap.push(Reverse((-1i64, u)));
            }
        }
        while let Some(Reverse((b, x))) = heap.pop() {
            if b > best[x] {
                continue;
            }
            let through = b.max(weight[x]);
            for &y in &nbrs[x] {
                if y != v && !numbered[y] && through < best[y] {
                    best[y] = through;
                    heap.push(Reverse((through, y)));
                }
            }
        }
        let reached: Vec<usize> = (0..n).filter(|&u| u != v && !numbered[u] && best[u] < weight[u]).collect();
        for u in reached {
            weight[u] += 1;
            filled.insert_edge(verts[v], verts[u]);
        }
        numbered[v] = true;
        order[step] = v;
    }
    (filled, order.into_iter().map(|i| verts[i]).collect())
}

/// Minimal separators of a chordal graph given a perfect elimination ordering,
/// read off a clique tree (maximum-weight spanning tree of the maximal
/// cliques).
fn chordal_minimal_separators(h: &Graph, peo: &[Vertex]) -> Vec<VertexSet> {
    let position: BTreeMap<Vertex, usize> = peo.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cliques: Vec<VertexSet> = peo
        .iter()
        .map(|&v| {
            let mut c: VertexSet = h.neighbors(v).iter().copied().filter(|u| position[u] > position[&v]).collect();
            c.insert(v);
            c
        })
        .collect();
    cliques.sort_by_key(|c| Reverse(c.len()));
    let mut maximal: Vec<VertexSet> = Vec::new();
    for c in cliques {
        if !maximal.iter().any(|m| c.is_subset(m)) {
            maximal.push(c);
        }
    }
    // Prim on intersection sizes; zero-weight links join components and are
    // not separators.
    let k = maximal.len();
    let mut in_tree = vec![false; k];
    let mut best: Vec<(usize, usize)> = vec![(0, usize::MAX); k];
    let mut seps = Vec::new();
    for _ in 0..k {
        let next = (0..k).filter(|&i| !in_tree[i]).max_by_key(|&i| (best[i].0, Reverse(i))).expect("clique left");
        in_tree[next] = true;
        if best[next].1 != usize::MAX && best[next].0 > 0 {
            seps.push(maximal[next].intersection(&maximal[best[next].1]).copied().collect());
        }
        for i in 0..k {
            if !in_tree[i] {
                let w = maximal[i].intersection(&maximal[next]).count();
                if w > best[i].0 || best[i].1 == usize::MAX {
                    best[i] = (w, next);
                }
            }
        }
    }
    seps
}

/// All minimal separators `Q` of `g` for which some `v ∈ Q` leaves
/// `Q - {v}` a clique.
///
/// For a witness `v`, `Q - {v}` is a clique minimal separator of `g - v`, and
/// clique minimal separators appear as minimal separators of every minimal
/// triangulation. Each vertex therefore contributes at most `n` candidates,
/// which are then confirmed with the full-component test on `g`.
pub fn minimal_almost_clique_separators(g: &Graph) -> Vec<SeparatorSet> {
    let mut found: BTreeMap<VertexSet, Vertex> = BTreeMap::new();
    for v in g.vertices() {
        let without = g.without_vertex(v).expect("vertex exists");
        let (h, peo) = minimal_triangulation(&without);
        let mut candidates = chordal_minimal_separators(&h, &peo);
        candidates.push(VertexSet::new());
        for mut q in candidates {
            if !g.is_clique(&q) {
                continue;
            }
            q.insert(v);
            if !found.contains_key(&q) && is_minimal_separator(g, &q) {
                found.insert(q, v);
            }
        }
    }
    found.into_iter().map(|(vertices, w)| SeparatorSet { vertices, almost_clique_witness: Some(w) }).collect()
}
