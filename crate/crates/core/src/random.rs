//! Seeded instance generators for the property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex, VertexSet, WeightedGraph};

/// Generator for case `case` of a run seeded with `seed`; cases are
/// independent of evaluation order.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Erdős-Rényi graph on `0..n`.
pub fn gnp(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("simple by construction")
}

/// `gnp` with `n` uniform in `1..=max_n` and `p` uniform in `[0.15, 0.75]`.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.15..0.75);
    gnp(rng, n, p)
}

pub fn random_weights(rng: &mut impl Rng, g: Graph, max_w: u64) -> WeightedGraph {
    let weights: BTreeMap<Vertex, u64> = g.vertices().map(|v| (v, rng.gen_range(1..=max_w))).collect();
    WeightedGraph::new(g, weights).expect("positive weights on every vertex")
}

/// Two cliques `a = 0..na` and `b = na..na+nb` joined by random edges.
pub fn random_cobipartite(
    rng: &mut impl Rng,
    na: usize,
    nb: usize,
    p: f64,
    max_w: u64,
) -> (WeightedGraph, VertexSet, VertexSet) {
    let n = na + nb;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same_side = (u < na) == (v < na);
            if same_side || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edge_list(n, &edges).expect("simple by construction");
    (random_weights(rng, g, max_w), (0..na).collect(), (na..n).collect())
}

/// A random forest on `0..n-s` (long paths are likely) plus `s` modulator
/// vertices `n-s..n`, each pair of which is adjacent with probability
/// `clique_p`, attached to random forest vertices. Returns the graph and the
/// modulator.
pub fn random_forest_plus_modulator(rng: &mut impl Rng, n: usize, s: usize, clique_p: f64) -> (Graph, VertexSet) {
    let f = n - s;
    let mut edges = Vec::new();
    for v in 1..f {
        // Mostly extend a path, sometimes branch or start a new tree.
        match rng.gen_range(0..10) {
            0 => {}
            1 | 2 => edges.push((rng.gen_range(0..v), v)),
            _ => edges.push((v - 1, v)),
        }
    }
    let modulator: VertexSet = (f..n).collect();
    for x in f..n {
        for y in x + 1..n {
            if rng.gen_bool(clique_p) {
                edges.push((x, y));
            }
        }
        let attach = rng.gen_range(0.05..0.4);
        for v in 0..f {
            if rng.gen_bool(attach) {
                edges.push((v, x));
            }
        }
    }
    (Graph::from_edge_list(n, &edges).expect("simple by construction"), modulator)
}

/// One or two forest paths whose vertices each see one vertex of a clique
/// `X` (never the same one as the previous vertex), with the path ends tied
/// to two further nonadjacent modulator vertices `y1`, `y2`. Rich in
/// clique-seeing paths that the almost-simplicial rules cannot touch.
/// Returns the graph and the modulator `X + {y1, y2}`.
pub fn random_clique_seeing(rng: &mut impl Rng, max_path: usize) -> (Graph, VertexSet) {
    let x = rng.gen_range(2..=4);
    let paths = rng.gen_range(1..=2);
    let lens: Vec<usize> = (0..paths).map(|_| rng.gen_range(3..=max_path.max(3))).collect();
    let f: usize = lens.iter().sum();
    let (x0, y1, y2) = (f, f + x, f + x + 1);
    let mut edges = Vec::new();
    for a in x0..x0 + x {
        for b in a + 1..x0 + x {
            edges.push((a, b));
        }
    }
    let mut start = 0;
    for len in lens {
        let mut prev_seen = usize::MAX;
        for v in start..start + len {
            if v > start {
                edges.push((v - 1, v));
            }
            let mut seen = x0 + rng.gen_range(0..x);
            if seen == prev_seen {
                seen = x0 + (seen - x0 + 1) % x;
            }
            edges.push((v, seen));
            prev_seen = seen;
        }
        edges.push((start, y1));
        edges.push((start + len - 1, y2));
        start += len;
    }
    let n = y2 + 1;
    (Graph::from_edge_list(n, &edges).expect("simple by construction"), (x0..n).collect())
}

/// A graph on `0..n` with maximum degree three, built by adding up to
/// `edges` random edges between vertices of degree below three.
pub fn random_subcubic(rng: &mut impl Rng, n: usize, edges: usize) -> Graph {
    let mut g = Graph::empty(n);
    for _ in 0..edges * 8 {
        if g.num_edges() == edges {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.has_edge(u, v) && g.degree(u) < 3 && g.degree(v) < 3 {
            g.insert_edge(u, v);
        }
    }
    g
}

/// Random double-edge swaps `{a,b},{c,d} -> {a,d},{c,b}` that keep the graph
/// simple. Every vertex keeps its degree.
pub fn degree_preserving_shuffle(rng: &mut impl Rng, g: &Graph, swaps: usize) -> Graph {
    let mut h = g.clone();
    for _ in 0..swaps {
        let edges = h.edges();
        if edges.len() < 2 {
            break;
        }
        let pick: Vec<_> = edges.choose_multiple(rng, 2).copied().collect();
        let (a, b) = if rng.gen_bool(0.5) { pick[0] } else { (pick[0].1, pick[0].0) };
        let (c, d) = pick[1];
        let distinct = a != c && a != d && b != c && b != d;
        if distinct && !h.has_edge(a, d) && !h.has_edge(c, b) {
            let mut next = h.edges();
            next.retain(|&e| e != pick[0] && e != pick[1]);
            next.push((a.min(d), a.max(d)));
            next.push((c.min(b), c.max(b)));
            h = Graph::from_edges(h.vertices(), next).expect("swap keeps the graph simple");
        }
    }
    h
}
