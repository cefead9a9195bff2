//! Brute-force oracles and structural checks shared by the integration tests.
//! Everything here is deliberately naive and independent of the library's
//! algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use twkernel::graph::{Graph, Vertex, VertexSet};

/// Graphs on `0..n` for `n` in `1..=max_n`, any edge density.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edge_list(n, &edges).unwrap()
        })
    })
}

pub fn subsets(items: &[Vertex]) -> impl Iterator<Item = VertexSet> + '_ {
    (0u64..1 << items.len())
        .map(move |mask| items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
}

/// Connected components of `g - removed` by repeated DFS.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut seen = removed.clone();
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &u in g.neighbors(v) {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn is_acyclic(g: &Graph, removed: &VertexSet) -> bool {
    let comps = components(g, removed);
    let kept: usize = comps.iter().map(|c| c.len()).sum();
    let edges = g.edges().into_iter().filter(|(u, v)| !removed.contains(u) && !removed.contains(v)).count();
    edges + comps.len() == kept
}

pub fn is_vertex_cover(g: &Graph, s: &VertexSet) -> bool {
    g.edges().iter().all(|(u, v)| s.contains(u) || s.contains(v))
}

pub fn min_vertex_cover(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    subsets(&vs).filter(|s| is_vertex_cover(g, s)).map(|s| s.len()).min().unwrap()
}

pub fn min_feedback_vertex_set(g: &Graph) -> usize {
    let vs: Vec<Vertex> = g.vertices().collect();
    subsets(&vs).filter(|s| is_acyclic(g, s)).map(|s| s.len()).min().unwrap()
}

/// Minimal separators by definition: at least two components of `g - q`
/// whose neighborhood is all of `q`.
pub fn is_minimal_separator(g: &Graph, q: &VertexSet) -> bool {
    components(g, q)
        .iter()
        .filter(|c| {
            let nb: VertexSet = c.iter().flat_map(|v| g.neighbors(*v).iter().copied()).collect();
            q.iter().all(|x| nb.contains(x))
        })
        .count()
        >= 2
}

pub fn is_clique(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|&u| set.iter().all(|&v| u == v || g.has_edge(u, v)))
}

/// Every minimal separator that becomes a clique after deleting at most one
/// of its vertices.
pub fn almost_clique_separators(g: &Graph) -> BTreeSet<VertexSet> {
    let vs: Vec<Vertex> = g.vertices().collect();
    subsets(&vs)
        .filter(|q| is_minimal_separator(g, q))
        .filter(|q| {
            is_clique(g, q)
                || q.iter().any(|v| {
                    let mut r = q.clone();
                    r.remove(v);
                    is_clique(g, &r)
                })
        })
        .collect()
}

/// Cutwidth as the minimum over all linear layouts.
pub fn cutwidth_by_permutation(g: &Graph) -> usize {
    fn rec(g: &Graph, placed: &mut Vec<Vertex>, rest: &mut Vec<Vertex>, best: &mut usize) {
        if rest.is_empty() {
            let mut worst = 0;
            for i in 1..placed.len() {
                let prefix: VertexSet = placed[..i].iter().copied().collect();
                let cut = g.edges().iter().filter(|(u, v)| prefix.contains(u) != prefix.contains(v)).count();
                worst = worst.max(cut);
            }
            *best = (*best).min(worst);
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            placed.push(v);
            rec(g, placed, rest, best);
            placed.pop();
            rest.insert(i, v);
        }
    }
    let mut best = usize::MAX;
    rec(g, &mut Vec::new(), &mut g.vertices().collect(), &mut best);
    best
}

/// Max flow between `s` and `t` with unit vertex capacities, counted by
/// brute force over internally disjoint path systems of small graphs:
/// the smallest `s`-`t` vertex cut (Menger) when nonadjacent.
pub fn min_vertex_cut(g: &Graph, s: Vertex, t: Vertex) -> usize {
    let others: Vec<Vertex> = g.vertices().filter(|&v| v != s && v != t).collect();
    subsets(&others)
        .filter(|cut| !components(g, cut).iter().any(|c| c.contains(&s) && c.contains(&t)))
        .map(|cut| cut.len())
        .min()
        .unwrap()
}

/// A path with at least one interior vertex whose interior lies in the
/// forest `g - s`, together with its seen clique.
#[derive(Debug, Clone)]
pub struct SeeingPath {
    pub vertices: Vec<Vertex>,
    pub x: VertexSet,
}

impl SeeingPath {
    pub fn r(&self) -> usize {
        self.vertices.len() - 2
    }
}

fn tree_path(g: &Graph, s: &VertexSet, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let mut stack = vec![vec![a]];
    while let Some(p) = stack.pop() {
        let last = *p.last().unwrap();
        if last == b {
            return Some(p);
        }
        for &u in g.neighbors(last) {
            if !s.contains(&u) && !p.contains(&u) {
                let mut q = p.clone();
                q.push(u);
                stack.push(q);
            }
        }
    }
    None
}

/// All clique-seeing paths whose vertices avoid `s` and whose seen clique
/// lies in `s`, found by trying every forest path as the interior.
pub fn clique_seeing_paths(g: &Graph, s: &VertexSet) -> Vec<SeeingPath> {
    let forest: Vec<Vertex> = g.vertices().filter(|v| !s.contains(v)).collect();
    let mut out = Vec::new();
    for &a in &forest {
        for &b in &forest {
            let Some(interior) = tree_path(g, s, a, b) else { continue };
            let on: VertexSet = interior.iter().copied().collect();
            for &v0 in g.neighbors(a) {
                for &vr1 in g.neighbors(b) {
                    if s.contains(&v0) || s.contains(&vr1) || on.contains(&v0) || on.contains(&vr1) || v0 == vr1 {
                        continue;
                    }
                    let mut vertices = vec![v0];
                    vertices.extend(&interior);
                    vertices.push(vr1);
                    if let Some(x) = seen_clique(g, &vertices) {
                        if x.is_subset(s) {
                            out.push(SeeingPath { vertices, x });
                        }
                    }
                }
            }
        }
    }
    out
}

fn seen_clique(g: &Graph, p: &[Vertex]) -> Option<VertexSet> {
    let on: VertexSet = p.iter().copied().collect();
    let interior = &p[1..p.len() - 1];
    let x: VertexSet =
        interior.iter().flat_map(|v| g.neighbors(*v).iter().copied()).filter(|u| !on.contains(u)).collect();
    if !is_clique(g, &x) {
        return None;
    }
    for i in 1..p.len() - 1 {
        for &u in g.neighbors(p[i]) {
            if u != p[i - 1] && u != p[i + 1] && !x.contains(&u) {
                return None;
            }
        }
    }
    Some(x)
}

/// Every leaf of `g - s` has two nonadjacent neighbors in `s`.
pub fn leaves_have_nonadjacent_modulator_pair(g: &Graph, s: &VertexSet) -> bool {
    g.vertices().filter(|v| !s.contains(v)).all(|v| {
        let forest_deg = g.neighbors(v).iter().filter(|u| !s.contains(u)).count();
        if forest_deg != 1 {
            return true;
        }
        let ns: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|u| s.contains(u)).collect();
        ns.iter().any(|&a| ns.iter().any(|&b| a != b && !g.has_edge(a, b)))
    })
}

/// The structure a fully reduced feedback-vertex-set instance has; `Err`
/// names the first violated property.
pub fn check_fvs_reduced(g: &Graph, s: &VertexSet, k: usize) -> Result<(), String> {
    if !leaves_have_nonadjacent_modulator_pair(g, s) {
        return Err("leaf without two nonadjacent modulator neighbors".into());
    }
    for p in clique_seeing_paths(g, s) {
        if p.x.len() + 2 <= k && p.r() > p.x.len() + 1 {
            return Err(format!("path {:?} too long for its clique", p.vertices));
        }
        if p.r() >= 6 * k + 6 {
            return Err(format!("path {:?} above the cutoff", p.vertices));
        }
        if p.r() >= 3 {
            let (v0, end) = (p.vertices[0], *p.vertices.last().unwrap());
            let mut blocked = p.x.clone();
            blocked.extend(&p.vertices[1..p.vertices.len() - 1]);
            if !components(g, &blocked).iter().any(|c| c.contains(&v0) && c.contains(&end)) {
                return Err(format!("path {:?} separates its ends", p.vertices));
            }
        }
    }
    Ok(())
}

/// Largest closed-neighborhood weight met while eliminating `order`.
pub fn elimination_weight(g: &Graph, w: &dyn Fn(Vertex) -> u64, order: &[Vertex]) -> u64 {
    let mut adj: std::collections::BTreeMap<Vertex, VertexSet> =
        g.vertices().map(|v| (v, g.neighbors(v).clone())).collect();
    let mut worst = 0;
    for &v in order {
        let ns = adj.remove(&v).unwrap();
        worst = worst.max(w(v) + ns.iter().map(|&u| w(u)).sum::<u64>());
        for &a in &ns {
            let entry = adj.get_mut(&a).unwrap();
            entry.remove(&v);
            entry.extend(ns.iter().copied().filter(|&b| b != a));
        }
    }
    worst
}

/// Weighted treewidth as the best elimination over all orderings.
pub fn weighted_treewidth_by_permutation(g: &Graph, w: &dyn Fn(Vertex) -> u64) -> u64 {
    fn rec(g: &Graph, w: &dyn Fn(Vertex) -> u64, order: &mut Vec<Vertex>, rest: &mut Vec<Vertex>, best: &mut u64) {
        if rest.is_empty() {
            *best = (*best).min(elimination_weight(g, w, order));
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            order.push(v);
            rec(g, w, order, rest, best);
            order.pop();
            rest.insert(i, v);
        }
    }
    if g.is_empty() {
        return 0;
    }
    let mut best = u64::MAX;
    rec(g, w, &mut Vec::new(), &mut g.vertices().collect(), &mut best);
    best - 1
}
