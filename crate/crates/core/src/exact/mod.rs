//! Exponential-time exact solvers and polynomial validators that serve as
//! ground truth for the reduction rules.
//!
//! The solvers run a dynamic program over sets of already-eliminated
//! vertices: eliminating `v` after the set `S` costs the weight of `v` plus
//! the weight of every vertex outside `S ∪ {v}` that `v` reaches through `S`.
//! Size limits live in [`OracleCaps`]; exceeding one is an error, never a
//! silent approximation.

mod decomposition;
mod dp;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{edge, Edge, Graph, GraphError, Vertex, VertexSet, WeightedGraph};

pub use decomposition::{decomposition_from_ordering, validate_decomposition, TreeDecomposition, ValidationError};
use dp::Dense;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{oracle}: size {size} exceeds the configured cap {cap}")]
    CapExceeded { oracle: &'static str, size: u64, cap: u64 },
    #[error("ordering is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("the two sides do not partition the vertex set")]
    NotAPartition,
    #[error("vertex set B is not a clique")]
    NotAClique,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Size limits for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub treewidth: usize,
    pub weighted_treewidth: usize,
    pub cutwidth: usize,
    pub bruteforce: usize,
    pub expand_total_weight: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { treewidth: 24, weighted_treewidth: 22, cutwidth: 20, bruteforce: 8, expand_total_weight: 10_000 }
    }
}

impl OracleCaps {
    fn check(&self, oracle: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
        if size > cap {
            Err(OracleError::CapExceeded { oracle, size: size as u64, cap: cap as u64 })
        } else {
            Ok(())
        }
    }
}

/// A permutation of the vertex set, first-eliminated vertex first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrdering(Vec<Vertex>);

impl EliminationOrdering {
    pub fn new(g: &Graph, order: Vec<Vertex>) -> Result<Self, OracleError> {
        let set: VertexSet = order.iter().copied().collect();
        if set.len() != order.len() || set != g.vertex_set() {
            return Err(OracleError::NotAPermutation);
        }
        Ok(EliminationOrdering(order))
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationResult {
    /// Largest closed-neighborhood weight met during the elimination.
    pub cost: u64,
    pub fill_edges: BTreeSet<Edge>,
    /// Closed-neighborhood weight of each vertex at the time it is eliminated.
    pub step_weights: Vec<u64>,
}

/// Simulates eliminating the vertices in order, recording each closed
/// neighborhood weight and every fill edge.
pub fn elimination_cost(wg: &WeightedGraph, pi: &EliminationOrdering) -> Result<EliminationResult, OracleError> {
    let mut g = wg.graph().clone();
    if EliminationOrdering::new(&g, pi.0.clone()).is_err() {
        return Err(OracleError::NotAPermutation);
    }
    let mut fill_edges = BTreeSet::new();
    let mut step_weights = Vec::with_capacity(pi.0.len());
    for &v in &pi.0 {
        let ns = g.neighbors(v).clone();
        step_weights.push(wg.weight(v) + wg.set_weight(&ns));
        for (a, b) in g.missing_edges(&ns) {
            fill_edges.insert(edge(a, b));
        }
        g = g.eliminate_vertex(v)?;
    }
    Ok(EliminationResult { cost: step_weights.iter().copied().max().unwrap_or(0), fill_edges, step_weights })
}

/// Exact treewidth, with the default caps.
pub fn treewidth_exact(g: &Graph) -> Result<usize, OracleError> {
    Oracle::default().treewidth(g)
}

/// Treewidth by enumerating every elimination ordering.
pub fn treewidth_bruteforce(g: &Graph) -> Result<usize, OracleError> {
    Oracle::default().treewidth_bruteforce(g)
}

pub fn weighted_treewidth_exact(wg: &WeightedGraph) -> Result<u64, OracleError> {
    Oracle::default().weighted_treewidth(wg)
}

pub fn weighted_treewidth_cobipartite(wg: &WeightedGraph, a: &VertexSet, b: &VertexSet) -> Result<u64, OracleError> {
    Oracle::default().weighted_treewidth_cobipartite(wg, a, b)
}

pub fn cutwidth_exact(g: &Graph) -> Result<usize, OracleError> {
    Oracle::default().cutwidth(g)
}

pub fn expand_weights(wg: &WeightedGraph) -> Result<Graph, OracleError> {
    Oracle::default().expand_weights(wg)
}

/// The exact solvers bound to a set of caps.
#[derive(Debug, Clone, Copy, Default)]
pub struct Oracle {
    pub caps: OracleCaps,
}

impl Oracle {
    pub fn with_caps(caps: OracleCaps) -> Self {
        Oracle { caps }
    }

    pub fn treewidth(&self, g: &Graph) -> Result<usize, OracleError> {
        Ok(self.treewidth_with_ordering(g)?.0)
    }

    /// Treewidth together with an optimal elimination ordering.
    pub fn treewidth_with_ordering(&self, g: &Graph) -> Result<(usize, EliminationOrdering), OracleError> {
        self.caps.check("treewidth", g.num_vertices(), self.caps.treewidth)?;
        let d = Dense::new(g);
        let all: Vec<usize> = (0..d.len()).collect();
        let solved = d.solve(&all, |_, reach| u64::from(reach.count_ones()));
        let order = d.labels(&solved.ordering);
        Ok((solved.value as usize, EliminationOrdering(order)))
    }

    /// An optimal tree decomposition built from the DP witness ordering.
    pub fn treewidth_decomposition(&self, g: &Graph) -> Result<(usize, TreeDecomposition), OracleError> {
        let (tw, order) = self.treewidth_with_ordering(g)?;
        Ok((tw, decomposition_from_ordering(g, &order)))
    }

    pub fn treewidth_bruteforce(&self, g: &Graph) -> Result<usize, OracleError> {
        self.caps.check("treewidth_bruteforce", g.num_vertices(), self.caps.bruteforce)?;
        let d = Dense::new(g);
        let mut order: Vec<usize> = (0..d.len()).collect();
        let mut best = usize::MAX;
        permute(&mut order, 0, &mut |perm| {
            best = best.min(d.elimination_width(perm));
        });
        Ok(if d.len() == 0 { 0 } else { best })
    }

    pub fn weighted_treewidth(&self, wg: &WeightedGraph) -> Result<u64, OracleError> {
        Ok(self.weighted_treewidth_with_ordering(wg)?.0)
    }

    /// Minimum elimination cost minus one, with a witness ordering.
    pub fn weighted_treewidth_with_ordering(
        &self,
        wg: &WeightedGraph,
    ) -> Result<(u64, EliminationOrdering), OracleError> {
        let g = wg.graph();
        self.caps.check("weighted_treewidth", g.num_vertices(), self.caps.weighted_treewidth)?;
        check_weight_range(wg)?;
        let d = Dense::new(g);
        let w = d.weights(wg);
        let all: Vec<usize> = (0..d.len()).collect();
        let solved = d.solve(&all, |v, reach| w[v] + dp::mask_weight(&w, reach));
        Ok((solved.value.saturating_sub(1), EliminationOrdering(d.labels(&solved.ordering))))
    }

    /// Weighted treewidth of a graph whose part `b` is a clique, searching
    /// only orderings that eliminate all of `a` first.
    pub fn weighted_treewidth_cobipartite(
        &self,
        wg: &WeightedGraph,
        a: &VertexSet,
        b: &VertexSet,
    ) -> Result<u64, OracleError> {
        let g = wg.graph();
        if !a.is_disjoint(b) || a.union(b).copied().collect::<VertexSet>() != g.vertex_set() {
            return Err(OracleError::NotAPartition);
        }
        if !g.is_clique(b) {
            return Err(OracleError::NotAClique);
        }
        self.caps.check("weighted_treewidth_cobipartite", a.len(), self.caps.weighted_treewidth)?;
        self.caps.check("weighted_treewidth_cobipartite", g.num_vertices(), 64)?;
        check_weight_range(wg)?;
        let d = Dense::new(g);
        let w = d.weights(wg);
        let elim: Vec<usize> = a.iter().map(|v| d.index(*v)).collect();
        let solved = d.solve(&elim, |v, reach| w[v] + dp::mask_weight(&w, reach));
        // With A gone, B is a clique and its first vertex sees all of it.
        let tail = wg.set_weight(b);
        Ok(solved.value.max(tail).saturating_sub(1))
    }

    pub fn cutwidth(&self, g: &Graph) -> Result<usize, OracleError> {
        self.caps.check("cutwidth", g.num_vertices(), self.caps.cutwidth)?;
        Ok(Dense::new(g).cutwidth())
    }

    /// Replaces every vertex of weight `w` by a clique of `w` copies that all
    /// inherit its adjacency. Vertex `v` keeps its id; extra copies receive
    /// fresh ids in vertex order.
    pub fn expand_weights(&self, wg: &WeightedGraph) -> Result<Graph, OracleError> {
        let total = wg.total_weight();
        if total > self.caps.expand_total_weight {
            return Err(OracleError::CapExceeded {
                oracle: "expand_weights",
                size: total,
                cap: self.caps.expand_total_weight,
            });
        }
        let g = wg.graph();
        let mut next = g.fresh_vertex();
        let mut copies: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for v in g.vertices() {
            let mut ids = vec![v];
            for _ in 1..wg.weight(v) {
                ids.push(next);
                next += 1;
            }
            copies.insert(v, ids);
        }
        let mut out = Graph::new();
        for ids in copies.values() {
            for (i, &x) in ids.iter().enumerate() {
                out.insert_vertex(x);
                for &y in &ids[i + 1..] {
                    out.insert_edge(x, y);
                }
            }
        }
        for (u, v) in g.edges() {
            for &x in &copies[&u] {
                for &y in &copies[&v] {
                    out.insert_edge(x, y);
                }
            }
        }
        Ok(out)
    }
}

/// DP tables store costs as `u32`.
fn check_weight_range(wg: &WeightedGraph) -> Result<(), OracleError> {
    let total = wg.total_weight();
    let cap = u64::from(u32::MAX - 1);
    if total > cap {
        return Err(OracleError::CapExceeded { oracle: "total weight", size: total, cap });
    }
    Ok(())
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
