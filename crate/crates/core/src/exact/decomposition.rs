use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::EliminationOrdering;
use crate::graph::{Graph, Vertex, VertexSet};

/// Bags indexed by tree node, plus the tree's edge list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: BTreeMap<usize, VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("tree axiom: the bag graph is not a tree")]
    NotATree,
    #[error("tree axiom: edge {0}-{1} references an unknown bag")]
    UnknownBag(usize, usize),
    #[error("coverage axiom: bag {bag} holds vertex {vertex} outside the graph")]
    UnknownVertex { bag: usize, vertex: Vertex },
    #[error("coverage axiom: vertex {vertex} is in no bag")]
    Coverage { vertex: Vertex },
    #[error("edge axiom: edge {u}-{v} is in no bag")]
    EdgeCoverage { u: Vertex, v: Vertex },
    #[error("subtree axiom: bags holding vertex {vertex} are disconnected")]
    SubtreeConnectivity { vertex: Vertex },
}

impl ValidationError {
    /// Name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            ValidationError::NotATree | ValidationError::UnknownBag(..) => "tree",
            ValidationError::UnknownVertex { .. } | ValidationError::Coverage { .. } => "coverage",
            ValidationError::EdgeCoverage { .. } => "edge",
            ValidationError::SubtreeConnectivity { .. } => "subtree-connectivity",
        }
    }
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.values().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    fn tree_adjacency(&self) -> Result<BTreeMap<usize, Vec<usize>>, ValidationError> {
        let mut adj: BTreeMap<usize, Vec<usize>> = self.bags.keys().map(|&b| (b, Vec::new())).collect();
        for &(a, b) in &self.tree_edges {
            if !self.bags.contains_key(&a) || !self.bags.contains_key(&b) {
                return Err(ValidationError::UnknownBag(a, b));
            }
            adj.get_mut(&a).expect("bag").push(b);
            adj.get_mut(&b).expect("bag").push(a);
        }
        Ok(adj)
    }
}

/// Number of nodes reachable from `start` within `allowed`.
fn reach_count(adj: &BTreeMap<usize, Vec<usize>>, start: usize, allowed: &BTreeSet<usize>) -> usize {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if allowed.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

/// Checks the tree, coverage, edge and subtree axioms. Returns the width, or
/// with `weights` the heaviest bag's weight minus one.
pub fn validate_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
    weights: Option<&BTreeMap<Vertex, u64>>,
) -> Result<u64, ValidationError> {
    let adj = td.tree_adjacency()?;
    let nodes: BTreeSet<usize> = td.bags.keys().copied().collect();
    let is_tree = match nodes.first() {
        None => td.tree_edges.is_empty(),
        Some(&root) => td.tree_edges.len() + 1 == nodes.len() && reach_count(&adj, root, &nodes) == nodes.len(),
    };
    if !is_tree {
        return Err(ValidationError::NotATree);
    }

    let mut holders: BTreeMap<Vertex, BTreeSet<usize>> = BTreeMap::new();
    for (&b, bag) in &td.bags {
        for &v in bag {
            if !g.contains(v) {
                return Err(ValidationError::UnknownVertex { bag: b, vertex: v });
            }
            holders.entry(v).or_default().insert(b);
        }
    }
    if let Some(v) = g.vertices().find(|v| !holders.contains_key(v)) {
        return Err(ValidationError::Coverage { vertex: v });
    }
    for (u, v) in g.edges() {
        if holders[&u].is_disjoint(&holders[&v]) {
            return Err(ValidationError::EdgeCoverage { u, v });
        }
    }
    for (&v, hs) in &holders {
        let first = *hs.first().expect("nonempty");
        if reach_count(&adj, first, hs) != hs.len() {
            return Err(ValidationError::SubtreeConnectivity { vertex: v });
        }
    }

    let bag_weight = |bag: &VertexSet| -> u64 {
        match weights {
            Some(w) => bag.iter().map(|v| w.get(v).copied().unwrap_or(1)).sum(),
            None => bag.len() as u64,
        }
    };
    Ok(td.bags.values().map(bag_weight).max().unwrap_or(0).saturating_sub(1))
}

/// Decomposition whose bags are the closed forward neighborhoods of the
/// filled graph along `order`. A vertex's bag hangs below the bag of its
/// earliest later neighbor; parentless bags are chained, and bags contained
/// in their parent are merged away.
pub fn decomposition_from_ordering(g: &Graph, order: &EliminationOrdering) -> TreeDecomposition {
    let order = order.as_slice();
    let position: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut bags: Vec<VertexSet> = Vec::with_capacity(order.len());
    let mut eliminated = g.clone();
    for &v in order {
        let ns = eliminated.neighbors(v).clone();
        for (a, b) in eliminated.missing_edges(&ns) {
            eliminated.insert_edge(a, b);
        }
        let mut bag = ns;
        bag.insert(v);
        bags.push(bag);
        eliminated.detach_vertex(v);
    }

    let n = order.len();
    let mut parent: Vec<Option<usize>> =
        (0..n).map(|i| bags[i].iter().filter(|&&u| u != order[i]).map(|u| position[u]).min()).collect();
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for w in roots.windows(2) {
        parent[w[0]] = Some(w[1]);
    }

    // Merge each bag into its parent when contained in it; children of a
    // merged bag move to the surviving ancestor.
    let mut alias: Vec<usize> = (0..n).collect();
    for i in 0..n {
        if let Some(p) = parent[i] {
            if bags[i].is_subset(&bags[p]) {
                alias[i] = p;
            }
        }
    }
    let resolve = |mut i: usize| {
        while alias[i] != i {
            i = alias[i];
        }
        i
    };
    let mut td = TreeDecomposition::default();
    for i in 0..n {
        if resolve(i) == i {
            td.bags.insert(i, bags[i].clone());
        }
    }
    for i in 0..n {
        if resolve(i) != i {
            continue;
        }
        if let Some(p) = parent[i] {
            td.tree_edges.push((i, resolve(p)));
        }
    }
    // Keep ids dense and ordered.
    let renumber: BTreeMap<usize, usize> = td.bags.keys().enumerate().map(|(k, &i)| (i, k)).collect();
    TreeDecomposition {
        bags: td.bags.into_iter().map(|(i, b)| (renumber[&i], b)).collect(),
        tree_edges: td.tree_edges.into_iter().map(|(a, b)| (renumber[&a], renumber[&b])).collect(),
    }
}
