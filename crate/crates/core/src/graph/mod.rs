//! Immutable simple undirected graphs and the structural predicates the
//! reduction rules are built from.
//!
//! Every transformation (`contract_edge`, `eliminate_vertex`, ...) returns a
//! fresh [`Graph`]; inputs are never mutated. Vertex ids are arbitrary
//! `usize` values; parsers produce dense ids `0..n` and contractions that need
//! a new vertex allocate [`Graph::fresh_vertex`], one above the current maximum.

mod flow;
mod separators;
mod weighted;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub use flow::count_disjoint_paths;
pub use separators::{is_minimal_separator, minimal_almost_clique_separators, minimal_triangulation, SeparatorSet};
pub use weighted::WeightedGraph;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;
/// An undirected edge, always stored with `.0 < .1`.
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("contraction target {keep} must be one of the endpoints or a fresh id")]
    BadContractionTarget { keep: Vertex },
    #[error("vertex {0} is given a non-positive weight")]
    NonPositiveWeight(Vertex),
    #[error("vertex {0} has no weight")]
    MissingWeight(Vertex),
}

pub(crate) fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph with symmetric adjacency sets.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph {{ V: {:?}, E: {:?} }}", self.vertex_set(), self.edges())
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph, rejecting self-loops, repeated edges and endpoints
    /// missing from `vertices`.
    pub fn from_edges<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.adj.entry(v).or_default();
        }
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for x in [u, v] {
                if !g.adj.contains_key(&x) {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if !g.insert_edge(u, v) {
                let (a, b) = edge(u, v);
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(g)
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        Self::from_edges(0..n, edges.iter().copied())
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(0..n, []).expect("edgeless graph")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(0..n, edges).expect("complete graph")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(0..n, (1..n).map(|v| (v - 1, v))).expect("path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(0..n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle")
    }

    /// Star with center `0` and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(0..=leaves, (1..=leaves).map(|v| (0, v))).expect("star")
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::from_edges(0..a + b, edges).expect("complete bipartite graph")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.fresh_vertex()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.fresh_vertex();
        let mut g = self.clone();
        for v in other.vertices() {
            g.adj.entry(v + shift).or_default();
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + shift, v + shift);
        }
        g
    }

    /// Join of several graphs: their disjoint union plus every edge between
    /// vertices of different parts. Part `i`'s `p`-th vertex (in id order)
    /// becomes `i * n + p`, where `n` is the largest part size.
    pub fn join(parts: &[Graph]) -> Graph {
        let n = parts.iter().map(Graph::num_vertices).max().unwrap_or(0);
        let mut g = Graph::new();
        let mut labels: Vec<Vec<Vertex>> = Vec::with_capacity(parts.len());
        for (i, part) in parts.iter().enumerate() {
            let index: BTreeMap<Vertex, Vertex> = part.vertices().enumerate().map(|(p, v)| (v, i * n + p)).collect();
            for &x in index.values() {
                g.adj.entry(x).or_default();
            }
            for (u, v) in part.edges() {
                g.insert_edge(index[&u], index[&v]);
            }
            labels.push(index.values().copied().collect());
        }
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                for &u in &labels[i] {
                    for &v in &labels[j] {
                        g.insert_edge(u, v);
                    }
                }
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        self.adj.iter().flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v))).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    /// Open neighborhood of `v`.
    ///
    /// Panics if `v` is not a vertex; use [`Graph::try_neighbors`] for
    /// untrusted ids.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        self.adj.get(&v).unwrap_or_else(|| panic!("vertex {v} not in graph"))
    }

    pub fn try_neighbors(&self, v: Vertex) -> Result<&VertexSet, GraphError> {
        self.adj.get(&v).ok_or(GraphError::UnknownVertex(v))
    }

    pub fn closed_neighbors(&self, v: Vertex) -> VertexSet {
        let mut ns = self.neighbors(v).clone();
        ns.insert(v);
        ns
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    /// Smallest id strictly above every current vertex.
    pub fn fresh_vertex(&self) -> Vertex {
        self.max_vertex().map_or(0, |v| v + 1)
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub(crate) fn insert_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Inserts `{u, v}`; returns false if it was already present.
    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        debug_assert_ne!(u, v);
        let fresh = self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        fresh
    }

    pub(crate) fn detach_vertex(&mut self, v: Vertex) {
        if let Some(ns) = self.adj.remove(&v) {
            for u in ns {
                if let Some(set) = self.adj.get_mut(&u) {
                    set.remove(&v);
                }
            }
        }
    }

    /// Whether `set` is pairwise adjacent. Ids outside the graph make it false.
    pub fn is_clique<'a, I>(&self, set: I) -> bool
    where
        I: IntoIterator<Item = &'a Vertex>,
        I::IntoIter: Clone,
    {
        let it = set.into_iter();
        for (i, &u) in it.clone().enumerate() {
            if !self.contains(u) {
                return false;
            }
            for &v in it.clone().skip(i + 1) {
                if u != v && !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// Pairs of `set` that are not adjacent (fill needed to complete it).
    pub fn missing_edges(&self, set: &VertexSet) -> Vec<Edge> {
        let items: Vec<Vertex> = set.iter().copied().collect();
        let mut out = Vec::new();
        for (i, &u) in items.iter().enumerate() {
            for &v in &items[i + 1..] {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_simplicial(&self, v: Vertex) -> Result<bool, GraphError> {
        Ok(self.is_clique(self.try_neighbors(v)?))
    }

    /// Every neighbor `w` of `v` such that `N(v) - {w}` is a clique. The vertex
    /// is almost simplicial exactly when this is nonempty.
    pub fn special_neighbors(&self, v: Vertex) -> Result<VertexSet, GraphError> {
        let ns: Vec<Vertex> = self.try_neighbors(v)?.iter().copied().collect();
        // Count, for each neighbor, how many non-adjacent pairs inside N(v) it
        // participates in. `w` qualifies iff it touches every such pair.
        let mut missing = Vec::new();
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !self.has_edge(a, b) {
                    missing.push((a, b));
                }
            }
        }
        Ok(ns.iter().copied().filter(|&w| missing.iter().all(|&(a, b)| a == w || b == w)).collect())
    }

    /// Lowest special neighbor, if the vertex is almost simplicial.
    pub fn special_neighbor(&self, v: Vertex) -> Option<Vertex> {
        self.special_neighbors(v).ok()?.into_iter().next()
    }

    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        self.with_edges(&[(u, v)])
    }

    /// Adds the listed edges; edges already present are ignored.
    pub fn with_edges(&self, edges: &[Edge]) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for &(u, v) in edges {
            self.check(u)?;
            self.check(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn without_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        self.check(v)?;
        let mut g = self.clone();
        g.detach_vertex(v);
        Ok(g)
    }

    /// Deletes every listed vertex that is present.
    pub fn without_vertices(&self, set: &VertexSet) -> Graph {
        let mut g = self.clone();
        for &v in set {
            g.detach_vertex(v);
        }
        g
    }

    pub fn induced(&self, set: &VertexSet) -> Graph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| set.contains(v))
            .map(|(&v, ns)| (v, ns.intersection(set).copied().collect()))
            .collect();
        Graph { adj }
    }

    /// Adds every missing edge inside `set`.
    pub fn complete_set(&self, set: &VertexSet) -> Result<Graph, GraphError> {
        self.with_edges(&self.missing_edges(set))
    }

    /// Contracts the edge `{u, v}` into `keep`, which is `u`, `v`, or an id
    /// not currently in the graph.
    pub fn contract_edge(&self, u: Vertex, v: Vertex, keep: Vertex) -> Result<Graph, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAdjacent(u, v));
        }
        if keep != u && keep != v && self.contains(keep) {
            return Err(GraphError::BadContractionTarget { keep });
        }
        let merged: VertexSet =
            self.neighbors(u).union(self.neighbors(v)).copied().filter(|&x| x != u && x != v).collect();
        let mut g = self.clone();
        g.detach_vertex(u);
        g.detach_vertex(v);
        g.adj.entry(keep).or_default();
        for x in merged {
            g.insert_edge(keep, x);
        }
        Ok(g)
    }

    /// Removes `v` after completing its open neighborhood into a clique.
    pub fn eliminate_vertex(&self, v: Vertex) -> Result<Graph, GraphError> {
        let ns = self.try_neighbors(v)?.clone();
        let mut g = self.complete_set(&ns)?;
        g.detach_vertex(v);
        Ok(g)
    }

    /// Connected components of `self - removed`, each as a vertex set, ordered
    /// by their smallest vertex.
    pub fn components_avoiding(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let mut seen: VertexSet = removed.clone();
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            out.push(self.bfs(s, &mut seen));
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&VertexSet::new())
    }

    fn bfs(&self, start: Vertex, seen: &mut VertexSet) -> VertexSet {
        let mut comp = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(x) = queue.pop_front() {
            comp.insert(x);
            for &y in self.neighbors(x) {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        comp
    }

    /// Whether `u` reaches `v` in `self - removed`. Endpoints inside `removed`
    /// are never connected.
    pub fn connected_avoiding(&self, u: Vertex, v: Vertex, removed: &VertexSet) -> bool {
        if removed.contains(&u) || removed.contains(&v) || !self.contains(u) || !self.contains(v) {
            return false;
        }
        let mut seen = removed.clone();
        self.bfs(u, &mut seen).contains(&v)
    }

    /// Open neighborhood of a vertex set.
    pub fn set_neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter().flat_map(|&v| self.neighbors(v).iter().copied()).filter(|x| !set.contains(x)).collect()
    }

    /// Whether the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.components().iter().all(|c| self.induced(c).num_edges() + 1 == c.len())
    }

    /// Relabels vertices to `0..n` in id order; returns the graph and the old
    /// id of each new vertex.
    pub fn compacted(&self) -> (Graph, Vec<Vertex>) {
        let labels: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, Vertex> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self.edges().into_iter().map(|(u, v)| (index[&u], index[&v]));
        (Graph::from_edges(0..labels.len(), edges).expect("relabeling preserves simplicity"), labels)
    }

    /// Applies an injective relabeling.
    pub fn relabeled(&self, map: &BTreeMap<Vertex, Vertex>) -> Graph {
        let edges = self.edges().into_iter().map(|(u, v)| (map[&u], map[&v]));
        Graph::from_edges(self.vertices().map(|v| map[&v]), edges).expect("injective relabeling preserves simplicity")
    }
}
