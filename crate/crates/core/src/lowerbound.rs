//! Generators for the kernel lower-bound compositions.
//!
//! [`compose_t5`] encodes the OR of subcubic cutwidth instances as one
//! weighted co-bipartite graph whose clique `B` is small; [`compose_t6`]
//! encodes the OR of treewidth instances as a weighted graph with a small
//! vertex cover, via an edge clique cover of their join.
//!
//! Both layouts describe every emitted vertex's role and can render that
//! description as text ([`CompositionT5::layout_text`],
//! [`CompositionT6::layout_text`]). Ids in the text are one-based, like the
//! graph files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exact::{cutwidth_exact, OracleError, TreeDecomposition};
use crate::graph::{Graph, Vertex, VertexSet, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("no input instances")]
    NoInputs,
    #[error("input {input}: vertex {vertex} has degree above three")]
    NotSubcubic { input: usize, vertex: Vertex },
    #[error("input {input} differs from input 0 in {what}")]
    Mismatch { input: usize, what: &'static str },
    #[error("parameters fail {condition}: k' = {k_prime}, d = {d}")]
    Parameters { condition: &'static str, k_prime: u64, d: i64 },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn degree_counts(g: &Graph) -> [usize; 4] {
    let mut c = [0; 4];
    for v in g.vertices() {
        c[g.degree(v).min(3)] += 1;
    }
    c
}

/// Vertices sorted by degree, ties by id.
fn degree_order(g: &Graph) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = g.vertices().collect();
    vs.sort_by_key(|&v| (g.degree(v), v));
    vs
}

/// Relabels `g` onto `0..n` following `order`.
fn onto_positions(g: &Graph, order: &[Vertex]) -> Graph {
    let pos: BTreeMap<Vertex, Vertex> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    g.relabeled(&pos)
}

fn check_shared(inputs: &[(Graph, usize)]) -> Result<(), CompositionError> {
    let (g0, k0) = inputs.first().ok_or(CompositionError::NoInputs)?;
    for (i, (g, k)) in inputs.iter().enumerate() {
        let mismatch = |what| Err(CompositionError::Mismatch { input: i, what });
        if g.num_vertices() != g0.num_vertices() {
            return mismatch("vertex count");
        }
        if g.num_edges() != g0.num_edges() {
            return mismatch("edge count");
        }
        if k != k0 {
            return mismatch("target k");
        }
    }
    Ok(())
}

/// Role map of a weighted co-bipartite composition of cutwidth instances.
///
/// Nodes are positions `0..n` in each input's (degree, id) order; instance
/// `i` selects bit `q` through `a_q` when bit `q` of `i` is set, else `b_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionT5 {
    /// Inputs after padding, relabeled onto node positions.
    pub inputs: Vec<Graph>,
    /// Original vertex id of each node position, per input.
    pub node_ids: Vec<Vec<Vertex>>,
    /// Number of instances given before padding.
    pub given: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub log_t: u32,
    /// `a_reps[i][j]` represents node `j` of instance `i`; weight `n^3`.
    pub a_reps: Vec<Vec<Vertex>>,
    /// One per instance; weight `n^6`.
    pub dummies: Vec<Vertex>,
    /// `(a_q, b_q)` per bit; weight `n^5`.
    pub b_instance: Vec<(Vertex, Vertex)>,
    /// `x_j` per node; weight `n^3 - deg(j)`.
    pub b_nodes: Vec<Vertex>,
    /// `e_{u,v}` per node pair `u < v`; weight 2.
    pub b_edges: BTreeMap<(usize, usize), Vertex>,
    pub k_prime: u64,
}

/// Output of [`compose_t5`]: either the composed gadget, or, when the inputs
/// are too small for the gadget to be needed, a triangle that answers the OR
/// directly (`k' = 2` for yes, `k' = 1` for no).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComposedT5 {
    Gadget {
        graph: WeightedGraph,
        /// The clique `B`; removing it leaves the clique `A`.
        modulator: VertexSet,
        layout: CompositionT5,
    },
    Solved {
        graph: WeightedGraph,
        answer: bool,
    },
}

impl ComposedT5 {
    pub fn graph(&self) -> &WeightedGraph {
        match self {
            ComposedT5::Gadget { graph, .. } | ComposedT5::Solved { graph, .. } => graph,
        }
    }

    pub fn modulator(&self) -> VertexSet {
        match self {
            ComposedT5::Gadget { modulator, .. } => modulator.clone(),
            ComposedT5::Solved { .. } => VertexSet::new(),
        }
    }

    pub fn k_prime(&self) -> u64 {
        match self {
            ComposedT5::Gadget { layout, .. } => layout.k_prime,
            ComposedT5::Solved { answer, .. } => 1 + u64::from(*answer),
        }
    }
}

impl CompositionT5 {
    pub fn t(&self) -> usize {
        self.inputs.len()
    }

    /// The clique `A`: representatives and dummies.
    pub fn a_side(&self) -> VertexSet {
        self.a_reps.iter().flatten().chain(&self.dummies).copied().collect()
    }

    /// The clique `B`: selectors, node and edge representatives.
    pub fn b_side(&self) -> VertexSet {
        self.b_instance
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.b_nodes.iter().copied())
            .chain(self.b_edges.values().copied())
            .collect()
    }

    /// `t (n^4 + n^6) + n^3 + n^5 log t`, the elimination weight common to
    /// every step before the cut term.
    pub fn base_weight(&self) -> u64 {
        let n = self.n as u64;
        self.t() as u64 * (n.pow(4) + n.pow(6)) + n.pow(3) + n.pow(5) * u64::from(self.log_t)
    }

    pub fn layout_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "c roles of a cutwidth composition; vertex ids are 1-based");
        let _ =
            writeln!(s, "t {} {} n {} m {} k {} kprime {}", self.t(), self.given, self.n, self.m, self.k, self.k_prime);
        let _ = writeln!(s, "c rep <vertex> <instance> <node> <original id>");
        for (i, reps) in self.a_reps.iter().enumerate() {
            for (j, &v) in reps.iter().enumerate() {
                let _ = writeln!(s, "rep {} {} {} {}", v + 1, i + 1, j + 1, self.node_ids[i][j] + 1);
            }
        }
        let _ = writeln!(s, "c dummy <vertex> <instance>");
        for (i, &d) in self.dummies.iter().enumerate() {
            let _ = writeln!(s, "dummy {} {}", d + 1, i + 1);
        }
        let _ = writeln!(s, "c select <vertex> <bit> <value>");
        for (q, &(a, b)) in self.b_instance.iter().enumerate() {
            let _ = writeln!(s, "select {} {} 1", a + 1, q + 1);
            let _ = writeln!(s, "select {} {} 0", b + 1, q + 1);
        }
        let _ = writeln!(s, "c node <vertex> <node>");
        for (j, &x) in self.b_nodes.iter().enumerate() {
            let _ = writeln!(s, "node {} {}", x + 1, j + 1);
        }
        let _ = writeln!(s, "c pair <vertex> <node> <node>");
        for (&(u, v), &e) in &self.b_edges {
            let _ = writeln!(s, "pair {} {} {}", e + 1, u + 1, v + 1);
        }
        s
    }
}

/// Composes subcubic cutwidth instances sharing `n`, `m`, `k` and degree
/// counts into a weighted co-bipartite graph whose weighted treewidth is at
/// most `k'` iff some input has cutwidth at most `k`.
///
/// Inputs are padded to a power of two by repeating the last one.
pub fn compose_t5(inputs: &[(Graph, usize)]) -> Result<ComposedT5, CompositionError> {
    check_shared(inputs)?;
    let counts = degree_counts(&inputs[0].0);
    for (i, (g, _)) in inputs.iter().enumerate() {
        if let Some(v) = g.vertices().find(|&v| g.degree(v) > 3) {
            return Err(CompositionError::NotSubcubic { input: i, vertex: v });
        }
        if degree_counts(g) != counts {
            return Err(CompositionError::Mismatch { input: i, what: "degree counts" });
        }
    }
    let given = inputs.len();
    let t = given.next_power_of_two();
    let log_t = t.trailing_zeros();
    let (n, m, k) = (inputs[0].0.num_vertices(), inputs[0].0.num_edges(), inputs[0].1);

    if n < 2 || n < log_t as usize {
        let mut answer = false;
        for (g, _) in inputs {
            answer |= cutwidth_exact(g)? <= k;
        }
        let graph = WeightedGraph::unit(Graph::complete(3));
        return Ok(ComposedT5::Solved { graph, answer });
    }

    let mut padded: Vec<&Graph> = inputs.iter().map(|(g, _)| g).collect();
    padded.resize(t, padded[given - 1]);
    let node_ids: Vec<Vec<Vertex>> = padded.iter().map(|g| degree_order(g)).collect();
    let graphs: Vec<Graph> = padded.iter().zip(&node_ids).map(|(g, o)| onto_positions(g, o)).collect();
    let degree = |j: usize| graphs[0].degree(j) as u64;

    let n3 = (n as u64).pow(3);
    let mut weights: BTreeMap<Vertex, u64> = BTreeMap::new();
    let mut next = 0;
    let mut fresh = |w: u64, weights: &mut BTreeMap<Vertex, u64>| {
        weights.insert(next, w);
        next += 1;
        next - 1
    };
    let a_reps: Vec<Vec<Vertex>> = (0..t).map(|_| (0..n).map(|_| fresh(n3, &mut weights)).collect()).collect();
    let dummies: Vec<Vertex> = (0..t).map(|_| fresh((n as u64).pow(6), &mut weights)).collect();
    let b_instance: Vec<(Vertex, Vertex)> = (0..log_t)
        .map(|_| {
            let w = (n as u64).pow(5);
            (fresh(w, &mut weights), fresh(w, &mut weights))
        })
        .collect();
    let b_nodes: Vec<Vertex> = (0..n).map(|j| fresh(n3 - degree(j), &mut weights)).collect();
    let mut b_edges = BTreeMap::new();
    for u in 0..n {
        for v in u + 1..n {
            b_edges.insert((u, v), fresh(2, &mut weights));
        }
    }

    let mut layout = CompositionT5 {
        inputs: graphs,
        node_ids,
        given,
        n,
        m,
        k,
        log_t,
        a_reps,
        dummies,
        b_instance,
        b_nodes,
        b_edges,
        k_prime: 0,
    };
    layout.k_prime = layout.base_weight() + k as u64 - 1;

    let mut edges = Vec::new();
    let selectors = |i: usize| -> Vec<Vertex> {
        layout.b_instance.iter().enumerate().map(|(q, &(a, b))| if i >> q & 1 == 1 { a } else { b }).collect()
    };
    for i in 0..t {
        let sel = selectors(i);
        for j in 0..n {
            let v = layout.a_reps[i][j];
            edges.extend(sel.iter().map(|&s| (v, s)));
            edges.push((v, layout.b_nodes[j]));
        }
        for (u, v) in layout.inputs[i].edges() {
            let e = layout.b_edges[&(u, v)];
            edges.push((layout.a_reps[i][u], e));
            edges.push((layout.a_reps[i][v], e));
        }
        let d = layout.dummies[i];
        edges.extend(sel.iter().map(|&s| (d, s)));
        edges.extend(layout.b_nodes.iter().chain(layout.b_edges.values()).map(|&x| (d, x)));
    }
    for side in [layout.a_side(), layout.b_side()] {
        let side: Vec<Vertex> = side.into_iter().collect();
        for (x, &a) in side.iter().enumerate() {
            edges.extend(side[x + 1..].iter().map(|&b| (a, b)));
        }
    }
    let g = Graph::from_edges(0..next, edges).expect("each gadget edge is emitted once");
    let graph = WeightedGraph::new(g, weights).expect("weights are positive");
    Ok(ComposedT5::Gadget { graph, modulator: layout.b_side(), layout })
}

/// Closed-neighborhood weight of the `j`-th elimination (1-based) when the
/// representatives of instance `i` are eliminated first, in node order
/// `order`: the base weight plus the edges of input `i` crossing the gap
/// after the first `j` nodes.
///
/// # Panics
///
/// If `order` is not a permutation of `0..n`, `i` is not an instance, or `j`
/// is outside `1..=n`.
pub fn eweight_closed_form(layout: &CompositionT5, i: usize, order: &[usize], j: usize) -> u64 {
    let n = layout.n;
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    assert!(sorted == (0..n).collect::<Vec<_>>(), "order must permute the nodes");
    assert!((1..=n).contains(&j), "step out of range");
    let placed: VertexSet = order[..j].iter().copied().collect();
    let cut = layout.inputs[i].edges().iter().filter(|(u, v)| placed.contains(u) != placed.contains(v)).count();
    layout.base_weight() + cut as u64
}

/// `(t - 1) n + min tw`, the treewidth of the join of `t` graphs on `n`
/// vertices each.
///
/// # Panics
///
/// If `tws` is empty.
pub fn join_treewidth(tws: &[usize], n: usize) -> usize {
    let min = *tws.iter().min().expect("at least one graph");
    (tws.len() - 1) * n + min
}

/// Edge clique cover of the join of `inputs` (vertex `p` of input `i` is
/// `i * n + p`, with `p` its position in id order): one clique per edge
/// index collecting that edge from every input, then, for each bit `r` and
/// positions `p`, `q`, the clique taking position `p` from inputs whose bit
/// `r` is clear and `q` from the others.
///
/// Inputs must share `n` and `m`.
pub fn edge_clique_cover_join(inputs: &[Graph]) -> Vec<VertexSet> {
    let t = inputs.len();
    let n = inputs.first().map_or(0, Graph::num_vertices);
    let positional: Vec<Graph> = inputs.iter().map(|g| onto_positions(g, &g.vertices().collect::<Vec<_>>())).collect();
    let m = positional.first().map_or(0, Graph::num_edges);
    let edge_lists: Vec<Vec<(Vertex, Vertex)>> = positional.iter().map(Graph::edges).collect();
    let mut cover = Vec::new();
    for j in 0..m {
        cover.push(edge_lists.iter().enumerate().flat_map(|(i, es)| [i * n + es[j].0, i * n + es[j].1]).collect());
    }
    let bits = usize::BITS - (t.max(1) - 1).leading_zeros();
    for r in 0..bits {
        for p in 0..n {
            for q in 0..n {
                cover.push((0..t).map(|i| i * n + if i >> r & 1 == 0 { p } else { q }).collect());
            }
        }
    }
    cover
}

/// Role map of a vertex-cover composition of treewidth instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionT6 {
    pub inputs: Vec<Graph>,
    /// Original vertex id of each position, per input.
    pub node_ids: Vec<Vec<Vertex>>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Edge clique cover of the join; ids are `i * n + position`.
    pub cover: Vec<VertexSet>,
    /// Largest allowed clique size, `2t`.
    pub c: usize,
    /// Weight of each added vertex.
    pub d: u64,
    pub k_prime: u64,
    /// The two added vertices of each cover clique, in cover order.
    pub added_pairs: Vec<(Vertex, Vertex)>,
}

impl CompositionT6 {
    pub fn t(&self) -> usize {
        self.inputs.len()
    }

    /// The added vertices, a vertex cover of the emitted graph.
    pub fn cover_vertices(&self) -> VertexSet {
        self.added_pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// The join of the inputs on ids `i * n + position`.
    pub fn join(&self) -> Graph {
        Graph::join(&self.inputs)
    }

    /// Lifts a decomposition of input `best` (in its original ids) to the
    /// join by adding every other input's vertices to each bag, then hangs a
    /// bag `C + {v}` for each added vertex `v` of clique `C` off a bag that
    /// contains `C`.
    ///
    /// # Panics
    ///
    /// If `td` does not decompose input `best`.
    pub fn transfer_decomposition(&self, best: usize, td: &TreeDecomposition) -> TreeDecomposition {
        let n = self.n;
        let pos: BTreeMap<Vertex, Vertex> = self.node_ids[best].iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let foreign: VertexSet = (0..self.t() * n).filter(|v| v / n != best).collect();
        let mut out = TreeDecomposition::default();
        for (&id, bag) in &td.bags {
            let mut lifted: VertexSet = bag.iter().map(|v| best * n + pos[v]).collect();
            lifted.extend(&foreign);
            out.bags.insert(id, lifted);
        }
        out.tree_edges = td.tree_edges.clone();
        let mut next = td.bags.keys().max().map_or(0, |m| m + 1);
        if out.bags.is_empty() {
            out.bags.insert(next, foreign.clone());
            next += 1;
        }
        for (clique, &(a, b)) in self.cover.iter().zip(&self.added_pairs) {
            let host = *out
                .bags
                .iter()
                .find(|(_, bag)| clique.is_subset(bag))
                .expect("a clique of the join lies in some bag")
                .0;
            for v in [a, b] {
                let mut bag = clique.clone();
                bag.insert(v);
                out.bags.insert(next, bag);
                out.tree_edges.push((host, next));
                next += 1;
            }
        }
        out
    }

    pub fn layout_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "c roles of a vertex-cover composition; vertex ids are 1-based");
        let _ = writeln!(
            s,
            "t {} n {} m {} k {} kprime {} d {} c {}",
            self.t(),
            self.n,
            self.m,
            self.k,
            self.k_prime,
            self.d,
            self.c
        );
        let _ = writeln!(s, "c core <vertex> <instance> <original id>");
        for (i, ids) in self.node_ids.iter().enumerate() {
            for (p, &v) in ids.iter().enumerate() {
                let _ = writeln!(s, "core {} {} {}", i * self.n + p + 1, i + 1, v + 1);
            }
        }
        let _ = writeln!(s, "c cover <vertex> <vertex> <clique vertices...>");
        for (clique, &(a, b)) in self.cover.iter().zip(&self.added_pairs) {
            let members: Vec<String> = clique.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "cover {} {} {}", a + 1, b + 1, members.join(" "));
        }
        s
    }
}

/// Composes treewidth instances sharing `n`, `m`, `k` into a weighted graph
/// with vertex cover of size `2 |cover|`: an edgeless unit-weight copy of the
/// join's vertices plus two weight-`d` vertices seeing each cover clique,
/// `k' = (t - 1) n + k` and `d = k' - 2t`.
pub fn compose_t6(
    inputs: &[(Graph, usize)],
) -> Result<(WeightedGraph, VertexSet, u64, CompositionT6), CompositionError> {
    check_shared(inputs)?;
    let t = inputs.len();
    let (n, m, k) = (inputs[0].0.num_vertices(), inputs[0].0.num_edges(), inputs[0].1);
    let k_prime = ((t - 1) * n + k) as u64;
    let d = k_prime as i64 - 2 * t as i64;
    if d < 1 {
        return Err(CompositionError::Parameters { condition: "d >= 1", k_prime, d });
    }
    if 2 * d as u64 <= k_prime {
        return Err(CompositionError::Parameters { condition: "2d > k'", k_prime, d });
    }
    let d = d as u64;
    let node_ids: Vec<Vec<Vertex>> = inputs.iter().map(|(g, _)| g.vertices().collect()).collect();
    let graphs: Vec<Graph> = inputs.iter().zip(&node_ids).map(|((g, _), o)| onto_positions(g, o)).collect();
    let cover = edge_clique_cover_join(&graphs);

    let core = t * n;
    let mut weights: BTreeMap<Vertex, u64> = (0..core).map(|v| (v, 1)).collect();
    let mut edges = Vec::new();
    let mut added_pairs = Vec::with_capacity(cover.len());
    for (c, clique) in cover.iter().enumerate() {
        let pair = (core + 2 * c, core + 2 * c + 1);
        for v in [pair.0, pair.1] {
            weights.insert(v, d);
            edges.extend(clique.iter().map(|&u| (u, v)));
        }
        added_pairs.push(pair);
    }
    let g = Graph::from_edges(0..core + 2 * cover.len(), edges).expect("cover cliques are sets");
    let graph = WeightedGraph::new(g, weights).expect("weights are positive");
    let layout = CompositionT6 { inputs: graphs, node_ids, n, m, k, cover, c: 2 * t, d, k_prime, added_pairs };
    Ok((graph, layout.cover_vertices(), k_prime, layout))
}
