//! Kernel for treewidth parameterized by a feedback vertex set, and the
//! almost-simplicial preprocessing heuristic for the optimization version.
//!
//! Priority order of the decision problem's rules:
//!
//! 1. trivial yes when `k >= |S| + 1`;
//! 2. an almost simplicial vertex of degree at least `k + 2` answers no;
//! 3. isolated vertices are removed, almost simplicial vertices of degree at
//!    most `k` are contracted into their special neighbor, and those of
//!    degree exactly `k + 1` either answer no or are contracted into a fresh
//!    vertex, depending on a connectivity test;
//! 4. a nonadjacent pair touching `S` joined by `k + 1` internally disjoint
//!    paths receives an edge;
//! 5. a minimal almost clique separator with at most one vertex outside `S`
//!    is completed into a clique;
//! 6. the clique-seeing path rules: contract, remove the middle of a
//!    separating five-vertex path, and reject paths of `6k + 6` or more
//!    interior vertices.
//!
//! Special neighbors and candidate vertices are chosen by lowest id.

use crate::graph::{count_disjoint_paths, edge, minimal_almost_clique_separators, Graph, Vertex, VertexSet};
use crate::modulators::{Instance, ModulatorClass};
use crate::reduction::{check_instance, drive, Action, KernelError, ReductionOutcome, Rule, TraceStep, Verdict};

/// A path `v0, v1, .., vr, v(r+1)` whose interior sees exactly the clique
/// `seen_clique` besides its own path neighbors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CliqueSeeingPath {
    /// All path vertices, endpoints included.
    pub vertices: Vec<Vertex>,
    pub seen_clique: VertexSet,
}

impl CliqueSeeingPath {
    /// Number of interior vertices.
    pub fn r(&self) -> usize {
        self.vertices.len() - 2
    }

    pub fn interior(&self) -> &[Vertex] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().expect("path"))
    }

    /// Checks both conditions of the definition on `g` and returns the seen
    /// clique. Needs at least one interior vertex.
    pub fn check(g: &Graph, vertices: &[Vertex]) -> Option<VertexSet> {
        if vertices.len() < 3 || vertices.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
            return None;
        }
        let on_path: VertexSet = vertices.iter().copied().collect();
        if on_path.len() != vertices.len() {
            return None;
        }
        let mut seen = VertexSet::new();
        for &v in &vertices[1..vertices.len() - 1] {
            seen.extend(g.neighbors(v).iter().filter(|u| !on_path.contains(u)));
        }
        if !g.is_clique(&seen) {
            return None;
        }
        for i in 1..vertices.len() - 1 {
            let allowed = |u: &Vertex| *u == vertices[i - 1] || *u == vertices[i + 1] || seen.contains(u);
            if !g.neighbors(vertices[i]).iter().all(allowed) {
                return None;
            }
        }
        Some(seen)
    }
}

/// Outcome of the almost-simplicial rules for `v` with special neighbor `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AlmostSimplicial {
    No,
    ContractIntoNeighbor,
    ContractFresh,
}

/// True if every `x` in `N(v) - w` is adjacent to `w` or reaches it in
/// `g - (N[v] - {x, w})`.
fn boundary_test(g: &Graph, v: Vertex, w: Vertex) -> bool {
    let closed = g.closed_neighbors(v);
    g.neighbors(v).iter().filter(|&&x| x != w).all(|&x| {
        if g.has_edge(x, w) {
            return true;
        }
        let mut blocked = closed.clone();
        blocked.remove(&x);
        blocked.remove(&w);
        g.connected_avoiding(x, w, &blocked)
    })
}

fn almost_simplicial_outcome(g: &Graph, v: Vertex, w: Vertex, k: usize) -> AlmostSimplicial {
    let d = g.degree(v);
    if d >= k + 2 || (d == k + 1 && boundary_test(g, v, w)) {
        AlmostSimplicial::No
    } else if d <= k {
        AlmostSimplicial::ContractIntoNeighbor
    } else {
        AlmostSimplicial::ContractFresh
    }
}

/// Yes once `k >= |S| + 1`: `S` plus a width-one decomposition of the forest.
pub fn rule_trivial_fvs(inst: &Instance) -> Option<TraceStep> {
    (inst.k > inst.modulator.len()).then(|| TraceStep::decide(Rule::FvsTrivialYes, Vec::new(), Verdict::DecidedYes))
}

/// The almost-simplicial rules, isolated-vertex removal included.
pub fn rule_almost_simplicial(inst: &Instance) -> Option<TraceStep> {
    let g = &inst.graph;
    let k = inst.k;
    let candidates: Vec<(Vertex, Vertex)> =
        g.vertices().filter_map(|v| g.special_neighbor(v).map(|w| (v, w))).collect();
    if let Some(&(v, w)) = candidates.iter().find(|&&(v, _)| g.degree(v) >= k + 2) {
        return Some(TraceStep::decide(Rule::FvsAlmostSimplicialNo, vec![v, w], Verdict::DecidedNo));
    }
    let isolated = g.vertices().find(|&v| g.degree(v) == 0);
    let first = candidates.first().copied();
    match (isolated, first) {
        (Some(i), f) if f.is_none_or(|(v, _)| i < v) => {
            Some(TraceStep::change(Rule::FvsIsolatedRemove, vec![i], Action::RemoveVertex { vertex: i }))
        }
        (_, Some((v, w))) => Some(match almost_simplicial_outcome(g, v, w, k) {
            AlmostSimplicial::No => TraceStep::decide(Rule::FvsBoundaryNo, vec![v, w], Verdict::DecidedNo),
            AlmostSimplicial::ContractIntoNeighbor => TraceStep::change(
                Rule::FvsAlmostSimplicialContract,
                vec![v, w],
                Action::Contract { a: v, b: w, into: w },
            ),
            AlmostSimplicial::ContractFresh => TraceStep::change(
                Rule::FvsBoundaryContract,
                vec![v, w],
                Action::Contract { a: v, b: w, into: g.fresh_vertex() },
            ),
        }),
        _ => None,
    }
}

/// Joins a nonadjacent pair touching `S` that has `k + 1` internally
/// vertex-disjoint paths.
pub fn rule_disjoint_paths(inst: &Instance) -> Option<TraceStep> {
    let g = &inst.graph;
    let s = &inst.modulator;
    let need = inst.k + 1;
    for v in g.vertices() {
        for w in g.vertices().filter(|&w| w > v) {
            if g.has_edge(v, w) || !(s.contains(&v) || s.contains(&w)) {
                continue;
            }
            if g.degree(v).min(g.degree(w)) < need {
                continue;
            }
            if count_disjoint_paths(g, v, w, need).expect("vertices exist") >= need {
                return Some(TraceStep::change(
                    Rule::FvsDisjointPaths,
                    vec![v, w],
                    Action::AddEdges { edges: vec![edge(v, w)] },
                ));
            }
        }
    }
    None
}

/// Completes a non-clique minimal almost clique separator with at most one
/// vertex outside `S`.
pub fn rule_almost_clique_separator(inst: &Instance) -> Option<TraceStep> {
    let g = &inst.graph;
    minimal_almost_clique_separators(g)
        .into_iter()
        .find(|q| q.vertices.difference(&inst.modulator).count() <= 1 && !q.is_clique_in(g))
        .map(|q| {
            let edges = g.missing_edges(&q.vertices);
            TraceStep::change(
                Rule::FvsAlmostCliqueSeparator,
                q.vertices.into_iter().collect(),
                Action::AddEdges { edges },
            )
        })
}

/// Clique-seeing paths inside the forest `G - S` that see a clique in `S`.
///
/// Interior vertices have exactly two forest neighbors, so every such path is
/// a contiguous segment of a maximal run of forest-degree-two vertices,
/// extended by one forest vertex on each side. All segments of all runs are
/// listed in both orientations.
pub fn find_clique_seeing_paths(inst: &Instance) -> Vec<CliqueSeeingPath> {
    let g = &inst.graph;
    let s = &inst.modulator;
    let forest_nbrs =
        |v: Vertex| -> Vec<Vertex> { g.neighbors(v).iter().copied().filter(|u| !s.contains(u)).collect() };
    let deg2: VertexSet = g.vertices().filter(|v| !s.contains(v) && forest_nbrs(*v).len() == 2).collect();
    let blocked: VertexSet = g.vertex_set().difference(&deg2).copied().collect();

    let mut out = Vec::new();
    for run in g.components_avoiding(&blocked) {
        let seq = run_with_ends(&run, &forest_nbrs);
        let m = seq.len() - 2;
        for i in 1..=m {
            for j in i..=m {
                let forward: Vec<Vertex> = seq[i - 1..=j + 1].to_vec();
                if let Some(x) = CliqueSeeingPath::check(g, &forward) {
                    let backward: Vec<Vertex> = forward.iter().rev().copied().collect();
                    out.push(CliqueSeeingPath { vertices: forward, seen_clique: x.clone() });
                    out.push(CliqueSeeingPath { vertices: backward, seen_clique: x });
                }
            }
        }
    }
    out
}

/// Orders a run of forest-degree-two vertices and adds the forest neighbor
/// beyond each end.
fn run_with_ends(run: &VertexSet, forest_nbrs: &impl Fn(Vertex) -> Vec<Vertex>) -> Vec<Vertex> {
    let start = *run
        .iter()
        .find(|&&v| forest_nbrs(v).iter().filter(|u| run.contains(u)).count() <= 1)
        .expect("a forest run is a path");
    let outside = |v: Vertex| forest_nbrs(v).into_iter().filter(|u| !run.contains(u));
    let mut seq = vec![outside(start).min().expect("run end leaves the run")];
    let mut prev = None;
    let mut cur = start;
    loop {
        seq.push(cur);
        let next = forest_nbrs(cur).into_iter().find(|u| run.contains(u) && Some(*u) != prev);
        match next {
            Some(n) => {
                prev = Some(cur);
                cur = n;
            }
            None => break,
        }
    }
    let first = seq[0];
    let tail = outside(cur).filter(|&u| run.len() > 1 || u != first).max().expect("run end leaves the run");
    seq.push(tail);
    seq
}

fn avoids_modulator(inst: &Instance, p: &CliqueSeeingPath) -> bool {
    p.vertices.iter().all(|v| !inst.modulator.contains(v)) && p.seen_clique.is_subset(&inst.modulator)
}

/// Contracts `v_r` into `v_(r+1)` when `|X| <= k - 2` and every clique vertex
/// `v_r` sees is already seen earlier on the path.
pub fn rule_path_contract(inst: &Instance, p: &CliqueSeeingPath) -> Option<TraceStep> {
    if !avoids_modulator(inst, p) || p.seen_clique.len() + 2 > inst.k {
        return None;
    }
    let g = &inst.graph;
    let x = &p.seen_clique;
    let interior = p.interior();
    let (last, earlier) = interior.split_last().expect("interior");
    let seen_before: VertexSet = earlier.iter().flat_map(|v| g.neighbors(*v).intersection(x).copied()).collect();
    if !g.neighbors(*last).intersection(x).all(|u| seen_before.contains(u)) {
        return None;
    }
    let end = p.endpoints().1;
    Some(TraceStep::change(Rule::FvsPathContract, p.vertices.clone(), Action::Contract { a: *last, b: end, into: end }))
}

/// Whether `G[{v1, v2, v3} + X]` has treewidth above `k`. Both `v1` and
/// `v3` are almost simplicial there with special neighbor `v2`; reducing
/// them leaves a clique on `X + {v2}` unless a rule answers no first.
///
/// # Panics
///
/// If `p` does not have exactly five vertices.
pub fn path_core_exceeds(g: &Graph, p: &CliqueSeeingPath, k: usize) -> bool {
    let [_, v1, v2, v3, _] = p.vertices[..] else {
        panic!("five-vertex path expected");
    };
    let mut core = p.seen_clique.clone();
    core.extend([v1, v2, v3]);
    let mut h = g.induced(&core);
    for v in [v1, v3] {
        match almost_simplicial_outcome(&h, v, v2, k) {
            AlmostSimplicial::No => return true,
            _ => h = h.contract_edge(v, v2, v2).expect("path edge"),
        }
    }
    debug_assert!(h.is_clique(&h.vertex_set()));
    h.num_vertices() > k + 1
}

/// For a five-vertex path whose middle plus `X` separates its ends: answer
/// no if the middle part has treewidth above `k`, else remove `v2`. Assumes
/// the separator-completion rule is exhausted.
pub fn rule_path_remove(inst: &Instance, p: &CliqueSeeingPath) -> Option<TraceStep> {
    if p.vertices.len() != 5 || !avoids_modulator(inst, p) {
        return None;
    }
    let g = &inst.graph;
    let (v0, v4) = p.endpoints();
    let mut sep = p.seen_clique.clone();
    sep.extend(p.interior());
    if g.connected_avoiding(v0, v4, &sep) {
        return None;
    }
    Some(if path_core_exceeds(g, p, inst.k) {
        TraceStep::decide(Rule::FvsPathRemoveNo, p.vertices.clone(), Verdict::DecidedNo)
    } else {
        let v2 = p.vertices[2];
        TraceStep::change(Rule::FvsPathRemove, p.vertices.clone(), Action::RemoveVertex { vertex: v2 })
    })
}

/// No once a path has at least `6k + 6` interior vertices. Assumes every
/// earlier rule is exhausted.
pub fn rule_cutoff(inst: &Instance, p: &CliqueSeeingPath) -> Option<TraceStep> {
    (avoids_modulator(inst, p) && p.r() >= 6 * inst.k + 6)
        .then(|| TraceStep::decide(Rule::FvsPathCutoff, p.vertices.clone(), Verdict::DecidedNo))
}

fn next_step(inst: &Instance) -> Option<TraceStep> {
    if let Some(step) = rule_trivial_fvs(inst)
        .or_else(|| rule_almost_simplicial(inst))
        .or_else(|| rule_disjoint_paths(inst))
        .or_else(|| rule_almost_clique_separator(inst))
    {
        return Some(step);
    }
    let paths = find_clique_seeing_paths(inst);
    paths
        .iter()
        .find_map(|p| rule_path_contract(inst, p))
        .or_else(|| paths.iter().find_map(|p| rule_path_remove(inst, p)))
        .or_else(|| paths.iter().find_map(|p| rule_cutoff(inst, p)))
}

/// Applies the rules exhaustively.
pub fn kernelize_fvs(inst: &Instance) -> Result<ReductionOutcome, KernelError> {
    check_instance(inst, ModulatorClass::Forest)?;
    Ok(drive(inst, next_step))
}

/// Lower bound carried by the heuristic; it never decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HeuristicState {
    pub low: usize,
}

/// Contracts every almost simplicial vertex into its special neighbor while
/// raising `low`, so that `tw(g) = max(low, tw(reduced))`.
pub fn heuristic_low_mode(g: &Graph) -> (Graph, HeuristicState) {
    let mut h = g.clone();
    let mut state = HeuristicState::default();
    loop {
        let Some((v, w)) = h.vertices().find_map(|v| h.special_neighbor(v).map(|w| (v, w))) else {
            break;
        };
        let d = h.degree(v);
        state.low = state.low.max(d - 1);
        if d - 1 == state.low && boundary_test(&h, v, w) {
            state.low += 1;
        }
        h = h.contract_edge(v, w, w).expect("special neighbor is adjacent");
    }
    (h, state)
}
