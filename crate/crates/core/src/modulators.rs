//! Modulators: vertex sets whose removal leaves an edgeless graph or a forest.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModulatorClass {
    /// `G - S` has no edges, so `S` is a vertex cover.
    IndependentSet,
    /// `G - S` is acyclic, so `S` is a feedback vertex set.
    Forest,
}

impl ModulatorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulatorClass::IndependentSet => "independent-set",
            ModulatorClass::Forest => "forest",
        }
    }
}

impl fmt::Display for ModulatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModulatorClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "independent-set" => Ok(ModulatorClass::IndependentSet),
            "forest" => Ok(ModulatorClass::Forest),
            other => Err(format!("unknown modulator class `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("modulator vertex {0} is not in the graph")]
    ModulatorOutsideGraph(Vertex),
    #[error("G - S is not in the class {0}")]
    WrongClass(ModulatorClass),
}

/// A treewidth question `tw(graph) <= k` together with a modulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub modulator: VertexSet,
    pub class: ModulatorClass,
}

impl Instance {
    pub fn new(graph: Graph, k: usize, modulator: VertexSet, class: ModulatorClass) -> Result<Self, InstanceError> {
        if let Some(&v) = modulator.iter().find(|v| !graph.contains(**v)) {
            return Err(InstanceError::ModulatorOutsideGraph(v));
        }
        if !verify_modulator(&graph, &modulator, class) {
            return Err(InstanceError::WrongClass(class));
        }
        Ok(Instance { graph, k, modulator, class })
    }

    /// Builds an instance with a computed 2-approximate modulator.
    pub fn with_approx_modulator(graph: Graph, k: usize, class: ModulatorClass) -> Self {
        let modulator = match class {
            ModulatorClass::IndependentSet => approx_vertex_cover(&graph),
            ModulatorClass::Forest => approx_feedback_vertex_set(&graph),
        };
        Instance { graph, k, modulator, class }
    }

    pub fn is_valid(&self) -> bool {
        self.modulator.iter().all(|&v| self.graph.contains(v))
            && verify_modulator(&self.graph, &self.modulator, self.class)
    }
}

/// Both endpoints of a greedy maximal matching, scanning edges in order.
pub fn approx_vertex_cover(g: &Graph) -> VertexSet {
    let mut cover = VertexSet::new();
    for (u, v) in g.edges() {
        if !cover.contains(&u) && !cover.contains(&v) {
            cover.insert(u);
            cover.insert(v);
        }
    }
    cover
}

/// Whether `g - s` is edgeless (`IndependentSet`) or acyclic (`Forest`).
/// Ids in `s` outside the graph make the answer false.
pub fn verify_modulator(g: &Graph, s: &VertexSet, class: ModulatorClass) -> bool {
    if s.iter().any(|&v| !g.contains(v)) {
        return false;
    }
    let rest = g.without_vertices(s);
    match class {
        ModulatorClass::IndependentSet => rest.num_edges() == 0,
        ModulatorClass::Forest => rest.is_forest(),
    }
}

/// Local-ratio feedback vertex set with unit weights.
///
/// Each round strips vertices of degree at most one, then either lowers the
/// weights along a semidisjoint cycle (a cycle with at most one vertex of
/// degree above two) by their minimum, or lowers every weight by
/// `gamma * (deg - 1)` with `gamma = min w / (deg - 1)`. Vertices reaching
/// weight zero join the solution. A final reverse pass drops members that
/// became redundant. The result is at most twice a minimum solution.
pub fn approx_feedback_vertex_set(g: &Graph) -> VertexSet {
    let mut h = g.clone();
    let mut weight: BTreeMap<Vertex, BigRational> = h.vertices().map(|v| (v, BigRational::one())).collect();
    let mut picked: Vec<Vertex> = Vec::new();

    loop {
        strip_low_degree(&mut h);
        if h.is_empty() {
            break;
        }
        match semidisjoint_cycle(&h) {
            Some(cycle) => {
                let gamma = cycle.iter().map(|v| weight[v].clone()).min().expect("cycle");
                for v in &cycle {
                    *weight.get_mut(v).expect("weighted") -= &gamma;
                }
            }
            None => {
                let ratio = |v: Vertex, w: &BigRational| w / BigRational::from_integer(BigInt::from(h.degree(v) - 1));
                let gamma = h.vertices().map(|v| ratio(v, &weight[&v])).min().expect("nonempty");
                for v in h.vertices() {
                    let d = BigRational::from_integer(BigInt::from(h.degree(v) - 1));
                    *weight.get_mut(&v).expect("weighted") -= &gamma * d;
                }
            }
        }
        let zeros: Vec<Vertex> = h.vertices().filter(|v| weight[v].is_zero()).collect();
        for v in zeros {
            picked.push(v);
            h.detach_vertex(v);
        }
    }

    let mut solution: VertexSet = picked.iter().copied().collect();
    for &v in picked.iter().rev() {
        solution.remove(&v);
        if !g.without_vertices(&solution).is_forest() {
            solution.insert(v);
        }
    }
    solution
}

fn strip_low_degree(h: &mut Graph) {
    let mut stack: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) <= 1).collect();
    while let Some(v) = stack.pop() {
        if !h.contains(v) {
            continue;
        }
        let ns: Vec<Vertex> = h.neighbors(v).iter().copied().collect();
        h.detach_vertex(v);
        stack.extend(ns.into_iter().filter(|&u| h.degree(u) <= 1));
    }
}

/// A cycle all of whose vertices but at most one have degree two. Requires
/// minimum degree two.
fn semidisjoint_cycle(h: &Graph) -> Option<Vec<Vertex>> {
    let deg2: VertexSet = h.vertices().filter(|&v| h.degree(v) == 2).collect();
    let others: VertexSet = h.vertex_set().difference(&deg2).copied().collect();
    for run in h.components_avoiding(&others) {
        let exits: Vec<Vertex> =
            run.iter().flat_map(|&v| h.neighbors(v).iter().copied()).filter(|u| !run.contains(u)).collect();
        match exits.as_slice() {
            [] => return Some(run.into_iter().collect()),
            [a, b] if a == b => {
                let mut cycle: Vec<Vertex> = run.into_iter().collect();
                cycle.push(*a);
                return Some(cycle);
            }
            _ => {}
        }
    }
    None
}
