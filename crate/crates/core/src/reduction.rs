//! Rule identities, trace steps, and outcome replay shared by both kernels.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, GraphError, Vertex};
use crate::modulators::{Instance, ModulatorClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    VcTrivialYes,
    VcSimplicialNo,
    VcSimplicialRemove,
    VcCommonNeighbors,
    FvsTrivialYes,
    FvsAlmostSimplicialNo,
    FvsIsolatedRemove,
    FvsAlmostSimplicialContract,
    FvsBoundaryNo,
    FvsBoundaryContract,
    FvsDisjointPaths,
    FvsAlmostCliqueSeparator,
    FvsPathContract,
    FvsPathRemove,
    FvsPathRemoveNo,
    FvsPathCutoff,
}

impl Rule {
    pub const ALL: [Rule; 16] = [
        Rule::VcTrivialYes,
        Rule::VcSimplicialNo,
        Rule::VcSimplicialRemove,
        Rule::VcCommonNeighbors,
        Rule::FvsTrivialYes,
        Rule::FvsAlmostSimplicialNo,
        Rule::FvsIsolatedRemove,
        Rule::FvsAlmostSimplicialContract,
        Rule::FvsBoundaryNo,
        Rule::FvsBoundaryContract,
        Rule::FvsDisjointPaths,
        Rule::FvsAlmostCliqueSeparator,
        Rule::FvsPathContract,
        Rule::FvsPathRemove,
        Rule::FvsPathRemoveNo,
        Rule::FvsPathCutoff,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::VcTrivialYes => "vc-trivial-yes",
            Rule::VcSimplicialNo => "vc-simplicial-no",
            Rule::VcSimplicialRemove => "vc-simplicial-remove",
            Rule::VcCommonNeighbors => "vc-common-neighbors",
            Rule::FvsTrivialYes => "fvs-trivial-yes",
            Rule::FvsAlmostSimplicialNo => "fvs-almost-simplicial-no",
            Rule::FvsIsolatedRemove => "fvs-isolated-remove",
            Rule::FvsAlmostSimplicialContract => "fvs-almost-simplicial-contract",
            Rule::FvsBoundaryNo => "fvs-boundary-no",
            Rule::FvsBoundaryContract => "fvs-boundary-contract",
            Rule::FvsDisjointPaths => "fvs-disjoint-paths",
            Rule::FvsAlmostCliqueSeparator => "fvs-almost-clique-separator",
            Rule::FvsPathContract => "fvs-path-contract",
            Rule::FvsPathRemove => "fvs-path-remove",
            Rule::FvsPathRemoveNo => "fvs-path-remove-no",
            Rule::FvsPathCutoff => "fvs-path-cutoff",
        }
    }

    pub fn from_id(id: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id() == id)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    DecidedYes,
    DecidedNo,
    Reduced,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DecidedYes => "YES",
            Verdict::DecidedNo => "NO",
            Verdict::Reduced => "REDUCED",
        })
    }
}

/// The graph change a rule performs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Action {
    RemoveVertex {
        vertex: Vertex,
    },
    AddEdges {
        edges: Vec<Edge>,
    },
    /// Merge adjacent `a` and `b` into `into`, which is `a`, `b`, or fresh.
    Contract {
        a: Vertex,
        b: Vertex,
        into: Vertex,
    },
    Decide {
        verdict: Verdict,
    },
}

impl Instance {
    /// Applies an action, keeping the modulator in step: a removed vertex
    /// leaves `S`, and a contraction touching `S` puts its result in `S`.
    pub fn apply(&self, action: &Action) -> Result<Instance, GraphError> {
        let mut next = self.clone();
        match *action {
            Action::RemoveVertex { vertex } => {
                next.graph = self.graph.without_vertex(vertex)?;
                next.modulator.remove(&vertex);
            }
            Action::AddEdges { ref edges } => {
                next.graph = self.graph.with_edges(edges)?;
            }
            Action::Contract { a, b, into } => {
                next.graph = self.graph.contract_edge(a, b, into)?;
                if next.modulator.remove(&a) | next.modulator.remove(&b) {
                    next.modulator.insert(into);
                }
            }
            Action::Decide { .. } => {}
        }
        Ok(next)
    }
}

/// One rule application with the edge-set difference it caused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    /// Vertices the rule inspected to fire, in rule-specific order.
    pub vertices: Vec<Vertex>,
    pub action: Action,
    pub edges_added: Vec<Edge>,
    pub edges_removed: Vec<Edge>,
    /// Change of the target; every rule here keeps it.
    pub k_delta: i64,
}

impl TraceStep {
    pub(crate) fn decide(rule: Rule, vertices: Vec<Vertex>, verdict: Verdict) -> TraceStep {
        TraceStep {
            rule,
            vertices,
            action: Action::Decide { verdict },
            edges_added: Vec::new(),
            edges_removed: Vec::new(),
            k_delta: 0,
        }
    }

    pub(crate) fn change(rule: Rule, vertices: Vec<Vertex>, action: Action) -> TraceStep {
        TraceStep { rule, vertices, action, edges_added: Vec::new(), edges_removed: Vec::new(), k_delta: 0 }
    }

    pub fn verdict(&self) -> Option<Verdict> {
        match self.action {
            Action::Decide { verdict } => Some(verdict),
            _ => None,
        }
    }
}

pub(crate) fn edge_delta(before: &Graph, after: &Graph) -> (Vec<Edge>, Vec<Edge>) {
    let b: BTreeSet<Edge> = before.edge_set();
    let a: BTreeSet<Edge> = after.edge_set();
    (a.difference(&b).copied().collect(), b.difference(&a).copied().collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub verdict: Verdict,
    /// Present iff the verdict is `Reduced`.
    pub instance: Option<Instance>,
    pub trace: Vec<TraceStep>,
    pub k_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("step {step}: {source}")]
    Graph { step: usize, source: GraphError },
    #[error("step {step}: recorded edge delta does not match the replayed one")]
    EdgeDelta { step: usize },
    #[error("step {step}: decision before the end of the trace")]
    EarlyDecision { step: usize },
    #[error("replayed instance differs from the recorded output")]
    Mismatch,
    #[error("verdict does not match the final trace step")]
    Verdict,
}

impl ReductionOutcome {
    /// Replays the trace on `original` and checks every recorded edge delta
    /// and the final instance.
    pub fn replay(&self, original: &Instance) -> Result<(), ReplayError> {
        let mut cur = original.clone();
        let last = self.trace.len().saturating_sub(1);
        for (i, step) in self.trace.iter().enumerate() {
            if step.verdict().is_some() && i != last {
                return Err(ReplayError::EarlyDecision { step: i });
            }
            let next = cur.apply(&step.action).map_err(|source| ReplayError::Graph { step: i, source })?;
            let (added, removed) = edge_delta(&cur.graph, &next.graph);
            if added != step.edges_added || removed != step.edges_removed {
                return Err(ReplayError::EdgeDelta { step: i });
            }
            cur = next;
        }
        let decided = self.trace.last().and_then(TraceStep::verdict);
        match (self.verdict, decided, &self.instance) {
            (Verdict::Reduced, None, Some(out)) => {
                if *out == cur {
                    Ok(())
                } else {
                    Err(ReplayError::Mismatch)
                }
            }
            (v, Some(d), None) if v == d => Ok(()),
            _ => Err(ReplayError::Verdict),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("this kernel needs a {expected} modulator, the instance has {found}")]
    WrongClass { expected: ModulatorClass, found: ModulatorClass },
    #[error("the modulator does not leave a graph in the class {0}")]
    InvalidModulator(ModulatorClass),
}

pub(crate) fn check_instance(inst: &Instance, expected: ModulatorClass) -> Result<(), KernelError> {
    if inst.class != expected {
        return Err(KernelError::WrongClass { expected, found: inst.class });
    }
    if !inst.is_valid() {
        return Err(KernelError::InvalidModulator(expected));
    }
    Ok(())
}

/// Runs `next_step` to a fixpoint, recording each step with its edge delta.
pub(crate) fn drive(inst: &Instance, mut next_step: impl FnMut(&Instance) -> Option<TraceStep>) -> ReductionOutcome {
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    while let Some(mut step) = next_step(&cur) {
        if let Some(verdict) = step.verdict() {
            trace.push(step);
            return ReductionOutcome { verdict, instance: None, trace, k_prime: inst.k };
        }
        let next = cur.apply(&step.action).expect("rules emit valid actions");
        let (added, removed) = edge_delta(&cur.graph, &next.graph);
        step.edges_added = added;
        step.edges_removed = removed;
        debug_assert!(next.is_valid(), "{} broke the modulator", step.rule);
        trace.push(step);
        cur = next;
    }
    ReductionOutcome { verdict: Verdict::Reduced, k_prime: cur.k, instance: Some(cur), trace }
}
