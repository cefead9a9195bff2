//! Kernel for treewidth parameterized by a vertex cover.
//!
//! Rules in priority order: trivial yes, simplicial of high degree (no),
//! simplicial of low degree (remove), common-neighbor completion. Ties go to
//! the lowest vertex id. The target `k` never changes.

use crate::graph::{edge, Vertex};
use crate::modulators::{Instance, ModulatorClass};
use crate::reduction::{check_instance, drive, Action, KernelError, ReductionOutcome, Rule, TraceStep, Verdict};

/// Yes once `k >= |S|`: `S` plus any one vertex bounds every bag.
pub fn rule_trivial_vc(inst: &Instance) -> Option<TraceStep> {
    (inst.k >= inst.modulator.len()).then(|| TraceStep::decide(Rule::VcTrivialYes, Vec::new(), Verdict::DecidedYes))
}

/// A simplicial vertex of degree above `k` closes a clique of size `k + 2`;
/// one of degree at most `k` can be removed.
pub fn rule_simplicial(inst: &Instance) -> Option<TraceStep> {
    let g = &inst.graph;
    let simplicial: Vec<Vertex> = g.vertices().filter(|&v| g.is_simplicial(v).expect("vertex exists")).collect();
    if let Some(&v) = simplicial.iter().find(|&&v| g.degree(v) > inst.k) {
        return Some(TraceStep::decide(Rule::VcSimplicialNo, vec![v], Verdict::DecidedNo));
    }
    simplicial
        .first()
        .map(|&v| TraceStep::change(Rule::VcSimplicialRemove, vec![v], Action::RemoveVertex { vertex: v }))
}

/// Joins a nonadjacent pair touching `S` that shares at least `k + 1`
/// neighbors.
pub fn rule_common_neighbors(inst: &Instance) -> Option<TraceStep> {
    let g = &inst.graph;
    let s = &inst.modulator;
    for v in g.vertices() {
        for w in g.vertices().filter(|&w| w > v) {
            if g.has_edge(v, w) || !(s.contains(&v) || s.contains(&w)) {
                continue;
            }
            let common = g.neighbors(v).intersection(g.neighbors(w)).count();
            if common > inst.k {
                return Some(TraceStep::change(
                    Rule::VcCommonNeighbors,
                    vec![v, w],
                    Action::AddEdges { edges: vec![edge(v, w)] },
                ));
            }
        }
    }
    None
}

fn next_step(inst: &Instance) -> Option<TraceStep> {
    rule_trivial_vc(inst).or_else(|| rule_simplicial(inst)).or_else(|| rule_common_neighbors(inst))
}

/// Applies the rules exhaustively. A reduced output has at most
/// `l + k * l * (l - 1) / 2` vertices for `l = |S|`.
pub fn kernelize_vc(inst: &Instance) -> Result<ReductionOutcome, KernelError> {
    check_instance(inst, ModulatorClass::IndependentSet)?;
    Ok(drive(inst, next_step))
}

/// The vertex bound a reduced instance satisfies.
pub fn vc_size_bound(l: usize, k: usize) -> usize {
    l + k * l * l.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn inst(g: Graph, k: usize, s: &[Vertex]) -> Instance {
        Instance::new(g, k, s.iter().copied().collect(), ModulatorClass::IndependentSet).unwrap()
    }

    #[test]
    fn simplicial_examples() {
        let step = rule_simplicial(&inst(Graph::complete(4), 3, &[0, 1, 2])).unwrap();
        assert_eq!(step.action, Action::RemoveVertex { vertex: 0 });
        let step = rule_simplicial(&inst(Graph::complete(4), 2, &[0, 1, 2])).unwrap();
        assert_eq!(step.verdict(), Some(Verdict::DecidedNo));
        assert!(rule_simplicial(&inst(Graph::cycle(4), 2, &[0, 2])).is_none());
    }

    #[test]
    fn common_neighbor_examples() {
        // K_{2,3}: vertices 0, 1 on the small side, 2, 3, 4 on the large side.
        let g = Graph::complete_bipartite(2, 3);
        let step = rule_common_neighbors(&inst(g.clone(), 2, &[0, 1])).unwrap();
        assert_eq!(step.action, Action::AddEdges { edges: vec![(0, 1)] });
        assert!(rule_common_neighbors(&inst(g.clone(), 3, &[0, 1])).is_none());
        // The pair must touch the cover: with the large side as S it does not.
        assert!(rule_common_neighbors(&inst(g, 2, &[2, 3, 4])).is_none());
    }

    #[test]
    fn trivial_examples() {
        let g = Graph::path(6);
        assert!(rule_trivial_vc(&inst(g.clone(), 3, &[1, 3, 5])).is_some());
        assert!(rule_trivial_vc(&inst(g, 2, &[1, 3, 5])).is_none());
        assert!(rule_trivial_vc(&inst(Graph::empty(3), 0, &[])).is_some());
    }

    #[test]
    fn driver_examples() {
        let out = kernelize_vc(&inst(Graph::complete(4), 3, &[0, 1, 2])).unwrap();
        assert_eq!(out.verdict, Verdict::DecidedYes);
        let out = kernelize_vc(&inst(Graph::cycle(4), 1, &[0, 2])).unwrap();
        assert_eq!(out.verdict, Verdict::DecidedNo);
        let star = Graph::star(5);
        assert_eq!(kernelize_vc(&inst(star.clone(), 0, &[0])).unwrap().verdict, Verdict::DecidedNo);
        assert_eq!(kernelize_vc(&inst(star, 1, &[0])).unwrap().verdict, Verdict::DecidedYes);
    }

    #[test]
    fn driver_rejects_forest_instances() {
        let i = Instance::new(Graph::path(3), 1, [1].into(), ModulatorClass::Forest).unwrap();
        assert!(matches!(kernelize_vc(&i), Err(KernelError::WrongClass { .. })));
    }

    #[test]
    fn reduced_output_replays() {
        // Two hubs sharing three private neighbors plus a pendant path.
        let g = Graph::from_edge_list(7, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (0, 5), (5, 6), (1, 6)])
            .unwrap();
        let s = crate::modulators::approx_vertex_cover(&g);
        let i = Instance::new(g, 2, s, ModulatorClass::IndependentSet).unwrap();
        let out = kernelize_vc(&i).unwrap();
        out.replay(&i).unwrap();
        if let Some(reduced) = &out.instance {
            assert!(reduced.graph.num_vertices() <= vc_size_bound(i.modulator.len(), i.k));
            assert_eq!(kernelize_vc(reduced).unwrap().trace, Vec::new());
        }
    }
}
