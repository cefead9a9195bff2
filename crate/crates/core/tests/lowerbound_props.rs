mod common;

use rand::seq::SliceRandom;
use rand::Rng;
use twkernel::exact::*;
use twkernel::graph::{Graph, Vertex, VertexSet};
use twkernel::lowerbound::*;
use twkernel::random::*;

/// Two subcubic inputs sharing degree counts: one random, one a
/// degree-preserving shuffle of it.
fn t5_pair(rng: &mut impl Rng, n: usize) -> (Graph, Graph) {
    let m = rng.gen_range(1..=n);
    let g = random_subcubic(rng, n, m);
    let h = degree_preserving_shuffle(rng, &g, 10);
    (g, h)
}

fn gadget(inputs: &[(Graph, usize)]) -> (twkernel::graph::WeightedGraph, CompositionT5) {
    match compose_t5(inputs).unwrap() {
        ComposedT5::Gadget { graph, layout, .. } => (graph, layout),
        ComposedT5::Solved { .. } => panic!("expected a gadget"),
    }
}

/// Eliminates instance `i`'s representatives in node order `order`, then
/// everything else, and returns the recorded per-step weights.
fn simulate(wg: &twkernel::graph::WeightedGraph, layout: &CompositionT5, i: usize, order: &[usize]) -> Vec<u64> {
    let mut elim: Vec<Vertex> = order.iter().map(|&j| layout.a_reps[i][j]).collect();
    let rest: Vec<Vertex> = wg.graph().vertices().filter(|v| !elim.contains(v)).collect();
    elim.extend(rest);
    let pi = EliminationOrdering::new(wg.graph(), elim).unwrap();
    elimination_cost(wg, &pi).unwrap().step_weights
}

#[test]
fn closed_form_matches_simulated_elimination() {
    let mut samples = 0;
    for case in 0..60 {
        let mut rng = case_rng(301, case);
        let n = if case % 2 == 0 { 4 } else { 6 };
        let (g, h) = t5_pair(&mut rng, n);
        let (wg, layout) = gadget(&[(g, 1), (h, 1)]);
        for _ in 0..3 {
            let i = rng.gen_range(0..2);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let steps = simulate(&wg, &layout, i, &order);
            for j in 1..=n {
                assert_eq!(eweight_closed_form(&layout, i, &order, j), steps[j - 1], "case {case} j {j}");
            }
            samples += 1;
        }
    }
    assert!(samples >= 100);
}

#[test]
fn gadget_structure() {
    for case in 0..30 {
        let mut rng = case_rng(302, case);
        let (g, h) = t5_pair(&mut rng, 5);
        let inputs = vec![(g.clone(), 1), (h, 1), (g, 1)];
        let (wg, layout) = gadget(&inputs);
        let gr = wg.graph();
        let (a, b) = (layout.a_side(), layout.b_side());
        assert!(gr.is_clique(&a) && gr.is_clique(&b));
        assert_eq!(a.len() + b.len(), gr.num_vertices());
        assert_eq!(layout.t(), 4);
        // Padding repeats the last input.
        assert_eq!(layout.inputs[3], layout.inputs[2]);
        let n = layout.n as u64;
        for (i, reps) in layout.a_reps.iter().enumerate() {
            let d = layout.dummies[i];
            let dummy_out: VertexSet = gr.neighbors(d).difference(&a).copied().collect();
            for (j, &v) in reps.iter().enumerate() {
                assert_eq!(wg.weight(v), n.pow(3));
                let out: VertexSet = gr.neighbors(v).difference(&a).copied().collect();
                let bits = layout.b_instance.iter().filter(|(x, y)| out.contains(x) || out.contains(y)).count();
                assert_eq!(bits as u32, layout.log_t);
                assert!(out.contains(&layout.b_nodes[j]));
                assert!(out.is_subset(&dummy_out) && out != dummy_out);
            }
            assert_eq!(wg.weight(d), n.pow(6));
        }
        for (j, &x) in layout.b_nodes.iter().enumerate() {
            assert_eq!(wg.weight(x), n.pow(3) - layout.inputs[0].degree(j) as u64);
        }
        assert!(layout.b_edges.values().all(|&e| wg.weight(e) == 2));
        assert_eq!(layout.k_prime, layout.base_weight());
    }
}

#[test]
fn gadget_answers_the_or_of_its_inputs() {
    let p6 = Graph::path(6);
    let p2c4 = Graph::path(2).disjoint_union(&Graph::cycle(4));
    assert_eq!(cutwidth_exact(&p6).unwrap(), 1);
    assert_eq!(cutwidth_exact(&p2c4).unwrap(), 2);
    for (x, y) in [(&p6, &p6), (&p6, &p2c4), (&p2c4, &p6), (&p2c4, &p2c4)] {
        let expected = cutwidth_exact(x).unwrap().min(cutwidth_exact(y).unwrap()) <= 1;
        let (wg, layout) = gadget(&[(x.clone(), 1), (y.clone(), 1)]);
        let wtw = weighted_treewidth_cobipartite(&wg, &layout.a_side(), &layout.b_side()).unwrap();
        assert_eq!(wtw <= layout.k_prime, expected);
    }
}

#[test]
fn gadget_answers_random_small_ors() {
    for case in 0..20 {
        let mut rng = case_rng(303, case);
        let (g, h) = t5_pair(&mut rng, 4);
        let k = rng.gen_range(1..=2);
        let expected = cutwidth_exact(&g).unwrap().min(cutwidth_exact(&h).unwrap()) <= k;
        let (wg, layout) = gadget(&[(g, k), (h, k)]);
        let wtw = weighted_treewidth_cobipartite(&wg, &layout.a_side(), &layout.b_side()).unwrap();
        assert_eq!(wtw <= layout.k_prime, expected, "case {case}");
    }
}

#[test]
fn cover_covers_every_join_edge() {
    for case in 0..120 {
        let mut rng = case_rng(304, case);
        let n = rng.gen_range(1..=5);
        let t = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let inputs: Vec<Graph> = (0..t)
            .map(|_| {
                let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                pairs.shuffle(&mut rng);
                Graph::from_edge_list(n, &pairs[..m]).unwrap()
            })
            .collect();
        let cover = edge_clique_cover_join(&inputs);
        let join = Graph::join(&inputs);
        let bits = (t as f64).log2().ceil() as usize;
        assert_eq!(cover.len(), m + n * n * bits);
        for c in &cover {
            assert!(c.len() <= 2 * t);
            assert!(common::is_clique(&join, c));
        }
        for (u, v) in join.edges() {
            assert!(cover.iter().any(|c| c.contains(&u) && c.contains(&v)), "case {case}: {u}-{v}");
        }
    }
}

#[test]
fn join_formula_matches_oracle() {
    for case in 0..100 {
        let mut rng = case_rng(305, case);
        let n = rng.gen_range(1..=4);
        let g = gnp(&mut rng, n, 0.5);
        let h = gnp(&mut rng, n, 0.5);
        let tws = [treewidth_exact(&g).unwrap(), treewidth_exact(&h).unwrap()];
        assert_eq!(join_treewidth(&tws, n), treewidth_exact(&Graph::join(&[g, h])).unwrap(), "case {case}");
    }
}

#[test]
fn t6_instances_satisfy_their_invariants_and_decompositions_transfer() {
    for case in 0..12 {
        let mut rng = case_rng(306, case);
        let (t, n) = if case % 2 == 0 { (2, 8) } else { (3, 6) };
        let first = gnp(&mut rng, n, 0.4);
        let inputs: Vec<(Graph, usize)> = (0..t).map(|_| (degree_preserving_shuffle(&mut rng, &first, 6), 2)).collect();
        let (wg, cover_set, k_prime, layout) = compose_t6(&inputs).unwrap();
        let g = wg.graph();
        assert_eq!(k_prime, ((t - 1) * n + 2) as u64);
        assert!(2 * layout.d > k_prime && layout.c as u64 + layout.d <= k_prime);
        assert!(common::is_vertex_cover(g, &cover_set));
        assert_eq!(g.without_vertices(&cover_set).num_edges(), 0);
        assert_eq!(cover_set.len(), 2 * layout.cover.len());
        let join = layout.join();
        for c in &layout.cover {
            assert!(c.len() <= layout.c && common::is_clique(&join, c));
        }
        for (u, v) in join.edges() {
            assert!(layout.cover.iter().any(|c| c.contains(&u) && c.contains(&v)));
        }

        let decomps: Vec<(usize, TreeDecomposition)> =
            inputs.iter().map(|(gi, _)| Oracle::default().treewidth_decomposition(gi).unwrap()).collect();
        let best = (0..t).min_by_key(|&i| decomps[i].0).unwrap();
        let min_tw = decomps[best].0;
        let lifted = layout.transfer_decomposition(best, &decomps[best].1);
        let width = validate_decomposition(g, &lifted, Some(wg.weights())).unwrap();
        let join_width = ((t - 1) * n + min_tw) as u64;
        assert!(width <= join_width.max(layout.c as u64 + layout.d - 1), "case {case}");
        if min_tw <= 2 {
            assert!(width <= k_prime, "case {case}");
        }
    }
}
