//! Criterion benchmarks for the kernels and oracles. Instances are drawn
//! from fixed seeds so runs are comparable.

use criterion::{BenchmarkId, Criterion};
use twkernel::exact::{cutwidth_exact, treewidth_exact, weighted_treewidth_cobipartite};
use twkernel::fvs_kernel::{heuristic_low_mode, kernelize_fvs};
use twkernel::graph::minimal_almost_clique_separators;
use twkernel::lowerbound::{compose_t5, ComposedT5};
use twkernel::random::{case_rng, degree_preserving_shuffle, gnp, random_subcubic};
use twkernel::vc_kernel::kernelize_vc;
use twkernel::{Graph, Instance, ModulatorClass};

const SEED: u64 = 7;

pub fn random_instances(n: usize, count: u64) -> Vec<Graph> {
    (0..count).map(|case| gnp(&mut case_rng(SEED, case), n, 0.3)).collect()
}

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for n in [10, 14, 18] {
        let g = &random_instances(n, 1)[0];
        group.bench_with_input(BenchmarkId::new("treewidth", n), g, |b, g| b.iter(|| treewidth_exact(g).unwrap()));
        group.bench_with_input(BenchmarkId::new("cutwidth", n), g, |b, g| b.iter(|| cutwidth_exact(g).unwrap()));
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel");
    for n in [12, 24, 48] {
        let graphs = random_instances(n, 8);
        let k = n / 4;
        let vc: Vec<Instance> = graphs
            .iter()
            .map(|g| Instance::with_approx_modulator(g.clone(), k, ModulatorClass::IndependentSet))
            .collect();
        let fvs: Vec<Instance> =
            graphs.iter().map(|g| Instance::with_approx_modulator(g.clone(), k, ModulatorClass::Forest)).collect();
        group.bench_with_input(BenchmarkId::new("vertex-cover", n), &vc, |b, xs| {
            b.iter(|| xs.iter().map(|i| kernelize_vc(i).unwrap().trace.len()).sum::<usize>())
        });
        group.bench_with_input(BenchmarkId::new("feedback-vertex-set", n), &fvs, |b, xs| {
            b.iter(|| xs.iter().map(|i| kernelize_fvs(i).unwrap().trace.len()).sum::<usize>())
        });
        group.bench_with_input(BenchmarkId::new("low-mode", n), &graphs, |b, gs| {
            b.iter(|| gs.iter().map(|g| heuristic_low_mode(g).1.low).sum::<usize>())
        });
        group.bench_with_input(BenchmarkId::new("almost-clique-separators", n), &graphs, |b, gs| {
            b.iter(|| gs.iter().map(|g| minimal_almost_clique_separators(g).len()).sum::<usize>())
        });
    }
    group.finish();
}

fn gadgets(c: &mut Criterion) {
    let mut rng = case_rng(SEED, 0);
    let g = random_subcubic(&mut rng, 6, 6);
    let h = degree_preserving_shuffle(&mut rng, &g, 10);
    let inputs = vec![(g, 1), (h, 1)];
    c.bench_function("gadget/compose-cutwidth", |b| b.iter(|| compose_t5(&inputs).unwrap()));
    let ComposedT5::Gadget { graph, layout, .. } = compose_t5(&inputs).unwrap() else {
        unreachable!("six-vertex inputs yield a gadget")
    };
    let (a, bside) = (layout.a_side(), layout.b_side());
    c.bench_function("gadget/cobipartite-width", |b| {
        b.iter(|| weighted_treewidth_cobipartite(&graph, &a, &bside).unwrap())
    });
}

pub fn benchmarks(c: &mut Criterion) {
    oracles(c);
    kernels(c);
    gadgets(c);
}
