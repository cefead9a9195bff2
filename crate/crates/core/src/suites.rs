//! Seeded property suites behind `verify`. Case `i` of a run draws from
//! `case_rng(seed, i)` only, so results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{expand_weights, treewidth_exact, weighted_treewidth_exact};
use crate::fvs_kernel::kernelize_fvs;
use crate::graph::Graph;
use crate::lowerbound::join_treewidth;
use crate::modulators::{Instance, ModulatorClass};
use crate::random::{case_rng, gnp, random_graph, random_weights};
use crate::reduction::{ReductionOutcome, Verdict};
use crate::vc_kernel::kernelize_vc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SafetyVc,
    SafetyFvs,
    Formulas,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::SafetyVc, Suite::SafetyFvs, Suite::Formulas];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SafetyVc => "safety-vc",
            Suite::SafetyFvs => "safety-fvs",
            Suite::Formulas => "formulas",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Largest graph the safety suites draw.
pub const SAFETY_MAX_N: usize = 12;

/// One kernelization checked against the exact oracle.
#[derive(Debug, Clone)]
pub struct SafetyCase {
    pub original: Instance,
    pub outcome: ReductionOutcome,
    /// `tw(G) <= k` by the oracle.
    pub expected: bool,
    /// The answer the kernel's output encodes.
    pub got: bool,
    pub replays: bool,
}

impl SafetyCase {
    pub fn agrees(&self) -> bool {
        self.expected == self.got && self.replays
    }
}

/// Random graph with `n <= 12`, `k` uniform in `0..=n`, and a computed
/// 2-approximate modulator of `class`.
pub fn safety_case(class: ModulatorClass, seed: u64, case: u64) -> SafetyCase {
    let mut rng = case_rng(seed, case);
    let g = random_graph(&mut rng, SAFETY_MAX_N);
    let k = rng.gen_range(0..=g.num_vertices());
    let expected = treewidth_exact(&g).expect("n <= 12 is within the oracle caps") <= k;
    let original = Instance::with_approx_modulator(g, k, class);
    let outcome = match class {
        ModulatorClass::IndependentSet => kernelize_vc(&original),
        ModulatorClass::Forest => kernelize_fvs(&original),
    }
    .expect("approximate modulators are valid");
    let got = match (&outcome.verdict, &outcome.instance) {
        (Verdict::DecidedYes, _) => true,
        (Verdict::DecidedNo, _) => false,
        (Verdict::Reduced, Some(out)) => treewidth_exact(&out.graph).expect("kernels do not grow") <= out.k,
        (Verdict::Reduced, None) => unreachable!("reduced outcomes carry an instance"),
    };
    let replays = outcome.replay(&original).is_ok();
    SafetyCase { original, outcome, expected, got, replays }
}

/// Weighted expansion and join formula on one random draw each.
/// Returns a description of the first mismatch.
pub fn formulas_case(seed: u64, case: u64) -> Result<(), String> {
    let mut rng = case_rng(seed, case);
    let g = random_graph(&mut rng, 7);
    let wg = random_weights(&mut rng, g, 4);
    let expanded = treewidth_exact(&expand_weights(&wg).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let weighted = weighted_treewidth_exact(&wg).map_err(|e| e.to_string())?;
    if expanded as u64 != weighted {
        return Err(format!("expanded treewidth {expanded}, weighted treewidth {weighted}"));
    }

    let n = rng.gen_range(1..=4);
    let parts: Vec<Graph> = (0..2).map(|_| gnp(&mut rng, n, 0.5)).collect();
    let tws: Vec<usize> = parts.iter().map(|p| treewidth_exact(p).expect("n <= 4")).collect();
    let joined = treewidth_exact(&Graph::join(&parts)).expect("n <= 8");
    let formula = join_treewidth(&tws, n);
    if joined != formula {
        return Err(format!("join treewidth {joined}, formula {formula}"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub seed: u64,
    pub count: u64,
    pub agreements: u64,
    /// Failing case indices, ascending.
    pub failures: Vec<u64>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_case(suite: Suite, seed: u64, case: u64) -> bool {
    match suite {
        Suite::SafetyVc => safety_case(ModulatorClass::IndependentSet, seed, case).agrees(),
        Suite::SafetyFvs => safety_case(ModulatorClass::Forest, seed, case).agrees(),
        Suite::Formulas => formulas_case(seed, case).is_ok(),
    }
}

/// Runs cases `0..count` in parallel.
pub fn run_suite(suite: Suite, seed: u64, count: u64) -> SuiteSummary {
    let mut failures: Vec<u64> = (0..count).into_par_iter().filter(|&case| !run_case(suite, seed, case)).collect();
    failures.sort_unstable();
    SuiteSummary { suite, seed, count, agreements: count - failures.len() as u64, failures }
}
