//! `twkernel` command-line front end.
//!
//! Exit status: 0 on success, 1 when the answer is negative (a `NO`
//! verdict, an invalid decomposition, failing suite cases), 2 on errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use twkernel::exact::{
    cutwidth_exact, expand_weights, treewidth_exact, validate_decomposition, weighted_treewidth_exact,
};
use twkernel::fvs_kernel::{heuristic_low_mode, kernelize_fvs};
use twkernel::io::{parse_gr, parse_modulator, parse_td, write_gr, write_modulator, GrDocument, ReductionReport};
use twkernel::lowerbound::{compose_t5, compose_t6, ComposedT5};
use twkernel::modulators::{Instance, ModulatorClass};
use twkernel::reduction::Verdict;
use twkernel::suites::{run_suite, Suite};
use twkernel::vc_kernel::kernelize_vc;
use twkernel::{Graph, VertexSet};

#[derive(Parser)]
#[command(name = "twkernel", version, about = "Treewidth kernelization, exact oracles and gadget generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Modulator is a vertex cover.
    Vc,
    /// Modulator is a feedback vertex set.
    Fvs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Tw,
    Wtw,
    Cutwidth,
}

#[derive(Clone, Copy, ValueEnum)]
enum Composition {
    /// Cutwidth OR into co-bipartite weighted treewidth.
    #[value(name = "5")]
    Cutwidth,
    /// Treewidth OR into weighted treewidth with a small vertex cover.
    #[value(name = "6")]
    VertexCover,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce `tw(G) <= k` with a vertex-cover or feedback-vertex-set modulator.
    Kernelize {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        k: usize,
        /// Modulator file (`p mod <size>` then 1-based ids); a
        /// 2-approximation is computed when absent.
        #[arg(long)]
        modulator: Option<PathBuf>,
        /// Output graph; defaults to `<input stem>.kernel.gr`. The report
        /// and the output modulator are written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        input: PathBuf,
    },
    /// Compute treewidth, weighted treewidth or cutwidth exactly.
    Exact {
        #[arg(value_enum)]
        measure: Measure,
        input: PathBuf,
    },
    /// Check a `.td` decomposition against a graph and print its width.
    ValidateTd { graph: PathBuf, decomposition: PathBuf },
    /// Apply the safe LOW-mode rules; prints `low` and the reduced graph.
    HeuristicLow {
        #[arg(long)]
        out: Option<PathBuf>,
        input: PathBuf,
    },
    /// Replace each vertex of weight w by a clique of w twins.
    ExpandWeights {
        #[arg(long)]
        out: Option<PathBuf>,
        input: PathBuf,
    },
    /// Compose inputs into a lower-bound gadget: PREFIX.gr, PREFIX.mod, PREFIX.layout.
    GenLb {
        #[arg(long, value_enum)]
        theorem: Composition,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Run a seeded property suite against the exact oracles.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_gr(path: &Path) -> Result<GrDocument> {
    parse_gr(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// The constant-size instance equivalent to a decided verdict, with a
/// modulator of the requested class.
fn decided_gadget(verdict: Verdict, class: ModulatorClass) -> Instance {
    let k = if verdict == Verdict::DecidedYes { 2 } else { 1 };
    Instance::with_approx_modulator(Graph::complete(3), k, class)
}

fn kernelize(mode: Mode, k: usize, modulator: Option<&Path>, out: Option<&Path>, input: &Path) -> Result<ExitCode> {
    let doc = read_gr(input)?;
    let g = doc.to_graph();
    let class = match mode {
        Mode::Vc => ModulatorClass::IndependentSet,
        Mode::Fvs => ModulatorClass::Forest,
    };
    let original = match modulator {
        Some(p) => {
            let s = parse_modulator(&read(p)?, doc.n).with_context(|| format!("{}", p.display()))?;
            Instance::new(g, k, s, class)?
        }
        None => Instance::with_approx_modulator(g, k, class),
    };
    let start = Instant::now();
    let outcome = match mode {
        Mode::Vc => kernelize_vc(&original),
        Mode::Fvs => kernelize_fvs(&original),
    }?;
    let report = ReductionReport::new(&original, &outcome, start.elapsed().as_secs_f64() * 1e3);

    let out = out.map(Path::to_path_buf).unwrap_or_else(|| input.with_extension("kernel.gr"));
    let (graph, k_out, s_out) = match &outcome.instance {
        Some(inst) => (inst.graph.clone(), inst.k, inst.modulator.clone()),
        None => {
            let inst = decided_gadget(outcome.verdict, class);
            (inst.graph, inst.k, inst.modulator)
        }
    };
    let (out_doc, labels) = GrDocument::from_graph(&graph);
    let s_file: VertexSet = labels.iter().enumerate().filter(|(_, v)| s_out.contains(v)).map(|(i, _)| i).collect();
    write(&out, &write_gr(&out_doc))?;
    write(&with_suffix(&out, ".mod"), &write_modulator(&s_file))?;
    write(&with_suffix(&out, ".report.json"), &report.to_json())?;

    println!("{}", outcome.verdict);
    println!("n {}", out_doc.n);
    println!("m {}", out_doc.m());
    println!("modulator {}", s_file.len());
    println!("k {k_out}");
    Ok(if outcome.verdict == Verdict::DecidedNo { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn exact(measure: Measure, input: &Path) -> Result<ExitCode> {
    let doc = read_gr(input)?;
    let value = match measure {
        Measure::Tw => treewidth_exact(&doc.to_graph())? as u64,
        Measure::Wtw => weighted_treewidth_exact(&doc.to_weighted())?,
        Measure::Cutwidth => cutwidth_exact(&doc.to_graph())? as u64,
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn validate_td(graph: &Path, decomposition: &Path) -> Result<ExitCode> {
    let doc = read_gr(graph)?;
    let td = parse_td(&read(decomposition)?).with_context(|| format!("{}", decomposition.display()))?;
    if td.n != doc.n {
        bail!("decomposition is for {} vertices, graph has {}", td.n, doc.n);
    }
    let weights = doc.weights.is_some().then(|| doc.to_weighted().weights().clone());
    match validate_decomposition(&doc.to_graph(), &td.td, weights.as_ref()) {
        Ok(width) => {
            println!("valid width {width}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("invalid {}: {e}", e.axiom());
            Ok(ExitCode::from(1))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn heuristic_low(out: Option<&Path>, input: &Path) -> Result<ExitCode> {
    let (reduced, state) = heuristic_low_mode(&read_gr(input)?.to_graph());
    println!("low {}", state.low);
    emit(out, &write_gr(&GrDocument::from_graph(&reduced).0))?;
    Ok(ExitCode::SUCCESS)
}

fn expand(out: Option<&Path>, input: &Path) -> Result<ExitCode> {
    let g = expand_weights(&read_gr(input)?.to_weighted())?;
    emit(out, &write_gr(&GrDocument::from_graph(&g).0))?;
    Ok(ExitCode::SUCCESS)
}

fn gen_lb(theorem: Composition, k: usize, out: &Path, inputs: &[PathBuf]) -> Result<ExitCode> {
    let graphs = inputs.iter().map(|p| Ok((read_gr(p)?.to_graph(), k))).collect::<Result<Vec<_>>>()?;
    let (graph, modulator, k_prime, layout) = match theorem {
        Composition::Cutwidth => match compose_t5(&graphs)? {
            ComposedT5::Gadget { graph, modulator, layout } => {
                let k_prime = layout.k_prime;
                (graph, modulator, k_prime, layout.layout_text())
            }
            solved @ ComposedT5::Solved { .. } => {
                let text = format!("c inputs small enough to solve directly\nsolved {}\n", solved.k_prime());
                (solved.graph().clone(), solved.modulator(), solved.k_prime(), text)
            }
        },
        Composition::VertexCover => {
            let (graph, cover, k_prime, layout) = compose_t6(&graphs)?;
            (graph, cover, k_prime, layout.layout_text())
        }
    };
    let (doc, labels) = GrDocument::from_weighted(&graph);
    let s_file: VertexSet = labels.iter().enumerate().filter(|(_, v)| modulator.contains(v)).map(|(i, _)| i).collect();
    write(&with_suffix(out, ".gr"), &write_gr(&doc))?;
    write(&with_suffix(out, ".mod"), &write_modulator(&s_file))?;
    write(&with_suffix(out, ".layout"), &layout)?;
    println!("n {}", doc.n);
    println!("m {}", doc.m());
    println!("k {k_prime}");
    Ok(ExitCode::SUCCESS)
}

fn verify(suite: Suite, seed: u64, count: u64, json: bool) -> Result<ExitCode> {
    let summary = run_suite(suite, seed, count);
    if json {
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        println!("{suite}: {}/{count} agreements", summary.agreements);
        if !summary.passed() {
            println!("failing cases: {:?}", summary.failures);
        }
    }
    Ok(if summary.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Kernelize { mode, k, modulator, out, input } => {
            kernelize(mode, k, modulator.as_deref(), out.as_deref(), &input)
        }
        Command::Exact { measure, input } => exact(measure, &input),
        Command::ValidateTd { graph, decomposition } => validate_td(&graph, &decomposition),
        Command::HeuristicLow { out, input } => heuristic_low(out.as_deref(), &input),
        Command::ExpandWeights { out, input } => expand(out.as_deref(), &input),
        Command::GenLb { theorem, k, out, inputs } => gen_lb(theorem, k, &out, &inputs),
        Command::Verify { suite, seed, count, json } => verify(suite, seed, count, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
