use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use twkernel::exact::treewidth_exact;
use twkernel::io::{parse_gr, parse_modulator, write_gr, write_modulator, GrDocument, ReductionReport};
use twkernel::modulators::{approx_feedback_vertex_set, approx_vertex_cover};
use twkernel::random::{case_rng, random_graph};
use twkernel::{Graph, Instance, ModulatorClass, VertexSet};

fn twkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twkernel")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name).to_string_lossy().into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn with_suffix(p: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{p}{suffix}"))
}

fn schema() -> jsonschema::Validator {
    let text = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

/// Checks the report written next to `out` against the schema and replays
/// it on `original`.
fn check_report(out: &str, original: &Instance) -> ReductionReport {
    let text = fs::read_to_string(with_suffix(out, ".report.json")).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let report = ReductionReport::from_json(&text).unwrap();
    report.replay(original).unwrap();
    report
}

#[test]
fn exact_treewidth_of_k4() {
    let out = twkernel(&["exact", "tw", &data("k4.gr")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3\n");
    assert_eq!(stdout(&twkernel(&["exact", "wtw", &data("k2-weighted.gr")])), "3\n");
    assert_eq!(stdout(&twkernel(&["exact", "cutwidth", &data("c6.gr")])), "2\n");
}

#[test]
fn trivial_vertex_cover_instance_is_yes() {
    let dir = TempDir::new().unwrap();
    let g = put(&dir, "g.gr", &write_gr(&GrDocument::from_graph(&Graph::path(5)).0));
    let s: VertexSet = [0, 1, 2, 3].into();
    let m = put(&dir, "g.mod", &write_modulator(&s));
    let out_path = dir.path().join("out.gr").to_string_lossy().into_owned();
    let out = twkernel(&["kernelize", "--mode", "vc", "--k", "5", "--modulator", &m, "--out", &out_path, &g]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("YES\n"));
    let doc = parse_gr(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc.to_graph(), Graph::complete(3));
    assert!(stdout(&out).contains("k 2\n"));
    let original = Instance::new(Graph::path(5), 5, s, ModulatorClass::IndependentSet).unwrap();
    check_report(&out_path, &original);
}

#[test]
fn kernelize_answers_match_the_oracle_and_reports_replay() {
    let dir = TempDir::new().unwrap();
    let mut verdicts = [0; 3];
    for case in 0..40 {
        let mut rng = case_rng(41, case);
        let g = random_graph(&mut rng, 9);
        let k = (case as usize) % 5;
        let (mode, class, s) = if case % 2 == 0 {
            ("vc", ModulatorClass::IndependentSet, approx_vertex_cover(&g))
        } else {
            ("fvs", ModulatorClass::Forest, approx_feedback_vertex_set(&g))
        };
        let input = put(&dir, "in.gr", &write_gr(&GrDocument::from_graph(&g).0));
        let out_path = dir.path().join("out.gr").to_string_lossy().into_owned();
        let out = twkernel(&["kernelize", "--mode", mode, "--k", &k.to_string(), "--out", &out_path, &input]);
        let expected = treewidth_exact(&g).unwrap() <= k;

        let text = stdout(&out);
        let k_out: usize = text.lines().find_map(|l| l.strip_prefix("k ")).unwrap().parse().unwrap();
        let reduced = parse_gr(&fs::read_to_string(&out_path).unwrap()).unwrap();
        assert_eq!(treewidth_exact(&reduced.to_graph()).unwrap() <= k_out, expected, "case {case}");
        let code = out.status.code().unwrap();
        match text.lines().next().unwrap() {
            "YES" => verdicts[0] += 1,
            "NO" => verdicts[1] += 1,
            "REDUCED" => verdicts[2] += 1,
            other => panic!("unexpected verdict {other}"),
        }
        assert_eq!(code, if text.starts_with("NO") { 1 } else { 0 });

        let s_out = parse_modulator(&fs::read_to_string(with_suffix(&out_path, ".mod")).unwrap(), reduced.n).unwrap();
        assert!(twkernel::modulators::verify_modulator(&reduced.to_graph(), &s_out, class));
        let original = Instance::new(g, k, s, class).unwrap();
        check_report(&out_path, &original);
    }
    assert!(verdicts.iter().all(|&c| c > 0), "{verdicts:?}");
}

#[test]
fn validate_td_reports_width_or_axiom() {
    let out = twkernel(&["validate-td", &data("c6.gr"), &data("c6.td")]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "valid width 2\n".into()));
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
    let out = twkernel(&["validate-td", &data("p3.gr"), &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("invalid"));
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.gr").to_string_lossy().into_owned();
    assert_eq!(twkernel(&["exact", "tw", &missing]).status.code(), Some(2));
    assert_eq!(twkernel(&["exact", "tw", "--bogus", &data("k4.gr")]).status.code(), Some(2));
    assert_eq!(twkernel(&["exact", "diameter", &data("k4.gr")]).status.code(), Some(2));
    let bad = put(&dir, "bad.gr", "p tw 3 2\n1 2\n");
    let out = twkernel(&["exact", "tw", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let m = put(&dir, "m.mod", "p mod 1\n2\n");
    let out = twkernel(&["kernelize", "--mode", "vc", "--k", "1", "--modulator", &m, &data("k4.gr")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn heuristic_low_and_weight_expansion_write_graphs() {
    let out = twkernel(&["heuristic-low", &data("grid3x3.gr")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let (first, rest) = text.split_once('\n').unwrap();
    let low: usize = first.strip_prefix("low ").unwrap().parse().unwrap();
    let reduced = parse_gr(rest).unwrap().to_graph();
    let grid = parse_gr(&fs::read_to_string(data("grid3x3.gr")).unwrap()).unwrap().to_graph();
    assert_eq!(low.max(treewidth_exact(&reduced).unwrap()), treewidth_exact(&grid).unwrap());

    let out = twkernel(&["expand-weights", &data("star-weighted.gr")]);
    let expanded = parse_gr(&stdout(&out)).unwrap();
    assert_eq!(expanded.n, 4 + 1 + 2 + 3 + 1);
    assert_eq!(
        treewidth_exact(&expanded.to_graph()).unwrap().to_string() + "\n",
        stdout(&twkernel(&["exact", "wtw", &data("star-weighted.gr")]))
    );
}

#[test]
fn gen_lb_writes_deterministic_gadgets() {
    let dir = TempDir::new().unwrap();
    for (theorem, k, inputs) in [("5", "1", &["c6.gr", "c6.gr"][..]), ("6", "2", &["c6.gr", "c6.gr", "c6.gr"])] {
        let mut runs = Vec::new();
        for run in 0..2 {
            let prefix = dir.path().join(format!("t{theorem}-{run}")).to_string_lossy().into_owned();
            let paths: Vec<String> = inputs.iter().map(|f| data(f)).collect();
            let mut args = vec!["gen-lb", "--theorem", theorem, "--k", k, "--out", &prefix];
            args.extend(paths.iter().map(String::as_str));
            let out = twkernel(&args);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let gr = fs::read_to_string(with_suffix(&prefix, ".gr")).unwrap();
            let doc = parse_gr(&gr).unwrap();
            assert!(doc.weights.is_some());
            let s = parse_modulator(&fs::read_to_string(with_suffix(&prefix, ".mod")).unwrap(), doc.n).unwrap();
            let g = doc.to_graph();
            let rest: VertexSet = g.vertex_set().difference(&s).copied().collect();
            if theorem == "5" {
                assert!(g.is_clique(&rest) && g.is_clique(&s));
            } else {
                assert_eq!(g.induced(&rest).num_edges(), 0);
            }
            let layout = fs::read_to_string(with_suffix(&prefix, ".layout")).unwrap();
            runs.push((stdout(&out), gr, layout));
        }
        assert_eq!(runs[0], runs[1]);
    }
}

#[test]
fn verify_runs_the_vc_suite() {
    let out = twkernel(&["verify", "--suite", "safety-vc", "--seed", "1", "--count", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "safety-vc: 100/100 agreements\n");
    let out = twkernel(&["verify", "--suite", "formulas", "--seed", "3", "--count", "10", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["agreements"], 10);
    assert_eq!(v["suite"], "formulas");
    assert_eq!(twkernel(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
