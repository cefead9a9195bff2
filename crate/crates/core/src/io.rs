//! Text formats: graphs (`p tw` / `p wtw`), tree decompositions (`s td`),
//! modulator lists, and the JSON reduction report.
//!
//! Files use 1-based vertex ids; in memory vertices are `0..n`. Parsers are
//! strict: every line must be a comment (`c ...`) or belong to the format,
//! and errors carry the 1-based line number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::TreeDecomposition;
use crate::graph::{Edge, Graph, Vertex, VertexSet, WeightedGraph};
use crate::modulators::{Instance, ModulatorClass};
use crate::reduction::{ReductionOutcome, ReplayError, TraceStep, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-comment lines with their 1-based numbers, split on whitespace.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| toks.first() != Some(&"c"))
}

fn number<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse().or_else(|_| err(line, format!("expected {what}, found `{tok}`")))
}

fn vertex_id(line: usize, tok: &str, n: usize) -> Result<usize, ParseError> {
    let v: usize = number(line, tok, "a vertex id")?;
    if v == 0 || v > n {
        return err(line, format!("vertex id {v} outside 1..={n}"));
    }
    Ok(v)
}

/// A graph file. Edges are 1-based, stored with `u < v` in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrDocument {
    pub n: usize,
    pub edges: Vec<Edge>,
    /// Weight of vertex `i + 1`; present iff the header is `p wtw`.
    pub weights: Option<Vec<u64>>,
}

impl GrDocument {
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// The graph on `0..n`.
    pub fn to_graph(&self) -> Graph {
        let edges: Vec<Edge> = self.edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        Graph::from_edge_list(self.n, &edges).expect("parsed documents are simple")
    }

    /// The weighted graph on `0..n`; unit weights for unweighted files.
    pub fn to_weighted(&self) -> WeightedGraph {
        let g = self.to_graph();
        match &self.weights {
            None => WeightedGraph::unit(g),
            Some(ws) => {
                let map = ws.iter().enumerate().map(|(i, &w)| (i, w)).collect();
                WeightedGraph::new(g, map).expect("parsed weights are positive")
            }
        }
    }

    /// Unweighted document of `g` with vertices renumbered in id order.
    /// Returns the document and the vertex behind each file id.
    pub fn from_graph(g: &Graph) -> (GrDocument, Vec<Vertex>) {
        let (c, labels) = g.compacted();
        let mut edges: Vec<Edge> = c.edges().into_iter().map(|(u, v)| (u + 1, v + 1)).collect();
        edges.sort_unstable();
        (GrDocument { n: c.num_vertices(), edges, weights: None }, labels)
    }

    pub fn from_weighted(wg: &WeightedGraph) -> (GrDocument, Vec<Vertex>) {
        let (mut doc, labels) = GrDocument::from_graph(wg.graph());
        doc.weights = Some(labels.iter().map(|&v| wg.weight(v)).collect());
        (doc, labels)
    }
}

/// Parses `p tw n m` followed by `m` edge lines, or `p wtw n m` followed by
/// `n` weight lines `w v weight` and then `m` edge lines.
pub fn parse_gr(text: &str) -> Result<GrDocument, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(text.lines().count().max(1), "missing `p tw` header");
    };
    let weighted = match header.as_slice() {
        ["p", "tw", _, _] => false,
        ["p", "wtw", _, _] => true,
        _ => return err(hl, "malformed header, expected `p tw <n> <m>` or `p wtw <n> <m>`"),
    };
    let n: usize = number(hl, header[2], "a vertex count")?;
    let m: usize = number(hl, header[3], "an edge count")?;

    let mut weights = weighted.then(|| vec![0u64; n]);
    let mut weight_lines = 0;
    let mut seen = std::collections::BTreeSet::new();
    let mut last_line = hl;
    for (ln, toks) in lines {
        last_line = ln;
        match (toks.as_slice(), &mut weights) {
            (["w", v, w], Some(ws)) => {
                if !seen.is_empty() {
                    return err(ln, "weight line after the edges");
                }
                let v = vertex_id(ln, v, n)?;
                let w: u64 = number(ln, w, "a weight")?;
                if w == 0 {
                    return err(ln, format!("vertex {v} has weight 0"));
                }
                if ws[v - 1] != 0 {
                    return err(ln, format!("second weight for vertex {v}"));
                }
                ws[v - 1] = w;
                weight_lines += 1;
            }
            ([u, v], _) => {
                if weighted && weight_lines != n {
                    return err(ln, format!("expected {n} weight lines before the edges, found {weight_lines}"));
                }
                let (u, v) = (vertex_id(ln, u, n)?, vertex_id(ln, v, n)?);
                if u == v {
                    return err(ln, format!("self-loop on vertex {u}"));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return err(ln, format!("duplicate edge {u} {v}"));
                }
                if seen.len() > m {
                    return err(ln, format!("more than the {m} edges announced in the header"));
                }
            }
            _ => return err(ln, format!("unrecognized line `{}`", toks.join(" "))),
        }
    }
    if weighted && weight_lines != n {
        return err(last_line, format!("expected {n} weight lines, found {weight_lines}"));
    }
    if seen.len() != m {
        return err(last_line, format!("header announces {m} edges, found {}", seen.len()));
    }
    Ok(GrDocument { n, edges: seen.into_iter().collect(), weights })
}

/// Canonical text: header, weights in vertex order, edges sorted.
pub fn write_gr(doc: &GrDocument) -> String {
    let mut s = String::new();
    let kind = if doc.weights.is_some() { "wtw" } else { "tw" };
    let _ = writeln!(s, "p {kind} {} {}", doc.n, doc.m());
    if let Some(ws) = &doc.weights {
        for (i, w) in ws.iter().enumerate() {
            let _ = writeln!(s, "w {} {w}", i + 1);
        }
    }
    let mut edges: Vec<Edge> = doc.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// A tree decomposition file of a graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdDocument {
    pub n: usize,
    /// Bags keyed by 0-based bag id, holding 0-based vertices.
    pub td: TreeDecomposition,
}

/// Parses `s td <bags> <width+1> <n>`, one `b <id> <vertices..>` line per
/// bag, then tree edges as bag-id pairs.
pub fn parse_td(text: &str) -> Result<TdDocument, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(1, "missing `s td` header");
    };
    let ["s", "td", bags, size, n] = header.as_slice() else {
        return err(hl, "malformed header, expected `s td <bags> <width+1> <n>`");
    };
    let bags: usize = number(hl, bags, "a bag count")?;
    let size: usize = number(hl, size, "a bag size")?;
    let n: usize = number(hl, n, "a vertex count")?;
    let mut td = TreeDecomposition::default();
    let mut largest = 0;
    let mut last_line = hl;
    for (ln, toks) in lines {
        last_line = ln;
        match toks.as_slice() {
            ["b", id, rest @ ..] => {
                if !td.tree_edges.is_empty() {
                    return err(ln, "bag line after the tree edges");
                }
                let id = vertex_id(ln, id, bags)?;
                let mut bag = VertexSet::new();
                for tok in rest {
                    if !bag.insert(vertex_id(ln, tok, n)? - 1) {
                        return err(ln, format!("vertex {tok} repeated in bag {id}"));
                    }
                }
                largest = largest.max(bag.len());
                if td.bags.insert(id - 1, bag).is_some() {
                    return err(ln, format!("second line for bag {id}"));
                }
            }
            [a, b] => {
                let (a, b) = (vertex_id(ln, a, bags)?, vertex_id(ln, b, bags)?);
                td.tree_edges.push((a - 1, b - 1));
            }
            _ => return err(ln, format!("unrecognized line `{}`", toks.join(" "))),
        }
    }
    if td.bags.len() != bags {
        return err(last_line, format!("header announces {bags} bags, found {}", td.bags.len()));
    }
    if largest != size {
        return err(hl, format!("header announces bag size {size}, largest bag has {largest}"));
    }
    Ok(TdDocument { n, td })
}

/// Writes bags renumbered `1..` in id order; vertices are shifted to
/// 1-based.
pub fn write_td(doc: &TdDocument) -> String {
    let ids: BTreeMap<usize, usize> = doc.td.bags.keys().enumerate().map(|(i, &b)| (b, i + 1)).collect();
    let size = doc.td.bags.values().map(|b| b.len()).max().unwrap_or(0);
    let mut s = String::new();
    let _ = writeln!(s, "s td {} {size} {}", doc.td.bags.len(), doc.n);
    for (b, bag) in &doc.td.bags {
        let _ = write!(s, "b {}", ids[b]);
        for v in bag {
            let _ = write!(s, " {}", v + 1);
        }
        s.push('\n');
    }
    for (a, b) in &doc.td.tree_edges {
        let _ = writeln!(s, "{} {}", ids[a], ids[b]);
    }
    s
}

/// Parses `p mod <size>` followed by one 1-based vertex id per line.
pub fn parse_modulator(text: &str, n: usize) -> Result<VertexSet, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return err(1, "missing `p mod` header");
    };
    let ["p", "mod", size] = header.as_slice() else {
        return err(hl, "malformed header, expected `p mod <size>`");
    };
    let size: usize = number(hl, size, "a modulator size")?;
    let mut s = VertexSet::new();
    let mut last_line = hl;
    for (ln, toks) in lines {
        last_line = ln;
        let [v] = toks.as_slice() else {
            return err(ln, format!("unrecognized line `{}`", toks.join(" ")));
        };
        if !s.insert(vertex_id(ln, v, n)? - 1) {
            return err(ln, format!("vertex {v} listed twice"));
        }
    }
    if s.len() != size {
        return err(last_line, format!("header announces {size} vertices, found {}", s.len()));
    }
    Ok(s)
}

pub fn write_modulator(s: &VertexSet) -> String {
    let mut out = format!("p mod {}\n", s.len());
    for v in s {
        let _ = writeln!(out, "{}", v + 1);
    }
    out
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    pub modulator_size: usize,
    pub k: usize,
}

impl InstanceSummary {
    pub fn of(inst: &Instance) -> Self {
        InstanceSummary {
            n: inst.graph.num_vertices(),
            m: inst.graph.num_edges(),
            modulator_size: inst.modulator.len(),
            k: inst.k,
        }
    }
}

/// Machine-readable record of one kernelization run. Trace vertices use the
/// input's 0-based ids; contractions may introduce fresh ids above them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub schema_version: u32,
    pub class: ModulatorClass,
    pub input: InstanceSummary,
    pub verdict: Verdict,
    pub trace: Vec<TraceStep>,
    /// Present iff the verdict is `reduced`.
    pub output: Option<InstanceSummary>,
    /// Internal id of each output vertex, in output file order.
    pub output_ids: Vec<Vertex>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("output summary does not match the replayed instance")]
    Summary,
    #[error("unsupported report schema version {0}")]
    Version(u32),
}

impl ReductionReport {
    pub fn new(original: &Instance, outcome: &ReductionOutcome, wall_time_ms: f64) -> Self {
        let output_ids = outcome.instance.as_ref().map(|i| i.graph.vertices().collect()).unwrap_or_default();
        ReductionReport {
            schema_version: REPORT_SCHEMA_VERSION,
            class: original.class,
            input: InstanceSummary::of(original),
            verdict: outcome.verdict,
            trace: outcome.trace.clone(),
            output: outcome.instance.as_ref().map(InstanceSummary::of),
            output_ids,
            wall_time_ms,
        }
    }

    /// Replays the trace on `original`, checking each edge delta, the
    /// verdict, and the output summary.
    pub fn replay(&self, original: &Instance) -> Result<(), ReportError> {
        if self.schema_version != REPORT_SCHEMA_VERSION {
            return Err(ReportError::Version(self.schema_version));
        }
        // A failing step is reported with its index by the outcome replay.
        let mut cur = original.clone();
        for step in &self.trace {
            match cur.apply(&step.action) {
                Ok(next) => cur = next,
                Err(_) => break,
            }
        }
        let outcome = ReductionOutcome {
            verdict: self.verdict,
            instance: (self.verdict == Verdict::Reduced).then(|| cur.clone()),
            trace: self.trace.clone(),
            k_prime: cur.k,
        };
        outcome.replay(original)?;
        let expected_ids: Vec<Vertex> = match self.verdict {
            Verdict::Reduced => cur.graph.vertices().collect(),
            _ => Vec::new(),
        };
        let summary = (self.verdict == Verdict::Reduced).then(|| InstanceSummary::of(&cur));
        if summary != self.output || expected_ids != self.output_ids || InstanceSummary::of(original) != self.input {
            return Err(ReportError::Summary);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr_examples() {
        let d = parse_gr("p tw 3 2\n1 2\n2 3\n").unwrap();
        assert_eq!(d.to_graph(), Graph::path(3));
        let e = parse_gr("p tw 3 2\n1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        let w = parse_gr("p wtw 1 0\nw 1 5\n").unwrap();
        assert_eq!(w.weights, Some(vec![5]));
        assert_eq!(w.to_weighted().weight(0), 5);
    }

    #[test]
    fn gr_errors_name_the_line() {
        let cases = [
            ("p tw 2 1\n1 3\n", 2),
            ("p tw 2 2\n1 2\n2 1\n", 3),
            ("p tw 2 1\n1 1\n", 2),
            ("c hi\np graph 2 1\n", 2),
            ("p tw 2 0\nx\n", 2),
            ("p wtw 2 1\nw 1 1\n1 2\n", 3),
            ("p wtw 1 0\nw 1 0\n", 2),
            ("p tw 2 0\n\n", 2),
        ];
        for (text, line) in cases {
            assert_eq!(parse_gr(text).unwrap_err().line, line, "{text:?}");
        }
    }

    #[test]
    fn gr_round_trips() {
        for text in ["p tw 3 2\n1 2\n2 3\n", "p wtw 2 1\nw 1 3\nw 2 1\n1 2\n"] {
            let d = parse_gr(text).unwrap();
            assert_eq!(write_gr(&d), text);
            assert_eq!(parse_gr(&write_gr(&d)).unwrap(), d);
        }
        let messy = "c comment\np tw 3 2\n3 2\nc inside\n2 1\n";
        assert_eq!(write_gr(&parse_gr(messy).unwrap()), "p tw 3 2\n1 2\n2 3\n");
    }

    #[test]
    fn td_round_trips() {
        let text = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
        let d = parse_td(text).unwrap();
        assert_eq!(d.td.width(), 1);
        assert_eq!(write_td(&d), text);
        assert_eq!(parse_td("s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap_err().line, 1);
        assert_eq!(parse_td("s td 1 1 3\nb 1 4\n").unwrap_err().line, 2);
    }

    #[test]
    fn modulator_round_trips() {
        let s: VertexSet = [0, 4].into();
        assert_eq!(parse_modulator(&write_modulator(&s), 5).unwrap(), s);
        assert!(parse_modulator("p mod 1\n6\n", 5).is_err());
    }
}
