//! Edge-list text files.
//!
//! A graph file starts with `n m` (unweighted) or `n m W` (weighted), then
//! one `u v` or `u v w` line per edge. Blank lines and `#` comments are
//! ignored. If some id is `≥ n` the distinct ids are re-indexed in sorted
//! order and the mapping is kept in an [`IdMap`]; all outputs are written in
//! the original ids. Self-loops and repeated edges are dropped and counted.
//!
//! Shortcut files use the same header shape (`n |H|`) with `u v tag` lines;
//! hopset files use `n |H| W` with `u v w tag` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::Generated;
use crate::graph::{Digraph, WeightedDigraph};
use crate::hopset::{HopsetEdges, HopsetTag};
use crate::shortcut::{Provenance, ShortcutSet};

/// Sorted original ids; local vertex `i` is `original[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdMap {
    original: Vec<u64>,
}

impl IdMap {
    pub fn original(&self, local: usize) -> u64 {
        self.original.get(local).copied().unwrap_or(local as u64)
    }

    pub fn local(&self, original: u64) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }

    /// `local original` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::from("# local original\n");
        for (i, o) in self.original.iter().enumerate() {
            let _ = writeln!(s, "{i} {o}");
        }
        s
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub n: usize,
    pub declared_edges: usize,
    pub self_loops: usize,
    pub duplicates: usize,
    pub reindexed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedGraph {
    Unweighted(Digraph),
    Weighted(WeightedDigraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loaded {
    pub graph: LoadedGraph,
    pub ids: Option<IdMap>,
    pub report: LoadReport,
}

impl Loaded {
    pub fn unweighted(&self) -> Digraph {
        match &self.graph {
            LoadedGraph::Unweighted(g) => g.clone(),
            LoadedGraph::Weighted(g) => g.unweighted(),
        }
    }

    pub fn weighted(&self) -> Result<WeightedDigraph> {
        match &self.graph {
            LoadedGraph::Weighted(g) => Ok(g.clone()),
            LoadedGraph::Unweighted(_) => Err(Error::param(
                "a weighted graph (header `n m W`) is required",
            )),
        }
    }

    pub fn n(&self) -> usize {
        match &self.graph {
            LoadedGraph::Unweighted(g) => g.n(),
            LoadedGraph::Weighted(g) => g.n(),
        }
    }

    fn to_local(&self, id: u64, line: usize) -> Result<usize> {
        let local = match &self.ids {
            Some(m) => m.local(id),
            None => usize::try_from(id).ok().filter(|&v| v < self.n()),
        };
        local.ok_or_else(|| Error::parse(line, format!("vertex {id} is not in the graph")))
    }
}

/// Non-comment lines as `(1-based line number, tokens)`.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn num(tok: &str, line: usize, what: &str) -> Result<u64> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what} {tok:?} is not a non-negative integer")))
}

struct Header {
    line: usize,
    n: usize,
    m: usize,
    weight: Option<u64>,
}

fn header(rec: Option<(usize, Vec<&str>)>) -> Result<Header> {
    let (line, toks) = rec.ok_or_else(|| Error::parse(1, "missing header line"))?;
    if !(2..=3).contains(&toks.len()) {
        return Err(Error::parse(line, "header must be `n m` or `n m W`"));
    }
    Ok(Header {
        line,
        n: num(toks[0], line, "n")? as usize,
        m: num(toks[1], line, "m")? as usize,
        weight: toks.get(2).map(|t| num(t, line, "W")).transpose()?,
    })
}

/// Parse a graph file.
pub fn parse_graph(text: &str) -> Result<Loaded> {
    let mut recs = records(text);
    let head = header(recs.next())?;
    let arity = if head.weight.is_some() { 3 } else { 2 };
    let mut raw = Vec::with_capacity(head.m);
    for (line, toks) in recs {
        if toks.len() != arity {
            return Err(Error::parse(
                line,
                format!("expected {arity} fields, found {}", toks.len()),
            ));
        }
        let u = num(toks[0], line, "vertex")?;
        let v = num(toks[1], line, "vertex")?;
        let w = if arity == 3 {
            num(toks[2], line, "weight")?
        } else {
            1
        };
        raw.push((line, u, v, w));
    }
    if raw.len() != head.m {
        return Err(Error::parse(
            head.line,
            format!("header declares {} edges, found {}", head.m, raw.len()),
        ));
    }

    let n = head.n;
    let dense = raw.iter().all(|&(_, u, v, _)| u < n as u64 && v < n as u64);
    let ids = if dense {
        None
    } else {
        let mut all: Vec<u64> = raw.iter().flat_map(|&(_, u, v, _)| [u, v]).collect();
        all.sort_unstable();
        all.dedup();
        if all.len() > n {
            return Err(Error::parse(
                head.line,
                format!("{} distinct vertex ids exceed n = {n}", all.len()),
            ));
        }
        Some(IdMap { original: all })
    };
    let local = |x: u64| match &ids {
        Some(m) => m.local(x).expect("collected above"),
        None => x as usize,
    };

    let mut report = LoadReport {
        n,
        declared_edges: head.m,
        reindexed: ids.is_some(),
        ..Default::default()
    };
    let graph = match head.weight {
        None => {
            let (g, drops) =
                Digraph::from_edges_lossy(n, raw.iter().map(|&(_, u, v, _)| (local(u), local(v))))?;
            report.self_loops = drops.self_loops;
            report.duplicates = drops.duplicates;
            LoadedGraph::Unweighted(g)
        }
        Some(wmax) => {
            if let Some(&(line, u, v, w)) = raw.iter().find(|r| r.3 == 0 || r.3 > wmax) {
                return Err(Error::parse(
                    line,
                    format!("edge ({u}, {v}) has weight {w}, outside [1, {wmax}]"),
                ));
            }
            let (g, drops) = WeightedDigraph::from_edges_lossy(
                n,
                wmax,
                raw.iter().map(|&(_, u, v, w)| (local(u), local(v), w)),
            )?;
            report.self_loops = drops.self_loops;
            report.duplicates = drops.duplicates;
            LoadedGraph::Weighted(g)
        }
    };
    Ok(Loaded { graph, ids, report })
}

pub fn read_graph(path: &Path) -> Result<Loaded> {
    parse_graph(&fs::read_to_string(path)?)
}

fn id(ids: Option<&IdMap>, v: usize) -> u64 {
    ids.map_or(v as u64, |m| m.original(v))
}

pub fn format_digraph(g: &Digraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn format_weighted(g: &WeightedDigraph) -> String {
    let mut s = format!("{} {} {}\n", g.n(), g.m(), g.max_weight());
    for (u, v, w) in g.edges() {
        let _ = writeln!(s, "{u} {v} {w}");
    }
    s
}

pub fn format_generated(g: &Generated) -> String {
    match g {
        Generated::Unweighted(g) => format_digraph(g),
        Generated::Weighted(g) => format_weighted(g),
    }
}

/// Shortcut file, one `u v tag` line per edge, in original ids.
pub fn format_shortcuts(n: usize, h: &ShortcutSet, ids: Option<&IdMap>) -> String {
    let mut lines: Vec<(u64, u64, Provenance)> =
        h.iter().map(|((u, v), t)| (id(ids, u), id(ids, v), t)).collect();
    lines.sort_unstable();
    let mut s = format!("{} {}\n", n, lines.len());
    for (u, v, t) in lines {
        let _ = writeln!(s, "{u} {v} {t}");
    }
    s
}

/// Hopset file, one `u v w tag` line per edge, in original ids.
pub fn format_hopset(n: usize, h: &HopsetEdges, ids: Option<&IdMap>) -> String {
    let mut lines: Vec<(u64, u64, u64, HopsetTag)> = h
        .iter()
        .map(|(u, v, w, t)| (id(ids, u), id(ids, v), w, t))
        .collect();
    lines.sort_unstable();
    let wmax = lines.iter().map(|l| l.2).max().unwrap_or(1);
    let mut s = format!("{} {} {}\n", n, lines.len(), wmax);
    for (u, v, w, t) in lines {
        let _ = writeln!(s, "{u} {v} {w} {t}");
    }
    s
}

/// Edges read back from a shortcut or hopset file, in the local ids of
/// `graph`. Unweighted files carry weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFile {
    pub weighted: bool,
    pub edges: Vec<(usize, usize, u64)>,
    pub tags: Vec<Option<String>>,
}

impl EdgeFile {
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(u, v, _)| (u, v)).collect()
    }
}

/// Parse a shortcut or hopset file against the graph it was built for. The
/// tag column is optional.
pub fn parse_edges(text: &str, graph: &Loaded) -> Result<EdgeFile> {
    let mut recs = records(text);
    let head = header(recs.next())?;
    let weighted = head.weight.is_some();
    let arity = if weighted { 3 } else { 2 };
    let mut out = EdgeFile {
        weighted,
        edges: Vec::new(),
        tags: Vec::new(),
    };
    for (line, toks) in recs {
        if toks.len() != arity && toks.len() != arity + 1 {
            return Err(Error::parse(
                line,
                format!("expected {arity} fields and an optional tag, found {}", toks.len()),
            ));
        }
        let u = graph.to_local(num(toks[0], line, "vertex")?, line)?;
        let v = graph.to_local(num(toks[1], line, "vertex")?, line)?;
        let w = if weighted {
            num(toks[2], line, "weight")?
        } else {
            1
        };
        out.edges.push((u, v, w));
        out.tags.push(toks.get(arity).map(|t| t.to_string()));
    }
    if out.edges.len() != head.m {
        return Err(Error::parse(
            head.line,
            format!("header declares {} edges, found {}", head.m, out.edges.len()),
        ));
    }
    Ok(out)
}

pub fn read_edges(path: &Path, graph: &Loaded) -> Result<EdgeFile> {
    parse_edges(&fs::read_to_string(path)?, graph)
}

/// `<out>.idmap`.
pub fn idmap_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".idmap");
    PathBuf::from(s)
}

/// Write `text` to `out`, and the id map next to it when the input was
/// re-indexed.
pub fn write_output(out: &Path, text: &str, ids: Option<&IdMap>) -> Result<()> {
    fs::write(out, text)?;
    if let Some(m) = ids {
        fs::write(idmap_path(out), m.to_text())?;
    }
    Ok(())
}

/// Number of edges per tag name.
pub fn tag_counts(tags: &[Option<String>]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for t in tags.iter().flatten() {
        *m.entry(t.clone()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shortcut::{Mode, ShortcutParams};

    #[test]
    fn parses_dense_unweighted() {
        let l = parse_graph("# demo\n3 3\n0 1\n1 2 # tail\n\n0 2\n").unwrap();
        assert_eq!(l.unweighted(), Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap());
        assert!(l.ids.is_none());
        assert!(l.weighted().is_err());
    }

    #[test]
    fn counts_drops() {
        let l = parse_graph("3 4\n0 1\n0 1\n2 2\n1 2\n").unwrap();
        assert_eq!(l.report.self_loops, 1);
        assert_eq!(l.report.duplicates, 1);
        assert_eq!(l.unweighted().m(), 2);
    }

    #[test]
    fn reindexes_sparse_ids() {
        let l = parse_graph("3 2\n10 200\n200 7\n").unwrap();
        let ids = l.ids.clone().unwrap();
        assert_eq!(ids.original(0), 7);
        assert_eq!(ids.local(200), Some(2));
        let g = l.unweighted();
        assert!(g.has_edge(1, 2) && g.has_edge(2, 0));
        assert!(l.report.reindexed);
        assert!(parse_graph("1 1\n10 200\n").is_err());
    }

    #[test]
    fn weighted_round_trip() {
        let text = "3 2 9\n0 1 4\n1 2 9\n";
        let l = parse_graph(text).unwrap();
        assert_eq!(format_weighted(&l.weighted().unwrap()), text);
        assert!(matches!(parse_graph("2 1 3\n0 1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("2 1 3\n0 1 0\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_graph("2 2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("# c\n2 1\n0 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("2 1\n0 1 5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn shortcut_file_round_trip_in_original_ids() {
        let l = parse_graph("3 2\n10 20\n20 30\n").unwrap();
        let mut h = ShortcutSet::new(ShortcutParams {
            diameter: 1,
            c: 3.0,
            seed: 0,
            mode: Mode::Auto,
        });
        h.insert(0, 2, Provenance::PathShortcut);
        let text = format_shortcuts(3, &h, l.ids.as_ref());
        assert_eq!(text, "3 1\n10 30 path_shortcut\n");
        let back = parse_edges(&text, &l).unwrap();
        assert_eq!(back.pairs(), vec![(0, 2)]);
        assert_eq!(back.tags, vec![Some("path_shortcut".to_string())]);
        assert!(parse_edges("3 1\n10 31\n", &l).is_err());
    }

    #[test]
    fn idmap_path_appends_suffix() {
        assert_eq!(idmap_path(Path::new("out/h.txt")), PathBuf::from("out/h.txt.idmap"));
    }
}
