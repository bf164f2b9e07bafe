//! Benchmark harness: a key=value config expands into a grid of runs, each
//! run builds a graph, constructs shortcuts or a hopset, verifies it with the
//! oracles and reports one CSV row.
//!
//! ```text
//! # keys before the first section are defaults for every section
//! c = 3
//! [run]
//! algorithm = folklore, small_diam
//! family = random_dag
//! n = 216
//! p = 0.05
//! D = 6
//! seed = 0..5
//! ```
//!
//! Values separated by commas form a grid; `a..b` is a half-open integer
//! range. Grid order is fixed (see [`GRID_KEYS`]), so rows come out in
//! config order whatever order the cells finish in.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{generate, Family, GenSpec, Generated};
use crate::graph::{Digraph, WeightedDigraph};
use crate::hopset::{hopset_large_hop, hopset_small_hop, HopsetEdges, HopsetTag};
use crate::oracles::{hops_to_stretch, verify_hopset, verify_shortcut};
use crate::ratio::Ratio;
use crate::shortcut::{folklore, shortcut_large_d, shortcut_small_diam, Provenance, ShortcutSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Folklore,
    SmallDiam,
    LargeD,
    HopsetSmall,
    HopsetLarge,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Folklore,
        Algorithm::SmallDiam,
        Algorithm::LargeD,
        Algorithm::HopsetSmall,
        Algorithm::HopsetLarge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Folklore => "folklore",
            Algorithm::SmallDiam => "small_diam",
            Algorithm::LargeD => "large_d",
            Algorithm::HopsetSmall => "hopset_small",
            Algorithm::HopsetLarge => "hopset_large",
        }
    }

    pub fn is_hopset(self) -> bool {
        matches!(self, Algorithm::HopsetSmall | Algorithm::HopsetLarge)
    }
}

/// Grid keys in expansion order (outermost first).
pub const GRID_KEYS: [&str; 11] = [
    "algorithm",
    "family",
    "n",
    "p",
    "W",
    "graph_seed",
    "D",
    "beta",
    "eps",
    "c",
    "seed",
];

const FLAG_KEYS: [&str; 1] = ["timing"];

/// One grid cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub algorithm: Algorithm,
    pub family: Family,
    pub n: usize,
    pub p: Option<f64>,
    pub max_weight: Option<u64>,
    pub graph_seed: u64,
    pub diameter: Option<usize>,
    pub beta: Option<usize>,
    pub eps: Option<Ratio>,
    pub c: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub cells: Vec<Cell>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub cell: Cell,
    pub h_size: usize,
    /// `(tag, count)` for every shortcut or hopset tag.
    pub counts: Vec<(String, usize)>,
    pub achieved_diameter: Option<u64>,
    pub achieved_hops: Option<usize>,
    pub achieved_stretch: Option<f64>,
    pub passed: bool,
    pub wall_ms: f64,
}

struct Section {
    line: usize,
    values: BTreeMap<String, (usize, Vec<String>)>,
}

fn expand(line: usize, raw: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for part in raw.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(Error::parse(line, "empty value in list"));
        }
        match part.split_once("..") {
            Some((a, b)) if !part.contains('/') => {
                let bad = || Error::parse(line, format!("bad range {part:?}"));
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                if a >= b {
                    return Err(bad());
                }
                out.extend((a..b).map(|x| x.to_string()));
            }
            _ => out.push(part.to_string()),
        }
    }
    Ok(out)
}

/// Parse a config file.
pub fn parse_config(text: &str) -> Result<BenchConfig> {
    let mut defaults = Section {
        line: 0,
        values: BTreeMap::new(),
    };
    let mut sections: Vec<Section> = Vec::new();
    let mut timing = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if l == "[run]" {
            sections.push(Section {
                line,
                values: BTreeMap::new(),
            });
            continue;
        }
        if l.starts_with('[') {
            return Err(Error::parse(line, format!("unknown section {l:?}")));
        }
        let (k, v) = l
            .split_once('=')
            .ok_or_else(|| Error::parse(line, "expected key = value"))?;
        let (k, v) = (k.trim(), v.trim());
        if FLAG_KEYS.contains(&k) {
            timing = match v {
                "true" => true,
                "false" => false,
                _ => return Err(Error::parse(line, format!("timing must be true or false, got {v:?}"))),
            };
            continue;
        }
        if !GRID_KEYS.contains(&k) {
            return Err(Error::parse(line, format!("unknown key {k:?}")));
        }
        let target = sections.last_mut().unwrap_or(&mut defaults);
        if target.values.contains_key(k) {
            return Err(Error::parse(line, format!("key {k:?} given twice")));
        }
        target.values.insert(k.to_string(), (line, expand(line, v)?));
    }
    if sections.is_empty() {
        return Err(Error::parse(text.lines().count().max(1), "no [run] section"));
    }
    let mut cells = Vec::new();
    for s in &sections {
        let mut merged = defaults.values.clone();
        merged.extend(s.values.clone());
        expand_section(s.line, &merged, &mut cells)?;
    }
    Ok(BenchConfig { cells, timing })
}

fn expand_section(
    line: usize,
    values: &BTreeMap<String, (usize, Vec<String>)>,
    out: &mut Vec<Cell>,
) -> Result<()> {
    for required in ["algorithm", "family", "n", "seed"] {
        if !values.contains_key(required) {
            return Err(Error::parse(line, format!("[run] needs key {required:?}")));
        }
    }
    let keys: Vec<&str> = GRID_KEYS.iter().copied().filter(|k| values.contains_key(*k)).collect();
    let mut idx = vec![0usize; keys.len()];
    loop {
        let pick: BTreeMap<&str, (usize, &str)> = keys
            .iter()
            .zip(&idx)
            .map(|(k, &i)| {
                let (l, vs) = &values[*k];
                (*k, (*l, vs[i].as_str()))
            })
            .collect();
        out.push(make_cell(line, &pick)?);
        // odometer, last key fastest
        let mut pos = keys.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values[keys[pos]].1.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn field<T: std::str::FromStr>(pick: &BTreeMap<&str, (usize, &str)>, key: &str) -> Result<Option<T>> {
    pick.get(key)
        .map(|&(line, v)| {
            v.parse()
                .map_err(|_| Error::parse(line, format!("bad value {v:?} for {key}")))
        })
        .transpose()
}

fn make_cell(section: usize, pick: &BTreeMap<&str, (usize, &str)>) -> Result<Cell> {
    let (aline, aname) = pick["algorithm"];
    let algorithm = Algorithm::ALL
        .into_iter()
        .find(|a| a.name() == aname)
        .ok_or_else(|| Error::parse(aline, format!("unknown algorithm {aname:?}")))?;
    let (fline, fname) = pick["family"];
    let family: Family = fname
        .parse()
        .map_err(|_| Error::parse(fline, format!("unknown family {fname:?}")))?;
    let seed: u64 = field(pick, "seed")?.expect("required");
    let cell = Cell {
        algorithm,
        family,
        n: field(pick, "n")?.expect("required"),
        p: field(pick, "p")?,
        max_weight: field(pick, "W")?,
        graph_seed: field(pick, "graph_seed")?.unwrap_or(seed),
        diameter: field(pick, "D")?,
        beta: field(pick, "beta")?,
        eps: field(pick, "eps")?,
        c: field(pick, "c")?.unwrap_or(3.0),
        seed,
    };
    let missing = if algorithm.is_hopset() {
        ["beta", "eps"].into_iter().find(|k| !pick.contains_key(k))
    } else {
        (!pick.contains_key("D")).then_some("D")
    };
    if let Some(k) = missing {
        return Err(Error::parse(
            section,
            format!("algorithm {} needs key {k:?}", algorithm.name()),
        ));
    }
    Ok(cell)
}

fn graph_spec(cell: &Cell) -> GenSpec {
    let mut spec = GenSpec::new(cell.family, cell.n, cell.graph_seed);
    if let Some(p) = cell.p {
        spec = spec.with_p(p);
    }
    if let Some(w) = cell.max_weight {
        spec = spec.with_max_weight(w);
    }
    spec
}

fn unit_weights(g: &Digraph) -> WeightedDigraph {
    WeightedDigraph::new(g.n(), 1, g.edges().map(|(u, v)| (u, v, 1))).expect("valid digraph")
}

fn shortcut_counts(h: &ShortcutSet) -> Vec<(String, usize)> {
    h.counts().into_iter().map(|(t, c)| (t.name().to_string(), c)).collect()
}

fn hopset_counts(h: &HopsetEdges) -> Vec<(String, usize)> {
    h.counts().into_iter().map(|(t, c)| (t.name().to_string(), c)).collect()
}

/// Execute one cell.
pub fn run_cell(cell: &Cell, timing: bool) -> Result<BenchRow> {
    let generated = generate(&graph_spec(cell))?;
    let start = Instant::now();
    let mut row = if cell.algorithm.is_hopset() {
        let g = match &generated {
            Generated::Weighted(g) => g.clone(),
            Generated::Unweighted(g) => unit_weights(g),
        };
        let beta = cell.beta.expect("checked at parse time");
        let eps = cell.eps.expect("checked at parse time");
        let h = match cell.algorithm {
            Algorithm::HopsetSmall => hopset_small_hop(&g, beta, eps, cell.c, cell.seed)?,
            _ => hopset_large_hop(&g, beta, eps, cell.c, cell.seed)?,
        };
        let wall = start.elapsed();
        let report = verify_hopset(&g, &h, beta, eps);
        let edges: Vec<_> = h.weighted_edges().collect();
        BenchRow {
            cell: cell.clone(),
            h_size: h.len(),
            counts: hopset_counts(&h),
            achieved_diameter: None,
            achieved_hops: hops_to_stretch(&g, &edges, eps, g.n().max(1)),
            achieved_stretch: report.achieved_stretch,
            passed: report.passed(),
            wall_ms: wall.as_secs_f64() * 1e3,
        }
    } else {
        let g = match &generated {
            Generated::Unweighted(g) => g.clone(),
            Generated::Weighted(g) => g.unweighted(),
        };
        let d = cell.diameter.expect("checked at parse time");
        let h = match cell.algorithm {
            Algorithm::Folklore => folklore(&g, d, cell.c, cell.seed)?,
            Algorithm::SmallDiam => shortcut_small_diam(&g, d, cell.c, cell.seed)?,
            _ => shortcut_large_d(&g, d, cell.c, cell.seed)?,
        };
        let wall = start.elapsed();
        let report = verify_shortcut(&g, &h, d);
        BenchRow {
            cell: cell.clone(),
            h_size: h.len(),
            counts: shortcut_counts(&h),
            achieved_diameter: report.achieved_diameter,
            achieved_hops: None,
            achieved_stretch: None,
            passed: report.passed(),
            wall_ms: wall.as_secs_f64() * 1e3,
        }
    };
    if !timing {
        row.wall_ms = 0.0;
    }
    Ok(row)
}

/// Run every cell, in parallel, returning rows in config order.
pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    par_map!(config.cells, |c| run_cell(c, config.timing))
        .into_iter()
        .collect()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv_header() -> String {
    let mut cols: Vec<String> = [
        "algorithm", "family", "n", "p", "W", "graph_seed", "D", "beta", "eps", "c", "seed", "h_size",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    cols.extend(Provenance::ALL.iter().map(|t| format!("h_{t}")));
    cols.extend(HopsetTag::ALL.iter().map(|t| format!("h_{t}")));
    cols.extend(
        ["achieved_diameter", "achieved_hops", "achieved_stretch", "passed", "wall_ms"]
            .iter()
            .map(|s| s.to_string()),
    );
    cols.join(",")
}

pub fn csv_row(r: &BenchRow) -> String {
    let c = &r.cell;
    let mut f = vec![
        c.algorithm.name().to_string(),
        c.family.name().to_string(),
        c.n.to_string(),
        opt(c.p),
        opt(c.max_weight),
        c.graph_seed.to_string(),
        opt(c.diameter),
        opt(c.beta),
        opt(c.eps),
        c.c.to_string(),
        c.seed.to_string(),
        r.h_size.to_string(),
    ];
    let count = |name: &str| {
        r.counts
            .iter()
            .find(|(t, _)| t == name)
            .map(|(_, n)| n.to_string())
            .unwrap_or_default()
    };
    f.extend(Provenance::ALL.iter().map(|t| count(t.name())));
    f.extend(HopsetTag::ALL.iter().map(|t| count(t.name())));
    f.push(opt(r.achieved_diameter));
    f.push(opt(r.achieved_hops));
    f.push(r.achieved_stretch.map(|s| format!("{s:.4}")).unwrap_or_default());
    f.push(r.passed.to_string());
    f.push(format!("{:.3}", r.wall_ms));
    f.join(",")
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = csv_header();
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{}", csv_row(r));
    }
    s
}
