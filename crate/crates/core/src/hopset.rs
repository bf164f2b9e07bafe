//! `(β, ε)`-hopsets for weighted digraphs.
//!
//! [`hopset_small_hop`] extracts a nice path collection of `⌊β/12⌋`-hop
//! shortest paths, adds the weighted closure induced on each path, cuts every
//! path into short subpaths, and adds geometric ladders from sampled vertices
//! to sampled subpaths. [`hopset_large_hop`] samples vertices, links sampled
//! pairs whose shortest paths are short in hops, and recurses. Every emitted
//! edge carries the exact input distance of its endpoints.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{apsp, hop_limited_from, sat_add, DistanceMatrix, WeightedDigraph, INF};
use crate::ratio::Ratio;
use crate::rng::{self, capped_probability, sample_indices, SeedSplit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HopsetTag {
    /// Closure edges among the vertices of one nice path.
    InducedClosure,
    /// Ladder edges from a sampled vertex into a sampled subpath.
    GeometricLadder,
    /// Edges produced on the sampled graph of the large-hop regime.
    Recursive,
}

impl HopsetTag {
    pub const ALL: [HopsetTag; 3] = [
        HopsetTag::InducedClosure,
        HopsetTag::GeometricLadder,
        HopsetTag::Recursive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HopsetTag::InducedClosure => "induced_closure",
            HopsetTag::GeometricLadder => "geometric_ladder",
            HopsetTag::Recursive => "recursive",
        }
    }
}

impl fmt::Display for HopsetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HopsetTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HopsetTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::param(format!("unknown hopset tag {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HopsetMode {
    Auto,
    Small,
    Large,
}

impl FromStr for HopsetMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(HopsetMode::Auto),
            "small" => Ok(HopsetMode::Small),
            "large" => Ok(HopsetMode::Large),
            _ => Err(Error::param(format!("unknown hopset mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HopsetParams {
    pub beta: usize,
    pub eps: Ratio,
    pub c: f64,
    pub seed: u64,
}

/// Weighted hopset edges with provenance. Iteration is lexicographic on
/// `(u, v)`; the first insertion of a pair wins.
#[derive(Clone, Debug, PartialEq)]
pub struct HopsetEdges {
    edges: BTreeMap<(usize, usize), (u64, HopsetTag)>,
    pub params: HopsetParams,
    /// Nice paths used at the level that produced the edges, in input ids.
    pub nice_paths: Vec<Vec<usize>>,
}

impl HopsetEdges {
    pub fn new(params: HopsetParams) -> Self {
        HopsetEdges {
            edges: BTreeMap::new(),
            params,
            nice_paths: Vec::new(),
        }
    }

    pub fn insert(&mut self, u: usize, v: usize, w: u64, tag: HopsetTag) {
        if u != v {
            self.edges.entry((u, v)).or_insert((w, tag));
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn get(&self, u: usize, v: usize) -> Option<(u64, HopsetTag)> {
        self.edges.get(&(u, v)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64, HopsetTag)> + '_ {
        self.edges.iter().map(|(&(u, v), &(w, t))| (u, v, w, t))
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.iter().map(|(u, v, w, _)| (u, v, w))
    }

    pub fn count(&self, tag: HopsetTag) -> usize {
        self.edges.values().filter(|e| e.1 == tag).count()
    }

    pub fn counts(&self) -> Vec<(HopsetTag, usize)> {
        HopsetTag::ALL.iter().map(|&t| (t, self.count(t))).collect()
    }
}

/// One path of closure edges whose length equals the distance between its
/// endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NicePath {
    pub vertices: Vec<usize>,
    /// `hop_weights[i] = dist(vertices[i], vertices[i + 1])`.
    pub hop_weights: Vec<u64>,
    pub length: u64,
}

impl NicePath {
    pub fn hops(&self) -> usize {
        self.hop_weights.len()
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().expect("nice paths are non-empty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NicePathCollection {
    pub paths: Vec<NicePath>,
    pub beta: usize,
}

impl NicePathCollection {
    /// `⌊β/12⌋`, the hop count of every path.
    pub fn hops(&self) -> usize {
        self.beta / 12
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubpathPartition {
    /// `parts[i]` partitions the vertices of nice path `i`.
    pub parts: Vec<Vec<Vec<usize>>>,
    pub eps: Ratio,
}

impl SubpathPartition {
    /// `⌈2/ε⌉ + 1`.
    pub fn piece_budget(eps: Ratio) -> usize {
        ((2 * eps.den()).div_ceil(eps.num()) + 1) as usize
    }
}

fn check_beta(beta: usize) -> Result<()> {
    if beta < 12 {
        return Err(Error::param(format!("hopbound must be at least 12, got {beta}")));
    }
    Ok(())
}

fn check_eps(eps: Ratio) -> Result<()> {
    if !eps.is_open_unit() {
        return Err(Error::param(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

fn check_c(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("sampling constant must be positive, got {c}")))
    }
}

fn ln(n: usize) -> f64 {
    (n.max(1) as f64).ln()
}

/// `D_t[i][j]`: minimum length of an exactly-`t`-hop walk over closure edges
/// among `alive` (local indices), with the last intermediate vertex of one
/// optimal walk. Ties pick the smallest intermediate.
struct HopTable {
    k: usize,
    layers: Vec<Vec<u64>>,
    back: Vec<Vec<u32>>,
}

impl HopTable {
    fn build(w: &[u64], k: usize, h: usize) -> Self {
        let mut layers = vec![w.to_vec()];
        let mut back = vec![Vec::new()];
        for _ in 1..h {
            let prev = layers.last().expect("first layer present");
            let rows = par_map_range!(0..k, |i| {
                let mut row = vec![INF; k];
                let mut brow = vec![u32::MAX; k];
                for (mid, &a) in prev[i * k..(i + 1) * k].iter().enumerate() {
                    if a == INF {
                        continue;
                    }
                    for j in 0..k {
                        // ascending mid with strict < keeps the smallest
                        let c = sat_add(a, w[mid * k + j]);
                        if c < row[j] {
                            row[j] = c;
                            brow[j] = mid as u32;
                        }
                    }
                }
                (row, brow)
            });
            let mut next = Vec::with_capacity(k * k);
            let mut bp = Vec::with_capacity(k * k);
            for (row, brow) in rows {
                next.extend(row);
                bp.extend(brow);
            }
            let empty = next.iter().all(|&d| d == INF);
            layers.push(next);
            back.push(bp);
            if empty {
                break;
            }
        }
        HopTable { k, layers, back }
    }

    fn last(&self) -> Option<&[u64]> {
        self.layers.last().map(Vec::as_slice)
    }

    /// Local vertex sequence of the optimal `h`-hop walk from `i` to `j`.
    fn walk(&self, i: usize, j: usize) -> Vec<usize> {
        let mut seq = vec![j];
        let mut cur = j;
        for t in (1..self.layers.len()).rev() {
            cur = self.back[t][i * self.k + cur] as usize;
            seq.push(cur);
        }
        seq.push(i);
        seq.reverse();
        seq
    }
}

/// Nice path collection over the weighted closure of `g`.
pub fn nice_collection(g: &WeightedDigraph, beta: usize) -> Result<NicePathCollection> {
    check_beta(beta)?;
    Ok(nice_collection_from(&apsp(g), beta))
}

/// As [`nice_collection`], from precomputed exact distances.
///
/// Each round restricts the distance matrix to the surviving vertices (the
/// residual closure keeps exact distances, since closure edges already carry
/// them), computes exactly-`h`-hop walk lengths, and takes the pair with
/// `D_h = dist` minimizing `(dist, i, j)`. With positive weights such a walk
/// is a simple path.
pub fn nice_collection_from(dist: &DistanceMatrix, beta: usize) -> NicePathCollection {
    let h = beta / 12;
    let n = dist.n();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut paths = Vec::new();
    while h >= 1 && alive.len() > h {
        let k = alive.len();
        let mut w = vec![INF; k * k];
        for (a, &u) in alive.iter().enumerate() {
            for (b, &v) in alive.iter().enumerate() {
                if a != b {
                    w[a * k + b] = dist.get(u, v);
                }
            }
        }
        let table = HopTable::build(&w, k, h);
        if table.layers.len() < h {
            break;
        }
        let dh = table.last().expect("h >= 1");
        let mut best: Option<(u64, usize, usize)> = None;
        for a in 0..k {
            for b in 0..k {
                let d = w[a * k + b];
                if a != b && d != INF && dh[a * k + b] == d && best.is_none_or(|x| d < x.0) {
                    best = Some((d, a, b));
                }
            }
        }
        let Some((length, a, b)) = best else { break };
        let local = table.walk(a, b);
        let vertices: Vec<usize> = local.iter().map(|&x| alive[x]).collect();
        let hop_weights = vertices.windows(2).map(|p| dist.get(p[0], p[1])).collect();
        let mut gone = local;
        gone.sort_unstable();
        for x in gone.into_iter().rev() {
            alive.remove(x);
        }
        paths.push(NicePath {
            vertices,
            hop_weights,
            length,
        });
    }
    NicePathCollection { paths, beta }
}

/// Greedy prefix cuts: each piece is the longest prefix of the remainder
/// whose length is at most `ε·len(path)`; the edge after each cut is dropped.
pub fn partition_subpaths(q: &NicePathCollection, eps: Ratio) -> SubpathPartition {
    let parts = q
        .paths
        .iter()
        .map(|p| {
            let mut pieces = Vec::new();
            let mut start = 0;
            while start < p.vertices.len() {
                let mut end = start;
                let mut len = 0u64;
                while end + 1 < p.vertices.len()
                    && eps.scaled_ge(len + p.hop_weights[end], p.length)
                {
                    len += p.hop_weights[end];
                    end += 1;
                }
                pieces.push(p.vertices[start..=end].to_vec());
                start = end + 1;
            }
            pieces
        })
        .collect();
    SubpathPartition { parts, eps }
}

/// `E(v, P)`: an edge to the first vertex of `p` that `v` reaches, then to
/// each later vertex whose distance from `v` beats the last added one by a
/// `(1 + ε)` factor. Weights are `dist(v, ·)`.
pub fn geometric_ladder(
    dist: &DistanceMatrix,
    v: usize,
    p: &[usize],
    eps: Ratio,
) -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    let mut cur = INF;
    for &u in p {
        if u == v {
            continue;
        }
        let d = dist.get(v, u);
        if d == INF {
            continue;
        }
        if cur == INF || eps.stretched_lt(d, cur) {
            out.push((v, u, d));
            cur = d;
        }
    }
    out
}

/// `⌈log_{1+ε}(nW)⌉ + 1`.
pub fn ladder_bound(n: usize, max_weight: u64, eps: Ratio) -> usize {
    let x = (n as f64) * (max_weight as f64);
    if x <= 1.0 {
        return 1;
    }
    (x.ln() / (1.0 + eps.to_f64()).ln()).ceil() as usize + 1
}

fn small_hop_core(
    dist: &DistanceMatrix,
    beta: usize,
    eps: Ratio,
    c: f64,
    split: SeedSplit,
    out: &mut HopsetEdges,
) {
    let n = dist.n();
    let eps = eps.halved();
    let q = nice_collection_from(dist, beta);
    for p in &q.paths {
        for &x in &p.vertices {
            for &y in &p.vertices {
                let d = dist.get(x, y);
                if x != y && d != INF {
                    out.insert(x, y, d, HopsetTag::InducedClosure);
                }
            }
        }
    }
    let subpaths: Vec<Vec<usize>> = partition_subpaths(&q, eps).parts.into_iter().flatten().collect();
    let prob = capped_probability(c * ln(n) / beta as f64);
    let vertices = sample_indices(&mut split.stream(rng::VERTEX_SAMPLE), n, prob);
    let chosen = sample_indices(&mut split.stream(rng::PATH_SAMPLE), subpaths.len(), prob);
    let ladders = par_map!(vertices, |&v| {
        chosen
            .iter()
            .flat_map(|&i| geometric_ladder(dist, v, &subpaths[i], eps))
            .collect::<Vec<_>>()
    });
    for (u, v, w) in ladders.into_iter().flatten() {
        out.insert(u, v, w, HopsetTag::GeometricLadder);
    }
    out.nice_paths = q.paths.into_iter().map(|p| p.vertices).collect();
}

/// Hopset for small hopbounds; runs internally with `ε/2`.
///
/// Only `β ≥ 12` is enforced: the nominal regime `β ≤ n^{1/4}` is empty below
/// `n = 12⁴`, which exceeds the supported graph size.
pub fn hopset_small_hop(
    g: &WeightedDigraph,
    beta: usize,
    eps: Ratio,
    c: f64,
    seed: u64,
) -> Result<HopsetEdges> {
    check_beta(beta)?;
    check_eps(eps)?;
    check_c(c)?;
    let mut out = HopsetEdges::new(HopsetParams { beta, eps, c, seed });
    small_hop_core(&apsp(g), beta, eps, c, SeedSplit::new(seed), &mut out);
    Ok(out)
}

/// Sample size `min(n, ⌈c·(n/β)^{4/3}·ln n⌉)` and hop radius
/// `⌈β^{4/3}/n^{1/3}⌉` of the large-hop regime.
pub fn large_hop_parameters(n: usize, beta: usize, c: f64) -> (usize, usize) {
    let nf = n as f64;
    let bf = beta as f64;
    let size = (c * (nf / bf).powf(4.0 / 3.0) * ln(n)).ceil();
    let size = if size.is_finite() { (size as usize).min(n) } else { n };
    let r = if n == 0 {
        1
    } else {
        ((bf.powf(4.0 / 3.0) / nf.cbrt()).ceil() as usize).max(1)
    };
    (size, r)
}

/// Inner hopbound `max(12, ⌊n'^{1/4} / ln n⌋)`.
pub fn large_hop_inner_beta(n_sampled: usize, n: usize) -> usize {
    let l = ln(n);
    let b = if l > 0.0 {
        ((n_sampled as f64).powf(0.25) / l).floor() as usize
    } else {
        0
    };
    b.max(12)
}

fn floor_root4(n: usize) -> usize {
    let mut k = (n as f64).powf(0.25).round() as usize;
    while k.pow(4) > n {
        k -= 1;
    }
    while (k + 1).pow(4) <= n {
        k += 1;
    }
    k
}

fn ceil_root4(n: usize) -> usize {
    let f = floor_root4(n);
    if f.pow(4) == n {
        f
    } else {
        f + 1
    }
}

/// Hopset for large hopbounds, `β ≥ ⌊n^{1/4}⌋`.
///
/// The sampled graph links `u, v` when a shortest `u → v` path has at most
/// `r` hops, weighted by that distance. Edges returned by the recursion are
/// re-weighted with the input distance of their endpoints; sampled-graph
/// distances can exceed it when the shortest path leaves the sample.
pub fn hopset_large_hop(
    g: &WeightedDigraph,
    beta: usize,
    eps: Ratio,
    c: f64,
    seed: u64,
) -> Result<HopsetEdges> {
    let lo = floor_root4(g.n()).max(1);
    if beta < lo {
        return Err(Error::param(format!(
            "large-hop mode needs beta >= {lo} for n = {}, got {beta}",
            g.n()
        )));
    }
    check_eps(eps)?;
    check_c(c)?;
    let mut out = HopsetEdges::new(HopsetParams { beta, eps, c, seed });
    large_hop_core(g, &apsp(g), beta, eps, c, SeedSplit::new(seed), &mut out);
    Ok(out)
}

fn large_hop_core(
    g: &WeightedDigraph,
    dist: &DistanceMatrix,
    beta: usize,
    eps: Ratio,
    c: f64,
    split: SeedSplit,
    out: &mut HopsetEdges,
) {
    let n = g.n();
    let (size, r) = large_hop_parameters(n, beta, c);
    if size < 2 {
        return;
    }
    let mut sample = index::sample(&mut split.stream(rng::OUTER_SAMPLE), n, size).into_vec();
    sample.sort_unstable();
    let short = par_map!(sample, |&u| hop_limited_from(g, u, r));
    let k = sample.len();
    let mut rows = vec![vec![INF; k]; k];
    for (a, &u) in sample.iter().enumerate() {
        rows[a][a] = 0;
        for (b, &v) in sample.iter().enumerate() {
            let d = dist.get(u, v);
            if a != b && d != INF && short[a][v] == d {
                rows[a][b] = d;
            }
        }
    }
    // distances in the sampled graph
    let mut sub = DistanceMatrix::from_rows(k, rows);
    sub = floyd_warshall(sub);
    let inner_beta = large_hop_inner_beta(k, n);
    let mut inner = HopsetEdges::new(out.params);
    small_hop_core(&sub, inner_beta, eps, c, split.nested(), &mut inner);
    for (a, b, _, _) in inner.iter() {
        let (u, v) = (sample[a], sample[b]);
        out.insert(u, v, dist.get(u, v), HopsetTag::Recursive);
    }
    out.nice_paths = inner
        .nice_paths
        .iter()
        .map(|p| p.iter().map(|&a| sample[a]).collect())
        .collect();
}

fn floyd_warshall(d: DistanceMatrix) -> DistanceMatrix {
    let k = d.n();
    let mut rows: Vec<Vec<u64>> = (0..k).map(|i| d.row(i).to_vec()).collect();
    for mid in 0..k {
        let via = rows[mid].clone();
        let col: Vec<u64> = rows.iter().map(|r| r[mid]).collect();
        par_chunks_mut!(rows.as_mut_slice(), 1, |(i, chunk): (usize, &mut [Vec<u64>])| {
            let a = col[i];
            if a == INF {
                return;
            }
            for (x, &b) in chunk[0].iter_mut().zip(&via) {
                let c = sat_add(a, b);
                if c < *x {
                    *x = c;
                }
            }
        });
    }
    DistanceMatrix::from_rows(k, rows)
}

/// Small-hop construction when `12 ≤ β ≤ ⌈n^{1/4}⌉`, large-hop otherwise.
pub fn build_hopset(
    g: &WeightedDigraph,
    beta: usize,
    eps: Ratio,
    c: f64,
    seed: u64,
) -> Result<HopsetEdges> {
    if beta >= 12 && beta <= ceil_root4(g.n()) {
        hopset_small_hop(g, beta, eps, c, seed)
    } else {
        hopset_large_hop(g, beta, eps, c, seed)
    }
}

pub fn run_hopset_mode(
    g: &WeightedDigraph,
    mode: HopsetMode,
    beta: usize,
    eps: Ratio,
    c: f64,
    seed: u64,
) -> Result<HopsetEdges> {
    match mode {
        HopsetMode::Auto => build_hopset(g, beta, eps, c, seed),
        HopsetMode::Small => hopset_small_hop(g, beta, eps, c, seed),
        HopsetMode::Large => hopset_large_hop(g, beta, eps, c, seed),
    }
}
