//! Shortcut-set constructions.
//!
//! - [`folklore`]: all closure pairs among a vertex sample.
//! - [`shortcut_small_diam`]: chain decomposition of `G★`, diameter-2
//!   shortcuts on every chain, and first-incoming edges from sampled vertices
//!   to sampled chains. Targets `D ≤ n^{1/3}`.
//! - [`shortcut_large_d`]: sample vertices, connect sampled pairs within
//!   `⌈D^{3/2}/√n⌉` hops, and recurse into the small-diameter construction.
//! - [`build_shortcuts`]: condense, dispatch on `D` against `n^{1/3}`, lift.
//! - [`tc_spanner`]: transitive reduction plus shortcuts.
//!
//! Sampling probabilities `Θ(log n / x)` are rendered as `min(1, c·ln n / x)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::chain_decomp::decompose;
use crate::error::{Error, Result};
use crate::graph::{
    bounded_reachability, condense, lift_shortcuts, transitive_closure, Digraph,
    ReachabilityMatrix,
};
use crate::line_shortcut::shortcut_positions;
use crate::rng::{self, capped_probability, sample_indices, SeedSplit};

/// Which construction step produced a shortcut edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A chain edge or a diameter-2 path shortcut.
    PathShortcut,
    /// A first-incoming edge from a sampled vertex to a sampled chain.
    SampledPair,
    /// A closure pair inside the folklore sample.
    Baseline,
    /// A component star added when lifting through the condensation.
    Lifted,
}

impl Provenance {
    pub const ALL: [Provenance; 4] = [
        Provenance::PathShortcut,
        Provenance::SampledPair,
        Provenance::Baseline,
        Provenance::Lifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Provenance::PathShortcut => "path_shortcut",
            Provenance::SampledPair => "sampled_pair",
            Provenance::Baseline => "baseline",
            Provenance::Lifted => "lifted",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::param(format!("unknown provenance {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Auto,
    Small,
    Large,
    Folklore,
    TcSpanner,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Small => "small",
            Mode::Large => "large",
            Mode::Folklore => "folklore",
            Mode::TcSpanner => "tcspanner",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Mode::Auto, Mode::Small, Mode::Large, Mode::Folklore, Mode::TcSpanner]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::param(format!("unknown mode {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShortcutParams {
    pub diameter: usize,
    pub c: f64,
    pub seed: u64,
    pub mode: Mode,
}

/// A shortcut set with a provenance tag per edge. Edges iterate in
/// lexicographic order; when a pair is produced twice the first tag is kept.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortcutSet {
    edges: BTreeMap<(usize, usize), Provenance>,
    pub params: ShortcutParams,
    /// The chains used by the chain-based constructions, in input vertex ids.
    pub chains: Vec<Vec<usize>>,
}

impl ShortcutSet {
    pub fn new(params: ShortcutParams) -> Self {
        ShortcutSet {
            edges: BTreeMap::new(),
            params,
            chains: Vec::new(),
        }
    }

    pub fn insert(&mut self, u: usize, v: usize, tag: Provenance) {
        if u != v {
            self.edges.entry((u, v)).or_insert(tag);
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&(u, v))
    }

    pub fn tag(&self, u: usize, v: usize) -> Option<Provenance> {
        self.edges.get(&(u, v)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), Provenance)> + '_ {
        self.edges.iter().map(|(&e, &t)| (e, t))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.keys().copied()
    }

    pub fn count(&self, tag: Provenance) -> usize {
        self.edges.values().filter(|&&t| t == tag).count()
    }

    /// `(tag, count)` for every tag, in [`Provenance::ALL`] order.
    pub fn counts(&self) -> Vec<(Provenance, usize)> {
        Provenance::ALL.iter().map(|&t| (t, self.count(t))).collect()
    }
}

/// `e(v, P)`: edge from `source` to the first vertex of chain `chain` that it
/// reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FirstIncomingEdge {
    pub source: usize,
    pub chain: usize,
    pub target: usize,
}

/// Binary search for the first chain vertex `u ≠ v` with `(v, u) ∈ G★`.
/// Reachability to a chain is suffix-closed, since earlier chain vertices
/// reach later ones.
pub fn first_incoming_edge(
    closure: &ReachabilityMatrix,
    v: usize,
    chain_id: usize,
    chain: &[usize],
) -> Option<FirstIncomingEdge> {
    let first = chain.partition_point(|&u| !closure.reaches(v, u));
    let mut idx = first;
    if chain.get(idx) == Some(&v) {
        idx += 1;
    }
    chain.get(idx).map(|&target| FirstIncomingEdge {
        source: v,
        chain: chain_id,
        target,
    })
}

/// Smallest `k` with `k³ ≥ n`.
pub fn ceil_cbrt(n: usize) -> usize {
    let mut k = (n as f64).cbrt().round() as usize;
    while k * k * k < n {
        k += 1;
    }
    while k > 0 && (k - 1) * (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    k
}

/// Largest `k` with `k³ ≤ n`.
pub fn floor_cbrt(n: usize) -> usize {
    let mut k = (n as f64).cbrt().round() as usize;
    while k * k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
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

/// Folklore baseline: `H = G★[V']` with each vertex sampled independently
/// at probability `min(1, c·ln n / D)`.
pub fn folklore(g: &Digraph, d: usize, c: f64, seed: u64) -> Result<ShortcutSet> {
    if d == 0 {
        return Err(Error::param("diameter target must be at least 1"));
    }
    check_c(c)?;
    let n = g.n();
    let mut out = ShortcutSet::new(ShortcutParams {
        diameter: d,
        c,
        seed,
        mode: Mode::Folklore,
    });
    let p = capped_probability(c * ln(n) / d as f64);
    let sample = sample_indices(&mut SeedSplit::new(seed).stream(rng::VERTEX_SAMPLE), n, p);
    if sample.is_empty() {
        return Ok(out);
    }
    let closure = transitive_closure(g);
    for &u in &sample {
        for &v in &sample {
            if u != v && closure.reaches(u, v) {
                out.insert(u, v, Provenance::Baseline);
            }
        }
    }
    Ok(out)
}

fn small_diam_core(g: &Digraph, d: usize, c: f64, split: SeedSplit, out: &mut ShortcutSet) {
    let n = g.n();
    if n == 0 {
        return;
    }
    let closure = transitive_closure(g);
    let ell = (16 * n).div_ceil(d).clamp(1, n);
    let dec = decompose(&closure.to_digraph(), ell).expect("closure of a DAG is acyclic");

    for chain in &dec.chains {
        for w in chain.windows(2) {
            out.insert(w[0], w[1], Provenance::PathShortcut);
        }
        for (i, j) in shortcut_positions(chain.len()) {
            out.insert(chain[i], chain[j], Provenance::PathShortcut);
        }
    }

    let p = capped_probability(c * ln(n) / d as f64);
    let vertices = sample_indices(&mut split.stream(rng::VERTEX_SAMPLE), n, p);
    let paths = sample_indices(&mut split.stream(rng::PATH_SAMPLE), dec.chains.len(), p);
    let found = par_map!(vertices, |&v| {
        paths
            .iter()
            .filter_map(|&i| first_incoming_edge(&closure, v, i, &dec.chains[i]))
            .collect::<Vec<_>>()
    });
    for e in found.into_iter().flatten() {
        out.insert(e.source, e.target, Provenance::SampledPair);
    }
    out.chains = dec.chains;
}

/// Shortcuts for a DAG with `3 ≤ D ≤ ⌈n^{1/3}⌉`; diameter at most `D` w.h.p.
pub fn shortcut_small_diam(g: &Digraph, d: usize, c: f64, seed: u64) -> Result<ShortcutSet> {
    check_c(c)?;
    g.topological_order()?;
    let hi = ceil_cbrt(g.n());
    if d < 3 || d > hi {
        return Err(Error::param(format!(
            "small-diameter mode needs 3 <= D <= {hi} for n = {}, got {d}",
            g.n()
        )));
    }
    let mut out = ShortcutSet::new(ShortcutParams {
        diameter: d,
        c,
        seed,
        mode: Mode::Small,
    });
    small_diam_core(g, d, c, SeedSplit::new(seed), &mut out);
    Ok(out)
}

/// The sample probability, hop radius and inner diameter target used by
/// [`shortcut_large_d`] on `n` vertices.
pub fn large_d_parameters(n: usize, d: usize, c: f64) -> (f64, usize) {
    let nf = n as f64;
    let d15 = (d as f64).powf(1.5);
    let p = capped_probability(c * nf.sqrt() * ln(n) / d15);
    let r = if n == 0 {
        1
    } else {
        ((d15 / nf.sqrt()).ceil() as usize).max(1)
    };
    (p, r)
}

/// Inner diameter target `max(3, ⌊n'^{1/3} / ln n⌋)`.
pub fn large_d_inner_target(n_sampled: usize, n: usize) -> usize {
    let l = ln(n);
    let t = if l > 0.0 {
        ((n_sampled as f64).cbrt() / l).floor() as usize
    } else {
        0
    };
    t.max(3)
}

fn large_d_core(g: &Digraph, d: usize, c: f64, split: SeedSplit, out: &mut ShortcutSet) {
    let n = g.n();
    let (p, r) = large_d_parameters(n, d, c);
    let sample = sample_indices(&mut split.stream(rng::OUTER_SAMPLE), n, p);
    if sample.len() < 2 {
        return;
    }
    let near = bounded_reachability(g, r);
    let mut edges = Vec::new();
    for (a, &u) in sample.iter().enumerate() {
        for (b, &v) in sample.iter().enumerate() {
            if a != b && near.get(u, v) {
                edges.push((a, b));
            }
        }
    }
    let sampled = Digraph::new(sample.len(), edges).expect("distinct sampled pairs");
    let inner_d = large_d_inner_target(sample.len(), n);
    let mut inner = ShortcutSet::new(out.params);
    small_diam_core(&sampled, inner_d, c, split.nested(), &mut inner);
    for ((a, b), tag) in inner.iter() {
        out.insert(sample[a], sample[b], tag);
    }
    out.chains = inner
        .chains
        .iter()
        .map(|ch| ch.iter().map(|&i| sample[i]).collect())
        .collect();
}

/// Shortcuts for a DAG with `D ≥ ⌊n^{1/3}⌋`; diameter `O(D)` w.h.p.
pub fn shortcut_large_d(g: &Digraph, d: usize, c: f64, seed: u64) -> Result<ShortcutSet> {
    check_c(c)?;
    g.topological_order()?;
    let lo = floor_cbrt(g.n()).max(1);
    if d < lo {
        return Err(Error::param(format!(
            "large-diameter mode needs D >= {lo} for n = {}, got {d}",
            g.n()
        )));
    }
    let mut out = ShortcutSet::new(ShortcutParams {
        diameter: d,
        c,
        seed,
        mode: Mode::Large,
    });
    large_d_core(g, d, c, SeedSplit::new(seed), &mut out);
    Ok(out)
}

/// Any digraph: condense, pick the small- or large-diameter construction on
/// the condensation (small when `3 ≤ D ≤ ⌈k^{1/3}⌉` for `k` components),
/// and lift back.
pub fn build_shortcuts(g: &Digraph, d: usize, c: f64, seed: u64) -> Result<ShortcutSet> {
    check_c(c)?;
    let cond = condense(g);
    let k = cond.component_count();
    let split = SeedSplit::new(seed);
    let mut inner = ShortcutSet::new(ShortcutParams {
        diameter: d,
        c,
        seed,
        mode: Mode::Auto,
    });
    if (3..=ceil_cbrt(k)).contains(&d) {
        small_diam_core(&cond.dag, d, c, split, &mut inner);
    } else if d >= floor_cbrt(k).max(1) && d >= 3 {
        large_d_core(&cond.dag, d, c, split, &mut inner);
    } else {
        return Err(Error::param(format!(
            "diameter target {d} is below 3; use the folklore mode"
        )));
    }
    let h_plus: Vec<(usize, usize)> = inner.edges().collect();
    let lifted = lift_shortcuts(g, &cond, &h_plus)?;
    let mut out = ShortcutSet::new(inner.params);
    for (i, (_, tag)) in inner.iter().enumerate() {
        let (u, v) = lifted.mapped[i];
        out.insert(u, v, tag);
    }
    for &(u, v) in &lifted.stars {
        out.insert(u, v, Provenance::Lifted);
    }
    out.chains = inner
        .chains
        .iter()
        .map(|ch| ch.iter().map(|&a| cond.representative(a)).collect())
        .collect();
    Ok(out)
}

/// A graph with the same closure as `g` and no redundant condensation edge:
/// each component becomes a cycle over its sorted members, and each
/// condensation edge without a detour is realized by its smallest original
/// edge.
pub fn transitive_reduction(g: &Digraph) -> Digraph {
    let cond = condense(g);
    let closure = transitive_closure(&cond.dag);
    let mut edges = Vec::new();
    for members in &cond.members {
        if members.len() > 1 {
            for i in 0..members.len() {
                edges.push((members[i], members[(i + 1) % members.len()]));
            }
        }
    }
    let mut witness: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (u, v) in g.edges() {
        let (a, b) = (cond.component_of[u], cond.component_of[v]);
        if a != b {
            witness.entry((a, b)).or_insert((u, v));
        }
    }
    for (a, b) in cond.dag.edges() {
        let detour = cond
            .dag
            .out_neighbors(a)
            .iter()
            .any(|&w| w != b && closure.reaches(w, b));
        if !detour {
            edges.push(witness[&(a, b)]);
        }
    }
    Digraph::new(g.n(), edges).expect("reduction edges are distinct")
}

#[derive(Clone, Debug, PartialEq)]
pub struct TcSpanner {
    pub reduction: Digraph,
    pub shortcuts: ShortcutSet,
}

impl TcSpanner {
    /// `reduction ∪ shortcuts`.
    pub fn graph(&self) -> Digraph {
        self.reduction
            .union(self.shortcuts.edges())
            .expect("shortcuts are over the same vertices")
    }
}

/// `k`-TC-spanner: the transitive reduction plus a shortcut set for diameter
/// `k` on it.
pub fn tc_spanner(g: &Digraph, k: usize, c: f64, seed: u64) -> Result<TcSpanner> {
    if k < 3 {
        return Err(Error::param(format!("spanner stretch k must be >= 3, got {k}")));
    }
    let reduction = transitive_reduction(g);
    let mut shortcuts = build_shortcuts(&reduction, k, c, seed)?;
    shortcuts.params.mode = Mode::TcSpanner;
    Ok(TcSpanner {
        reduction,
        shortcuts,
    })
}

/// Run the construction named by `mode`. For [`Mode::TcSpanner`] the
/// reduction edges are folded into the returned set, tagged
/// [`Provenance::Baseline`].
pub fn run_mode(g: &Digraph, mode: Mode, d: usize, c: f64, seed: u64) -> Result<ShortcutSet> {
    match mode {
        Mode::Auto => build_shortcuts(g, d, c, seed),
        Mode::Small => shortcut_small_diam(g, d, c, seed),
        Mode::Large => shortcut_large_d(g, d, c, seed),
        Mode::Folklore => folklore(g, d, c, seed),
        Mode::TcSpanner => {
            let sp = tc_spanner(g, d, c, seed)?;
            let mut out = sp.shortcuts.clone();
            for (u, v) in sp.reduction.edges() {
                if !g.has_edge(u, v) {
                    out.insert(u, v, Provenance::Baseline);
                }
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_unweighted, Family, GenSpec};
    use crate::line_shortcut::edge_budget;
    use crate::oracles::verify_shortcut;

    fn random_dag(n: usize, p: f64, seed: u64) -> Digraph {
        generate_unweighted(&GenSpec::new(Family::RandomDag, n, seed).with_p(p)).unwrap()
    }

    fn path(n: usize) -> Digraph {
        generate_unweighted(&GenSpec::new(Family::Path, n, 0)).unwrap()
    }

    #[test]
    fn cube_roots() {
        assert_eq!(ceil_cbrt(216), 6);
        assert_eq!(ceil_cbrt(217), 7);
        assert_eq!(floor_cbrt(511), 7);
        assert_eq!(floor_cbrt(512), 8);
        assert_eq!(ceil_cbrt(0), 0);
        assert_eq!(ceil_cbrt(1), 1);
        for n in 0..3000 {
            let c = ceil_cbrt(n);
            assert!(c * c * c >= n && (c == 0 || (c - 1).pow(3) < n));
            let f = floor_cbrt(n);
            assert!(f.pow(3) <= n && (f + 1).pow(3) > n);
        }
    }

    #[test]
    fn folklore_empty_and_full_samples() {
        let g = random_dag(30, 0.1, 1);
        // p = 3 ln 30 / 10^6: nothing sampled
        assert!(folklore(&g, 1_000_000, 3.0, 0).unwrap().is_empty());
        let full = folklore(&g, 1, 3.0, 0).unwrap();
        let closure = transitive_closure(&g);
        assert_eq!(full.edges().collect::<Vec<_>>(), closure.pairs().collect::<Vec<_>>());
        assert!(full.iter().all(|(_, t)| t == Provenance::Baseline));
    }

    #[test]
    fn folklore_reaches_three_d_on_most_seeds() {
        let g = random_dag(128, 0.03, 5);
        let ok = (0..100)
            .filter(|&s| {
                let h = folklore(&g, 12, 2.0, s).unwrap();
                verify_shortcut(&g, &h, 36).passed()
            })
            .count();
        assert!(ok >= 95, "{ok}/100");
    }

    fn linear_first_incoming(
        closure: &ReachabilityMatrix,
        v: usize,
        chain: &[usize],
    ) -> Option<usize> {
        chain.iter().copied().find(|&u| u != v && closure.reaches(v, u))
    }

    #[test]
    fn first_incoming_edge_conventions() {
        let g = path(6);
        let closure = transitive_closure(&g);
        let chain = [1, 2, 3, 4];
        let e = first_incoming_edge(&closure, 2, 0, &chain).unwrap();
        assert_eq!(e.target, 3);
        assert_eq!(first_incoming_edge(&closure, 0, 0, &chain).unwrap().target, 1);
        assert_eq!(first_incoming_edge(&closure, 5, 0, &chain), None);
        assert_eq!(first_incoming_edge(&closure, 4, 0, &chain), None);
    }

    #[test]
    fn first_incoming_edge_matches_linear_scan() {
        for seed in 0..10 {
            let g = random_dag(64, 0.06, seed);
            let closure = transitive_closure(&g);
            let dec = decompose(&closure.to_digraph(), 16).unwrap();
            for (i, chain) in dec.chains.iter().enumerate() {
                for v in 0..64 {
                    let fast = first_incoming_edge(&closure, v, i, chain).map(|e| e.target);
                    assert_eq!(fast, linear_first_incoming(&closure, v, chain));
                }
            }
        }
    }

    #[test]
    fn small_diam_on_a_path() {
        let g = path(64);
        let h = shortcut_small_diam(&g, 4, 3.0, 1).unwrap();
        assert_eq!(h.chains.len(), 1);
        assert_eq!(h.chains[0].len(), 64);
        let report = verify_shortcut(&g, &h, 4);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn small_diam_edgeless() {
        let g = Digraph::empty(27).unwrap();
        assert!(shortcut_small_diam(&g, 3, 3.0, 0).unwrap().is_empty());
    }

    #[test]
    fn small_diam_rejects_bad_input() {
        let cyc = Digraph::new(27, [(0, 1), (1, 0)]).unwrap();
        assert!(matches!(shortcut_small_diam(&cyc, 3, 3.0, 0), Err(Error::Cyclic(_))));
        let g = path(27);
        assert!(shortcut_small_diam(&g, 2, 3.0, 0).is_err());
        assert!(shortcut_small_diam(&g, 4, 3.0, 0).is_err());
        assert!(shortcut_small_diam(&g, 3, 0.0, 0).is_err());
    }

    #[test]
    fn small_diam_sampled_regime() {
        // c small enough that p < 1
        let g = random_dag(216, 0.05, 3);
        let ok = (0..20)
            .filter(|&s| {
                let h = shortcut_small_diam(&g, 6, 0.5, s).unwrap();
                let r = verify_shortcut(&g, &h, 6);
                assert!(r.sound(), "seed {s}");
                r.passed()
            })
            .count();
        assert!(ok >= 15, "{ok}/20");
    }

    #[test]
    fn small_diam_per_chain_diameter_and_budget() {
        let g = random_dag(125, 0.06, 8);
        let h = shortcut_small_diam(&g, 5, 3.0, 2).unwrap();
        let n = g.n();
        assert!(h.count(Provenance::PathShortcut) <= edge_budget(n) + n);
        for chain in &h.chains {
            // BFS restricted to chain vertices over H edges
            let index: std::collections::HashMap<usize, usize> =
                chain.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut adj = vec![Vec::new(); chain.len()];
            for (u, v) in h.edges() {
                if let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) {
                    adj[a].push(b);
                }
            }
            for s in 0..chain.len() {
                let mut dist = vec![usize::MAX; chain.len()];
                dist[s] = 0;
                let mut q = std::collections::VecDeque::from([s]);
                while let Some(x) = q.pop_front() {
                    for &y in &adj[x] {
                        if dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            q.push_back(y);
                        }
                    }
                }
                assert!(dist[s + 1..].iter().all(|&d| d <= 2));
            }
        }
    }

    #[test]
    fn determinism() {
        let g = random_dag(100, 0.05, 4);
        assert_eq!(
            build_shortcuts(&g, 4, 3.0, 9).unwrap(),
            build_shortcuts(&g, 4, 3.0, 9).unwrap()
        );
        assert_eq!(
            shortcut_large_d(&g, 12, 3.0, 9).unwrap(),
            shortcut_large_d(&g, 12, 3.0, 9).unwrap()
        );
    }

    #[test]
    fn large_d_on_a_path() {
        let g = path(512);
        let h = shortcut_large_d(&g, 64, 3.0, 0).unwrap();
        let r = verify_shortcut(&g, &h, 4 * 64);
        assert!(r.passed(), "{r:?}");
        assert!(h.len() < 512 * 9);
    }

    #[test]
    fn large_d_with_nothing_sampled() {
        let g = path(64);
        let h = shortcut_large_d(&g, 1_000_000, 3.0, 0).unwrap();
        assert!(h.is_empty());
        assert!(shortcut_large_d(&g, 3, 3.0, 0).is_err());
    }

    #[test]
    fn build_handles_cycles() {
        let g = generate_unweighted(&GenSpec::new(Family::RandomDigraph, 120, 6).with_p(0.012))
            .unwrap();
        let cond = condense(&g);
        assert!(cond.component_count() < 120);
        let h = build_shortcuts(&g, 4, 3.0, 1).unwrap();
        let r = verify_shortcut(&g, &h, 3 * 4 + 2);
        assert!(r.passed(), "{r:?}");
        assert!(h.count(Provenance::Lifted) > 0);
    }

    #[test]
    fn reduction_of_total_order_is_hamiltonian_path() {
        let g = random_dag(16, 1.0, 3);
        let r = transitive_reduction(&g);
        assert_eq!(r.m(), 15);
        let order = g.topological_order().unwrap();
        for w in order.windows(2) {
            assert!(r.has_edge(w[0], w[1]));
        }
    }

    #[test]
    fn spanner_on_a_path() {
        let g = path(16);
        let sp = tc_spanner(&g, 3, 3.0, 0).unwrap();
        assert_eq!(sp.reduction, g);
        let r = verify_shortcut(&g, &sp.shortcuts, 3);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn spanner_on_random_dag() {
        let g = random_dag(128, 0.05, 2);
        let sp = tc_spanner(&g, 5, 3.0, 4).unwrap();
        assert_eq!(transitive_closure(&sp.reduction), transitive_closure(&g));
        let spanner = sp.graph();
        assert_eq!(transitive_closure(&spanner), transitive_closure(&g));
        let hops = spanner.hop_distances();
        assert!(hops.max_finite().is_none_or(|(d, _, _)| d <= 5));
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [Mode::Auto, Mode::Small, Mode::Large, Mode::Folklore, Mode::TcSpanner] {
            assert_eq!(m.name().parse::<Mode>().unwrap(), m);
        }
        for p in Provenance::ALL {
            assert_eq!(p.name().parse::<Provenance>().unwrap(), p);
        }
    }
}
