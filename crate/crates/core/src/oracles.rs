//! Brute-force checkers.
//!
//! Everything here is built from plain BFS, DFS, round-based Bellman–Ford and
//! path enumeration over adjacency lists, and calls none of the closure,
//! distance or decomposition routines it is used to validate.

use std::collections::VecDeque;

use serde::Serialize;

use crate::chain_decomp::ChainDecomposition;
use crate::graph::{Digraph, WeightedDigraph};
use crate::hopset::{HopsetEdges, NicePathCollection};
use crate::ratio::Ratio;
use crate::shortcut::ShortcutSet;

/// Largest graph on which nice-collection maximality is enumerated.
pub const ENUMERATION_LIMIT: usize = 60;

const UNREACHED: u64 = u64::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Violating pair or certificate; always present on failure.
    pub witness: Option<String>,
    /// Soundness checks must hold on every run; the rest are probabilistic
    /// targets.
    pub soundness: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: String,
    pub checks: Vec<Check>,
    pub achieved_diameter: Option<u64>,
    pub achieved_stretch: Option<f64>,
    pub achieved_hops: Option<u64>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>) -> Self {
        VerificationReport {
            instance: instance.into(),
            ..Default::default()
        }
    }

    fn push(&mut self, name: &str, soundness: bool, failure: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status: if failure.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness: failure,
            soundness,
        });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            status: Status::Skipped,
            witness: Some(why.to_string()),
            soundness: false,
        });
    }

    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// No soundness check failed.
    pub fn sound(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !c.soundness || c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

fn adjacency(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
    }
    adj
}

fn dfs_reach(adj: &[Vec<usize>], s: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

fn dfs_closure(adj: &[Vec<usize>]) -> Vec<Vec<bool>> {
    par_map_range!(0..adj.len(), |s| dfs_reach(adj, s))
}

fn bfs_hops(adj: &[Vec<usize>], s: usize) -> Vec<u64> {
    let mut dist = vec![UNREACHED; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == UNREACHED {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

type WAdj = Vec<Vec<(usize, u64)>>;

fn weighted_adjacency(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> WAdj {
    let mut adj = vec![Vec::new(); n];
    for (u, v, w) in edges {
        adj[u].push((v, w));
    }
    adj
}

/// One synchronous Bellman–Ford round: walks of one more edge.
fn relax_round(adj: &WAdj, cur: &[u64]) -> Vec<u64> {
    let mut next = cur.to_vec();
    for (u, out) in adj.iter().enumerate() {
        if cur[u] == UNREACHED {
            continue;
        }
        for &(v, w) in out {
            let c = cur[u].saturating_add(w);
            if c < next[v] {
                next[v] = c;
            }
        }
    }
    next
}

fn bellman_ford(adj: &WAdj, s: usize, rounds: usize) -> Vec<u64> {
    let mut d = vec![UNREACHED; adj.len()];
    d[s] = 0;
    for _ in 0..rounds {
        let next = relax_round(adj, &d);
        if next == d {
            break;
        }
        d = next;
    }
    d
}

fn exact_distances(adj: &WAdj) -> Vec<Vec<u64>> {
    let n = adj.len();
    par_map_range!(0..n, |s| bellman_ford(adj, s, n))
}

fn weighted_of(g: &WeightedDigraph) -> WAdj {
    weighted_adjacency(g.n(), g.edges())
}

/// Checks a chain/antichain decomposition of `dag`: disjoint cover, every
/// chain a directed path, no edge inside an antichain, and the `ℓ` and
/// `⌈2n/ℓ⌉` count bounds.
pub fn check_decomposition(dag: &Digraph, d: &ChainDecomposition) -> VerificationReport {
    let n = dag.n();
    let mut r = VerificationReport::new(format!("decomposition n={n} ell={}", d.target_ell));
    let adj = adjacency(n, dag.edges());
    let has = |u: usize, v: usize| adj[u].contains(&v);

    let mut owner = vec![0usize; n];
    let mut problem = None;
    for v in d.chains.iter().chain(&d.antichains).flatten().copied() {
        if v >= n {
            problem = Some(format!("vertex {v} out of range"));
            break;
        }
        owner[v] += 1;
    }
    if problem.is_none() {
        if let Some(v) = (0..n).find(|&v| owner[v] != 1) {
            problem = Some(format!("vertex {v} covered {} times", owner[v]));
        }
    }
    let covered = problem.is_none();
    r.push("disjoint_cover", true, problem);

    let bad_chain = d.chains.iter().enumerate().find_map(|(i, c)| {
        c.windows(2)
            .find(|w| w[0] >= n || w[1] >= n || !has(w[0], w[1]))
            .map(|w| format!("chain {i}: ({}, {}) is not an edge", w[0], w[1]))
    });
    r.push("chains_are_paths", true, bad_chain);

    let bad_anti = covered
        .then(|| {
            d.antichains.iter().enumerate().find_map(|(i, a)| {
                let mut member = vec![false; n];
                for &v in a {
                    member[v] = true;
                }
                a.iter().find_map(|&u| {
                    adj[u]
                        .iter()
                        .find(|&&v| member[v])
                        .map(|&v| format!("antichain {i} contains edge ({u}, {v})"))
                })
            })
        })
        .flatten();
    r.push("antichain_independence", true, bad_anti);

    let ell = d.target_ell;
    r.push(
        "chain_count",
        true,
        (d.chains.len() > ell).then(|| format!("{} chains > {ell}", d.chains.len())),
    );
    let budget = (2 * n).div_ceil(ell.max(1));
    r.push(
        "antichain_count",
        true,
        (d.antichains.len() > budget)
            .then(|| format!("{} antichains > {budget}", d.antichains.len())),
    );
    r
}

/// Soundness of `h` for `g` and the BFS diameter of `g ∪ h` against `d`.
pub fn verify_shortcut(g: &Digraph, h: &ShortcutSet, d: usize) -> VerificationReport {
    let edges: Vec<(usize, usize)> = h.edges().collect();
    verify_shortcut_edges(g, &edges, d)
}

/// [`verify_shortcut`] on a bare edge list.
pub fn verify_shortcut_edges(g: &Digraph, h: &[(usize, usize)], d: usize) -> VerificationReport {
    let n = g.n();
    let mut r = VerificationReport::new(format!("shortcut n={n} |H|={} D={d}", h.len()));
    if let Some(&(u, v)) = h.iter().find(|&&(u, v)| u >= n || v >= n || u == v) {
        r.push("well_formed", true, Some(format!("({u}, {v})")));
        return r;
    }
    r.push("well_formed", true, None);

    let base = adjacency(n, g.edges());
    let reach = dfs_closure(&base);
    let outside = h.iter().find(|&&(u, v)| !reach[u][v]);
    r.push(
        "closure_membership",
        true,
        outside.map(|&(u, v)| format!("({u}, {v})")),
    );

    let union = adjacency(n, g.edges().chain(h.iter().copied()));
    let reach2 = dfs_closure(&union);
    let changed = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .find(|&(u, v)| reach[u][v] != reach2[u][v]);
    r.push(
        "closure_preserved",
        true,
        changed.map(|(u, v)| format!("({u}, {v})")),
    );

    let far = par_map_range!(0..n, |s| {
        let dist = bfs_hops(&union, s);
        (0..n)
            .filter(|&t| t != s && dist[t] != UNREACHED)
            .map(|t| (dist[t], s, t))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)))
    });
    let worst = far
        .into_iter()
        .flatten()
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)));
    r.achieved_diameter = Some(worst.map_or(0, |w| w.0));
    r.push(
        "diameter",
        false,
        worst
            .filter(|w| w.0 > d as u64)
            .map(|(x, s, t)| format!("dist({s}, {t}) = {x} > {d}")),
    );
    r
}

/// The hopset sandwich `dist_G ≤ dist^(β)_{G∪H} ≤ (1+ε)·dist_G` on every
/// pair, plus exactness of every hopset weight.
pub fn verify_hopset(
    g: &WeightedDigraph,
    h: &HopsetEdges,
    beta: usize,
    eps: Ratio,
) -> VerificationReport {
    let edges: Vec<(usize, usize, u64)> = h.weighted_edges().collect();
    verify_hopset_edges(g, &edges, beta, eps)
}

/// [`verify_hopset`] on a bare weighted edge list.
pub fn verify_hopset_edges(
    g: &WeightedDigraph,
    h: &[(usize, usize, u64)],
    beta: usize,
    eps: Ratio,
) -> VerificationReport {
    let n = g.n();
    let mut r = VerificationReport::new(format!(
        "hopset n={n} |H|={} beta={beta} eps={eps}",
        h.len()
    ));
    if let Some(&(u, v, w)) = h.iter().find(|&&(u, v, w)| u >= n || v >= n || u == v || w == 0) {
        r.push("well_formed", true, Some(format!("({u}, {v}, {w})")));
        return r;
    }
    r.push("well_formed", true, None);

    let exact = exact_distances(&weighted_of(g));
    let wrong = h.iter().find(|&&(u, v, w)| exact[u][v] != w);
    r.push(
        "weight_exactness",
        true,
        wrong.map(|&(u, v, w)| format!("({u}, {v}) has weight {w}, distance {}", exact[u][v])),
    );

    let union = weighted_adjacency(n, g.edges().chain(h.iter().copied()));
    let limited = par_map_range!(0..n, |s| bellman_ford(&union, s, beta));
    let mut lower = None;
    let mut upper = None;
    let mut stretch: f64 = 1.0;
    for s in 0..n {
        for t in 0..n {
            let (d, x) = (exact[s][t], limited[s][t]);
            if s == t || d == UNREACHED {
                if x != UNREACHED && s != t && lower.is_none() {
                    lower = Some(format!("({s}, {t}) unreachable in G, {x} with H"));
                }
                continue;
            }
            if x < d && lower.is_none() {
                lower = Some(format!("({s}, {t}): {x} < dist {d}"));
            }
            if !eps.within_stretch(x, d) {
                if upper.is_none() {
                    upper = Some(format!("({s}, {t}): {beta}-hop {} > (1+{eps})·{d}", fmt_dist(x)));
                }
                if x == UNREACHED {
                    stretch = f64::INFINITY;
                }
            }
            if x != UNREACHED {
                stretch = stretch.max(x as f64 / d as f64);
            }
        }
    }
    r.achieved_stretch = Some(stretch);
    r.push("lower_side", true, lower);
    r.push("upper_side", false, upper);
    r
}

fn fmt_dist(x: u64) -> String {
    if x == UNREACHED {
        "inf".to_string()
    } else {
        x.to_string()
    }
}

/// Smallest hop budget at which every pair of `g ∪ h` is within `(1+ε)` of
/// its `g`-distance, or `None` if `max_hops` is not enough.
pub fn hops_to_stretch(
    g: &WeightedDigraph,
    h: &[(usize, usize, u64)],
    eps: Ratio,
    max_hops: usize,
) -> Option<usize> {
    let n = g.n();
    let exact = exact_distances(&weighted_of(g));
    let union = weighted_adjacency(n, g.edges().chain(h.iter().copied()));
    let per_source = par_map_range!(0..n, |s| {
        let mut d = vec![UNREACHED; n];
        d[s] = 0;
        let ok = |d: &[u64]| (0..n).all(|t| exact[s][t] == UNREACHED || eps.within_stretch(d[t], exact[s][t]));
        let mut rounds = 0;
        while !ok(&d) {
            if rounds == max_hops {
                return None;
            }
            d = relax_round(&union, &d);
            rounds += 1;
        }
        Some(rounds)
    });
    per_source.into_iter().try_fold(0, |acc, x| x.map(|x| acc.max(x)))
}

/// The minimum-length `h`-hop shortest path over closure edges among
/// `alive` vertices, ties broken by `(source, target)`; `None` if none exists.
fn residual_tight_paths(
    exact: &[Vec<u64>],
    alive: &[bool],
    h: usize,
) -> Option<(u64, Vec<usize>)> {
    // enumerate h-hop simple walks over alive closure edges whose every prefix
    // is a shortest path; a walk that is not tight at some prefix cannot
    // extend to a tight one, since weights are positive
    let n = exact.len();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut stack: Vec<usize> = Vec::with_capacity(h + 1);
    fn go(
        exact: &[Vec<u64>],
        alive: &[bool],
        h: usize,
        stack: &mut Vec<usize>,
        len: u64,
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        let s = stack[0];
        let u = *stack.last().expect("non-empty");
        if stack.len() == h + 1 {
            let better = match best {
                None => true,
                Some((b, p)) => len < *b || (len == *b && (s, u) < (p[0], p[h])),
            };
            if better {
                *best = Some((len, stack.clone()));
            }
            return;
        }
        for v in 0..exact.len() {
            if !alive[v] || stack.contains(&v) || exact[u][v] == UNREACHED {
                continue;
            }
            let l = len + exact[u][v];
            if l == exact[s][v] {
                stack.push(v);
                go(exact, alive, h, stack, l, best);
                stack.pop();
            }
        }
    }
    for s in 0..n {
        if alive[s] {
            stack.push(s);
            go(exact, alive, h, &mut stack, 0, &mut best);
            stack.pop();
        }
    }
    best
}

/// N1–N6 for a nice path collection. The maximality checks (N5, N6)
/// enumerate tight `⌊β/12⌋`-hop paths and are skipped above
/// [`ENUMERATION_LIMIT`] vertices.
pub fn verify_nice(g: &WeightedDigraph, q: &NicePathCollection) -> VerificationReport {
    let n = g.n();
    let h = q.beta / 12;
    let mut r = VerificationReport::new(format!(
        "nice n={n} beta={} paths={}",
        q.beta,
        q.paths.len()
    ));
    let exact = exact_distances(&weighted_of(g));

    let mut used = vec![false; n];
    let mut n1 = None;
    'outer: for (i, p) in q.paths.iter().enumerate() {
        for &v in &p.vertices {
            if v >= n || used[v] {
                n1 = Some(format!("path {i} reuses or misplaces vertex {v}"));
                break 'outer;
            }
            used[v] = true;
        }
        if let Some(w) = p
            .vertices
            .windows(2)
            .find(|w| exact[w[0]][w[1]] == UNREACHED)
        {
            n1 = Some(format!("path {i}: ({}, {}) not in the closure", w[0], w[1]));
            break;
        }
    }
    let n1_ok = n1.is_none();
    r.push("n1_disjoint_closure_paths", true, n1);

    let n2 = q
        .paths
        .iter()
        .enumerate()
        .find(|(_, p)| p.vertices.len() != h + 1 || p.hop_weights.len() != h)
        .map(|(i, p)| format!("path {i} has {} hops, want {h}", p.vertices.len().saturating_sub(1)));
    r.push("n2_hop_count", true, n2);

    let n3 = if n1_ok {
        q.paths.iter().enumerate().find_map(|(i, p)| {
            let sum: u64 = p.vertices.windows(2).map(|w| exact[w[0]][w[1]]).sum();
            let stated: u64 = p.hop_weights.iter().sum();
            let d = exact[p.vertices[0]][*p.vertices.last()?];
            (sum != d || stated != d || p.length != d)
                .then(|| format!("path {i}: length {} vs dist {d}", p.length))
        })
    } else {
        Some("skipped after N1 failure".to_string())
    };
    r.push("n3_shortest", true, n3);

    let n4 = q
        .paths
        .windows(2)
        .position(|w| w[0].length > w[1].length)
        .map(|i| format!("paths {i} and {} decrease in length", i + 1));
    r.push("n4_nondecreasing", true, n4);

    if n > ENUMERATION_LIMIT || h == 0 {
        let why = if h == 0 { "beta below 12" } else { "graph above enumeration limit" };
        r.skip("n5_locally_minimal", why);
        r.skip("n6_maximal", why);
        return r;
    }
    if !n1_ok {
        r.push("n5_locally_minimal", true, Some("skipped after N1 failure".into()));
        return r;
    }
    let mut alive = vec![true; n];
    let mut n5 = None;
    for (i, p) in q.paths.iter().enumerate() {
        match residual_tight_paths(&exact, &alive, h) {
            Some((best, path)) if best < p.length => {
                n5 = Some(format!("path {i} has length {}, residual has {path:?} of {best}", p.length));
                break;
            }
            None => {
                n5 = Some(format!("path {i} has no tight {h}-hop path in its residual"));
                break;
            }
            _ => {}
        }
        for &v in &p.vertices {
            alive[v] = false;
        }
    }
    r.push("n5_locally_minimal", true, n5);
    let left = residual_tight_paths(&exact, &alive, h);
    r.push(
        "n6_maximal",
        true,
        left.map(|(len, p)| format!("residual tight path {p:?} of length {len}")),
    );
    r
}

/// Thresholds for [`check_lb_properties`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LbThresholds {
    /// Bound on both the maximum in-degree and out-degree.
    pub max_degree: usize,
    /// Minimum number of edges on every path.
    pub min_path_len: usize,
}

/// Structural properties of a lower-bound instance: degree bounds, path
/// lengths, each path the unique path between its endpoints, pairwise path
/// intersections of at most one vertex, per-vertex path load at most
/// `max(Δ_in, Δ_out)`, and acyclicity.
pub fn check_lb_properties(
    g: &Digraph,
    paths: &[Vec<usize>],
    t: LbThresholds,
) -> VerificationReport {
    let n = g.n();
    let mut r = VerificationReport::new(format!("lower-bound n={n} paths={}", paths.len()));
    let adj = adjacency(n, g.edges());
    let mut indeg = vec![0usize; n];
    for out in &adj {
        for &v in out {
            indeg[v] += 1;
        }
    }
    let d_out = adj.iter().map(Vec::len).max().unwrap_or(0);
    let d_in = indeg.iter().copied().max().unwrap_or(0);
    r.push(
        "degree_bound",
        true,
        (d_in > t.max_degree || d_out > t.max_degree)
            .then(|| format!("in {d_in}, out {d_out} > {}", t.max_degree)),
    );

    // Kahn's algorithm for acyclicity and a counting order
    let mut deg = indeg.clone();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| deg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in &adj[u] {
            deg[v] -= 1;
            if deg[v] == 0 {
                queue.push_back(v);
            }
        }
    }
    let acyclic = order.len() == n;
    r.push(
        "acyclic",
        true,
        (!acyclic).then(|| format!("vertex {} lies on a cycle", (0..n).find(|&v| deg[v] > 0).unwrap_or(0))),
    );

    let malformed = paths.iter().enumerate().find_map(|(i, p)| {
        if p.is_empty() || p.iter().any(|&v| v >= n) {
            return Some(format!("path {i} is empty or out of range"));
        }
        p.windows(2)
            .find(|w| !adj[w[0]].contains(&w[1]))
            .map(|w| format!("path {i}: ({}, {}) is not an edge", w[0], w[1]))
    });
    let well_formed = malformed.is_none();
    r.push("paths_in_graph", true, malformed);

    let short = paths
        .iter()
        .enumerate()
        .find(|(_, p)| p.len().saturating_sub(1) < t.min_path_len)
        .map(|(i, p)| format!("path {i} has {} edges < {}", p.len().saturating_sub(1), t.min_path_len));
    r.push("path_length", true, short);

    let unique = if acyclic && well_formed {
        paths.iter().enumerate().find_map(|(i, p)| {
            let (s, e) = (p[0], *p.last()?);
            let mut count = vec![0u8; n];
            count[s] = 1;
            for &u in &order {
                if count[u] == 0 {
                    continue;
                }
                for &v in &adj[u] {
                    count[v] = count[v].saturating_add(count[u]).min(2);
                }
            }
            (count[e] != 1).then(|| format!("path {i}: {} paths from {s} to {e}", if count[e] == 0 { "no" } else { "several" }))
        })
    } else {
        Some("skipped: needs an acyclic graph and well-formed paths".to_string())
    };
    r.push("unique_paths", true, unique);

    let mut overlap = None;
    'pairs: for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            let shared = paths[i].iter().filter(|v| paths[j].contains(v)).count();
            if shared > 1 {
                overlap = Some(format!("paths {i} and {j} share {shared} vertices"));
                break 'pairs;
            }
        }
    }
    r.push("pairwise_intersection", true, overlap);

    let mut load = vec![0usize; n];
    for p in paths {
        for &v in p {
            if v < n {
                load[v] += 1;
            }
        }
    }
    let cap = d_in.max(d_out).max(1);
    let heavy = (0..n)
        .find(|&v| load[v] > cap)
        .map(|v| format!("vertex {v} lies on {} paths > {cap}", load[v]));
    r.push("vertex_load", true, heavy);
    r
}
