//! Graph substrate: unweighted and weighted digraphs, reachability, SCC
//! condensation, and exact / hop-limited distances.
//!
//! Vertices are dense ids `0..n`. A vertex always reaches itself, so the
//! diagonal of every [`ReachabilityMatrix`] is set; diameters and closure
//! pair counts exclude the diagonal.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};

/// Largest vertex count any graph may have.
pub const MAX_VERTICES: usize = 4096;

/// Distance sentinel for unreachable pairs. Strictly above any `n·W` this
/// crate can produce; [`sat_add`] keeps it absorbing.
pub const INF: u64 = u64::MAX;

/// Largest admissible edge weight.
pub const MAX_WEIGHT: u64 = u32::MAX as u64;

#[inline]
pub fn sat_add(a: u64, b: u64) -> u64 {
    if a == INF || b == INF {
        INF
    } else {
        a.saturating_add(b)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooLarge {
            n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Counts of input edges dropped while building a graph leniently.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DropCounts {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Unweighted digraph. Adjacency lists are sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    m: usize,
    out: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn empty(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Digraph {
            n,
            m: 0,
            out: vec![Vec::new(); n],
        })
    }

    /// Strict constructor: rejects self-loops, duplicates and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.check_endpoints(u, v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.out[u].push(v);
        }
        for (u, adj) in g.out.iter_mut().enumerate() {
            adj.sort_unstable();
            if let Some(w) = adj.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u, w[0]));
            }
        }
        g.m = g.out.iter().map(Vec::len).sum();
        Ok(g)
    }

    /// Lenient constructor: drops self-loops and duplicates, counting them.
    pub fn from_edges_lossy(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, DropCounts)> {
        let mut g = Self::empty(n)?;
        let mut drops = DropCounts::default();
        for (u, v) in edges {
            g.check_endpoints(u, v)?;
            if u == v {
                drops.self_loops += 1;
            } else {
                g.out[u].push(v);
            }
        }
        for adj in g.out.iter_mut() {
            adj.sort_unstable();
            let before = adj.len();
            adj.dedup();
            drops.duplicates += before - adj.len();
        }
        g.m = g.out.iter().map(Vec::len).sum();
        Ok((g, drops))
    }

    fn check_endpoints(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// Edges in `(u, v)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u, v)))
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for (_, v) in self.edges() {
            d[v] += 1;
        }
        d
    }

    pub fn reversed(&self) -> Digraph {
        let mut out = vec![Vec::new(); self.n];
        for (u, v) in self.edges() {
            out[v].push(u);
        }
        // pushes happen in increasing u, so lists are already sorted
        Digraph {
            n: self.n,
            m: self.m,
            out,
        }
    }

    /// `self ∪ extra`; self-loops and repeats in `extra` are ignored.
    pub fn union(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Digraph> {
        Digraph::from_edges_lossy(self.n, self.edges().chain(extra)).map(|(g, _)| g)
    }

    /// Induced subgraph on `keep` (in the given order); vertex `keep[i]`
    /// becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> Digraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().enumerate().flat_map(|(i, &u)| {
            let index = &index;
            self.out[u]
                .iter()
                .filter(move |&&v| index[v] != usize::MAX)
                .map(move |&v| (i, index[v]))
        });
        Digraph::from_edges_lossy(keep.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph of a valid graph")
            .0
    }

    /// Kahn's algorithm; ties resolved by smallest vertex id.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = self.in_degrees();
        let mut ready: BinaryHeap<Reverse<usize>> = indeg
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| Reverse(v))
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(u);
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        if order.len() == self.n {
            Ok(order)
        } else {
            let stuck = indeg.iter().position(|&d| d > 0).unwrap_or(0);
            Err(Error::Cyclic(stuck))
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    pub fn adjacency_matrix(&self) -> BitMatrix {
        let mut a = BitMatrix::zeros(self.n);
        for (u, v) in self.edges() {
            a.set(u, v);
        }
        a
    }

    /// BFS hop distances from `s`.
    pub fn bfs(&self, s: usize) -> Vec<u64> {
        let mut dist = vec![INF; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in &self.out[u] {
                if dist[v] == INF {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances.
    pub fn hop_distances(&self) -> DistanceMatrix {
        let rows = par_map_range!(0..self.n, |s| self.bfs(s));
        DistanceMatrix::from_rows(self.n, rows)
    }
}

/// Reflexive transitive closure `G★`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityMatrix {
    bits: BitMatrix,
}

impl ReachabilityMatrix {
    pub fn n(&self) -> usize {
        self.bits.dim()
    }

    #[inline]
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.bits.get(u, v)
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    /// Vertices reachable from `u`, including `u`, ascending.
    pub fn reachable_from(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.bits.row_ones(u)
    }

    /// Closure pairs `(u, v)` with `u ≠ v`, lexicographic.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.bits.row_ones(u).filter(move |&v| v != u).map(move |v| (u, v)))
    }

    pub fn pair_count(&self) -> usize {
        self.bits.count_ones() - self.n()
    }

    /// The closure as a digraph (diagonal dropped).
    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(self.n(), self.pairs()).expect("closure pairs are a valid edge set")
    }
}

/// Closure by repeated squaring of `A ∨ I`; stops at a fixpoint, and at the
/// latest after `⌈log₂ n⌉` squarings.
pub fn transitive_closure(g: &Digraph) -> ReachabilityMatrix {
    let mut m = g.adjacency_matrix();
    for i in 0..g.n() {
        m.set(i, i);
    }
    let mut span = 1usize;
    while span < g.n().saturating_sub(1) {
        let next = m.mul(&m);
        span *= 2;
        if next == m {
            break;
        }
        m = next;
    }
    ReachabilityMatrix { bits: m }
}

/// Pairs joined by a walk of at most `r` edges, as `(A ∨ I)^r`.
pub fn bounded_reachability(g: &Digraph, r: usize) -> BitMatrix {
    let mut a = g.adjacency_matrix();
    for i in 0..g.n() {
        a.set(i, i);
    }
    a.reflexive_power(r)
}

/// Strongly connected components contracted to a DAG. Component ids follow
/// a topological order of `dag`; `members[c]` is sorted, and its first entry
/// is the component's representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub dag: Digraph,
    pub component_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Condensation {
    pub fn representative(&self, c: usize) -> usize {
        self.members[c][0]
    }

    pub fn component_count(&self) -> usize {
        self.members.len()
    }
}

/// Iterative Tarjan.
pub fn condense(g: &Digraph) -> Condensation {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0;
    // (vertex, next neighbor position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (u, ref mut pos)) = call.last_mut() {
            if let Some(&v) = g.out_neighbors(u).get(*pos) {
                *pos += 1;
                if index[v] == UNSEEN {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = comps.len();
                    members.push(w);
                    if w == u {
                        break;
                    }
                }
                members.sort_unstable();
                comps.push(members);
            }
        }
    }

    // Tarjan emits components in reverse topological order.
    let k = comps.len();
    let component_of: Vec<usize> = comp.iter().map(|&c| k - 1 - c).collect();
    comps.reverse();
    let dag_edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (component_of[u], component_of[v]))
        .filter(|(a, b)| a != b)
        .collect();
    let dag = Digraph::from_edges_lossy(k, dag_edges)
        .expect("condensation is no larger than its input")
        .0;
    Condensation {
        dag,
        component_of,
        members: comps,
    }
}

/// Shortcuts of a condensation mapped back to the original graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftedShortcuts {
    /// `mapped[i]` is the image of the `i`-th input edge: representative to
    /// representative.
    pub mapped: Vec<(usize, usize)>,
    /// Per non-trivial component, edges member→representative and
    /// representative→member.
    pub stars: Vec<(usize, usize)>,
}

impl LiftedShortcuts {
    pub fn len(&self) -> usize {
        self.mapped.len() + self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mapped.iter().chain(self.stars.iter()).copied()
    }
}

/// Lift a shortcut set of `c.dag` to `g`.
///
/// Every member of a component is one hop from its representative in both
/// directions, and each condensation edge is realized by some `g` edge
/// `(x, y)` as `rep → x → y → rep'`. A path of `d` hops in `dag ∪ h_plus`
/// therefore becomes at most `3d + 2` hops in `g ∪ H`, and
/// `|H| ≤ |h_plus| + 2·(n − #components)`.
pub fn lift_shortcuts(
    g: &Digraph,
    c: &Condensation,
    h_plus: &[(usize, usize)],
) -> Result<LiftedShortcuts> {
    let k = c.component_count();
    let dag_closure = if h_plus.is_empty() {
        None
    } else {
        Some(transitive_closure(&c.dag))
    };
    let mut mapped = Vec::with_capacity(h_plus.len());
    for &(a, b) in h_plus {
        if a >= k || b >= k {
            return Err(Error::VertexOutOfRange {
                vertex: a.max(b),
                n: k,
            });
        }
        let closure = dag_closure.as_ref().expect("non-empty h_plus");
        if a == b || !closure.reaches(a, b) {
            return Err(Error::NotInClosure(a, b));
        }
        mapped.push((c.representative(a), c.representative(b)));
    }
    let mut stars = Vec::new();
    for members in &c.members {
        let rep = members[0];
        for &x in &members[1..] {
            stars.push((x, rep));
            stars.push((rep, x));
        }
    }
    debug_assert_eq!(g.n(), c.component_of.len());
    Ok(LiftedShortcuts { mapped, stars })
}

fn check_weight_bound(max_weight: u64) -> Result<()> {
    if max_weight == 0 || max_weight > MAX_WEIGHT {
        return Err(Error::param(format!(
            "max weight must be in [1, {MAX_WEIGHT}], got {max_weight}"
        )));
    }
    Ok(())
}

/// Digraph with integer weights in `[1, W]`.
///
/// Input weights are capped at [`MAX_WEIGHT`]; graphs derived from
/// distances (closures, unions with hopset edges) may carry larger weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    m: usize,
    max_weight: u64,
    out: Vec<Vec<(usize, u64)>>,
}

impl WeightedDigraph {
    /// Strict constructor.
    pub fn new(
        n: usize,
        max_weight: u64,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        check_weight_bound(max_weight)?;
        let (g, drops) = Self::build(n, max_weight, edges, true)?;
        debug_assert_eq!(drops, DropCounts::default());
        Ok(g)
    }

    /// Lenient constructor: drops self-loops; of duplicate `(u, v)` pairs
    /// keeps the lightest.
    pub fn from_edges_lossy(
        n: usize,
        max_weight: u64,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<(Self, DropCounts)> {
        check_weight_bound(max_weight)?;
        Self::build(n, max_weight, edges, false)
    }

    fn build(
        n: usize,
        max_weight: u64,
        edges: impl IntoIterator<Item = (usize, usize, u64)>,
        strict: bool,
    ) -> Result<(Self, DropCounts)> {
        check_size(n)?;
        let mut out: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        let mut drops = DropCounts::default();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if w == 0 || w > max_weight {
                return Err(Error::BadWeight {
                    u,
                    v,
                    w,
                    max: max_weight,
                });
            }
            if u == v {
                if strict {
                    return Err(Error::SelfLoop(u));
                }
                drops.self_loops += 1;
                continue;
            }
            out[u].push((v, w));
        }
        for (u, adj) in out.iter_mut().enumerate() {
            adj.sort_unstable();
            let before = adj.len();
            if strict {
                if let Some(w) = adj.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Err(Error::DuplicateEdge(u, w[0].0));
                }
            }
            // sorted by (v, w): the first of each run is the lightest
            adj.dedup_by_key(|e| e.0);
            drops.duplicates += before - adj.len();
        }
        let m = out.iter().map(Vec::len).sum();
        Ok((
            WeightedDigraph {
                n,
                m,
                max_weight,
                out,
            },
            drops,
        ))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    #[inline]
    pub fn out_edges(&self, u: usize) -> &[(usize, u64)] {
        &self.out[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&(v, w)| (u, v, w)))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        let adj = &self.out[u];
        adj.binary_search_by_key(&v, |e| e.0).ok().map(|i| adj[i].1)
    }

    pub fn unweighted(&self) -> Digraph {
        Digraph::new(self.n, self.edges().map(|(u, v, _)| (u, v))).expect("same edge set")
    }

    /// `self ∪ extra`, keeping the lighter weight on repeated pairs. The
    /// weight bound grows to cover `extra`.
    pub fn union(&self, extra: impl IntoIterator<Item = (usize, usize, u64)>) -> Result<Self> {
        let extra: Vec<_> = extra.into_iter().collect();
        let max_weight = extra
            .iter()
            .map(|e| e.2)
            .chain(std::iter::once(self.max_weight))
            .max()
            .unwrap_or(1);
        Self::build(self.n, max_weight, self.edges().chain(extra), false).map(|(g, _)| g)
    }

    /// Induced subgraph on `keep`; `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[usize]) -> WeightedDigraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &u) in keep.iter().enumerate() {
            for &(v, w) in &self.out[u] {
                if index[v] != usize::MAX {
                    edges.push((i, index[v], w));
                }
            }
        }
        WeightedDigraph::new(keep.len(), self.max_weight, edges).expect("induced subgraph")
    }
}

/// Dense `n × n` distance table; [`INF`] marks unreachable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u64>,
}

impl DistanceMatrix {
    pub fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Self {
        debug_assert_eq!(rows.len(), n);
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            debug_assert_eq!(row.len(), n);
            dist.extend(row);
        }
        DistanceMatrix { n, dist }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest finite off-diagonal entry, with its pair.
    pub fn max_finite(&self) -> Option<(u64, usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for u in 0..self.n {
            for v in 0..self.n {
                let d = self.get(u, v);
                if u != v && d != INF && best.is_none_or(|b| d > b.0) {
                    best = Some((d, u, v));
                }
            }
        }
        best
    }
}

fn dijkstra(g: &WeightedDigraph, s: usize) -> Vec<u64> {
    let mut dist = vec![INF; g.n()];
    let mut heap = BinaryHeap::new();
    dist[s] = 0;
    heap.push(Reverse((0u64, s)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.out_edges(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Exact all-pairs shortest paths, Dijkstra from every source.
pub fn apsp(g: &WeightedDigraph) -> DistanceMatrix {
    let rows = par_map_range!(0..g.n(), |s| dijkstra(g, s));
    DistanceMatrix::from_rows(g.n(), rows)
}

/// Round-synchronous Bellman–Ford from `s`, at most `beta` rounds. Only
/// vertices improved in the previous round are relaxed.
pub fn hop_limited_from(g: &WeightedDigraph, s: usize, beta: usize) -> Vec<u64> {
    let n = g.n();
    let mut dist = vec![INF; n];
    dist[s] = 0;
    let mut frontier = vec![s];
    let mut next = vec![INF; n];
    let mut touched = Vec::new();
    for _ in 0..beta {
        if frontier.is_empty() {
            break;
        }
        for &u in &frontier {
            let du = dist[u];
            for &(v, w) in g.out_edges(u) {
                let nd = du + w;
                if nd < dist[v] && nd < next[v] {
                    if next[v] == INF {
                        touched.push(v);
                    }
                    next[v] = nd;
                }
            }
        }
        frontier.clear();
        for &v in &touched {
            if next[v] < dist[v] {
                dist[v] = next[v];
                frontier.push(v);
            }
            next[v] = INF;
        }
        touched.clear();
    }
    dist
}

/// `dist^(β)`: minimum length over paths of at most `beta` edges.
pub fn hop_limited_dist(g: &WeightedDigraph, beta: usize) -> DistanceMatrix {
    let rows = par_map_range!(0..g.n(), |s| hop_limited_from(g, s, beta));
    DistanceMatrix::from_rows(g.n(), rows)
}

/// `G★_ω`: an edge `(u, v, dist(u, v))` for every reachable `u ≠ v`.
pub fn weighted_closure(g: &WeightedDigraph) -> WeightedDigraph {
    closure_from_distances(&apsp(g))
}

pub(crate) fn closure_from_distances(dist: &DistanceMatrix) -> WeightedDigraph {
    let n = dist.n();
    let mut edges = Vec::new();
    let mut max_w = 1;
    for u in 0..n {
        for v in 0..n {
            let d = dist.get(u, v);
            if u != v && d != INF {
                max_w = max_w.max(d);
                edges.push((u, v, d));
            }
        }
    }
    WeightedDigraph::build(n, max_w, edges, true)
        .expect("closure of a valid graph")
        .0
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::generators::{self, Family, GenSpec};

    fn path(n: usize) -> Digraph {
        Digraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn random_digraph(n: usize, p: f64, seed: u64) -> Digraph {
        generators::generate_unweighted(&GenSpec::new(Family::RandomDigraph, n, seed).with_p(p))
            .unwrap()
    }

    fn dfs_closure(g: &Digraph) -> Vec<Vec<bool>> {
        (0..g.n())
            .map(|s| {
                let mut seen = vec![false; g.n()];
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(u) = stack.pop() {
                    for &v in g.out_neighbors(u) {
                        if !seen[v] {
                            seen[v] = true;
                            stack.push(v);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    #[test]
    fn strict_constructor_rejects_bad_edges() {
        assert!(matches!(Digraph::new(3, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Digraph::new(3, [(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Digraph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(
            Digraph::empty(MAX_VERTICES + 1),
            Err(Error::TooLarge { .. })
        ));
        let (g, d) = Digraph::from_edges_lossy(3, [(0, 0), (0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(d, DropCounts { self_loops: 1, duplicates: 1 });
    }

    #[test]
    fn closure_of_empty_graph_is_identity() {
        let c = transitive_closure(&Digraph::empty(3).unwrap());
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(c.reaches(u, v), u == v);
            }
        }
        assert_eq!(c.pair_count(), 0);
    }

    #[test]
    fn closure_of_path() {
        let c = transitive_closure(&path(3));
        let pairs: Vec<_> = c.pairs().collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
        assert!((0..3).all(|i| c.reaches(i, i)));
    }

    #[test]
    fn closure_matches_dfs_on_random_graphs() {
        for seed in 0..50 {
            let g = random_digraph(32, 0.06, seed);
            let c = transitive_closure(&g);
            let oracle = dfs_closure(&g);
            for u in 0..32 {
                for v in 0..32 {
                    assert_eq!(c.reaches(u, v), oracle[u][v], "seed {seed} ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn closure_handles_long_paths() {
        // needs the full ⌈log₂ n⌉ squarings
        let g = path(200);
        let c = transitive_closure(&g);
        assert!(c.reaches(0, 199));
        assert_eq!(c.pair_count(), 200 * 199 / 2);
    }

    #[test]
    fn condense_cycle() {
        let g = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = condense(&g);
        assert_eq!(c.dag.n(), 1);
        assert_eq!(c.dag.m(), 0);
        assert_eq!(c.members, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn condense_dag_is_identity_up_to_topological_relabeling() {
        let g = Digraph::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let c = condense(&g);
        assert_eq!(c.dag.n(), 4);
        assert!(c.members.iter().all(|m| m.len() == 1));
        for (u, v) in g.edges() {
            assert!(c.dag.has_edge(c.component_of[u], c.component_of[v]));
        }
        assert_eq!(c.dag.m(), g.m());
        // ids follow a topological order
        for (a, b) in c.dag.edges() {
            assert!(a < b);
        }
    }

    #[test]
    fn condense_matches_mutual_reachability() {
        for seed in 0..20 {
            let g = random_digraph(64, 0.03, seed);
            let c = condense(&g);
            let oracle = dfs_closure(&g);
            for u in 0..64 {
                for v in 0..64 {
                    let same = oracle[u][v] && oracle[v][u];
                    assert_eq!(c.component_of[u] == c.component_of[v], same);
                }
            }
            assert!(c.dag.is_acyclic());
            for (a, b) in c.dag.edges() {
                let crossing = g
                    .edges()
                    .any(|(u, v)| c.component_of[u] == a && c.component_of[v] == b);
                assert!(crossing);
            }
        }
    }

    #[test]
    fn lift_on_acyclic_graph_with_no_shortcuts_is_empty() {
        let g = path(5);
        let c = condense(&g);
        assert!(lift_shortcuts(&g, &c, &[]).unwrap().is_empty());
    }

    #[test]
    fn lift_two_triangles() {
        // A = {0,1,2}, B = {3,4,5}, one crossing edge 2 -> 3
        let g = Digraph::new(
            6,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        )
        .unwrap();
        let c = condense(&g);
        assert_eq!(c.dag.n(), 2);
        let (a, b) = (c.component_of[0], c.component_of[3]);
        let lifted = lift_shortcuts(&g, &c, &[(a, b)]).unwrap();
        assert_eq!(lifted.mapped, vec![(0, 3)]);
        assert!(lifted.stars.len() <= 2 * (3 - 1) * 2);
        let aug = g.union(lifted.edges()).unwrap();
        for u in 0..3 {
            let d = aug.bfs(u);
            for v in 3..6 {
                assert!(d[v] <= 5, "{u}->{v} took {}", d[v]);
            }
        }
    }

    #[test]
    fn lift_rejects_non_closure_edges() {
        let g = Digraph::new(3, [(0, 1)]).unwrap();
        let c = condense(&g);
        let (a, b) = (c.component_of[1], c.component_of[0]);
        assert!(matches!(
            lift_shortcuts(&g, &c, &[(a, b)]),
            Err(Error::NotInClosure(..))
        ));
    }

    #[test]
    fn apsp_single_edge_and_cycle() {
        let g = WeightedDigraph::new(2, 5, [(0, 1, 5)]).unwrap();
        let d = apsp(&g);
        assert_eq!(d.get(0, 1), 5);
        assert_eq!(d.get(1, 0), INF);

        let c = WeightedDigraph::new(4, 1, (0..4).map(|i| (i, (i + 1) % 4, 1))).unwrap();
        let d = apsp(&c);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.get(i, j), ((j + 4 - i) % 4) as u64);
            }
        }
    }

    fn bellman_ford(g: &WeightedDigraph, s: usize) -> Vec<u64> {
        let mut d = vec![INF; g.n()];
        d[s] = 0;
        loop {
            let mut changed = false;
            for (u, v, w) in g.edges() {
                if d[u] != INF && d[u] + w < d[v] {
                    d[v] = d[u] + w;
                    changed = true;
                }
            }
            if !changed {
                return d;
            }
        }
    }

    #[test]
    fn apsp_matches_bellman_ford() {
        for seed in 0..5 {
            let g = generators::generate_weighted(
                &GenSpec::new(Family::WeightedRandom, 40, seed).with_p(0.08).with_max_weight(10),
            )
            .unwrap();
            let d = apsp(&g);
            for s in 0..40 {
                assert_eq!(d.row(s), bellman_ford(&g, s).as_slice());
            }
        }
    }

    #[test]
    fn hop_limited_edge_cases() {
        let g = WeightedDigraph::new(3, 1, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let d0 = hop_limited_dist(&g, 0);
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d0.get(u, v), if u == v { 0 } else { INF });
            }
        }
        let d1 = hop_limited_dist(&g, 1);
        assert_eq!(d1.get(0, 2), INF);
        assert_eq!(d1.get(0, 1), 1);
    }

    fn enumerate_hop_limited(g: &WeightedDigraph, s: usize, beta: usize) -> Vec<u64> {
        // walks of at most beta edges, exhaustively
        let mut best = vec![INF; g.n()];
        fn go(g: &WeightedDigraph, u: usize, len: u64, left: usize, best: &mut [u64]) {
            best[u] = best[u].min(len);
            if left == 0 {
                return;
            }
            for &(v, w) in g.out_edges(u) {
                go(g, v, len + w, left - 1, best);
            }
        }
        go(g, s, 0, beta, &mut best);
        best
    }

    #[test]
    fn hop_limited_matches_enumeration() {
        let g = generators::generate_weighted(
            &GenSpec::new(Family::WeightedRandom, 30, 11).with_p(0.08).with_max_weight(9),
        )
        .unwrap();
        let d = hop_limited_dist(&g, 4);
        for s in 0..30 {
            assert_eq!(d.row(s), enumerate_hop_limited(&g, s, 4).as_slice(), "source {s}");
        }
    }

    #[test]
    fn hop_limited_is_monotone_and_converges() {
        let g = generators::generate_weighted(
            &GenSpec::new(Family::WeightedRandom, 25, 3).with_p(0.1).with_max_weight(20),
        )
        .unwrap();
        let exact = apsp(&g);
        let mut prev = hop_limited_dist(&g, 0);
        for beta in 1..25 {
            let cur = hop_limited_dist(&g, beta);
            for u in 0..25 {
                for v in 0..25 {
                    assert!(cur.get(u, v) <= prev.get(u, v));
                }
            }
            prev = cur;
        }
        assert_eq!(prev, exact);
    }

    #[test]
    fn weighted_closure_edges_are_distances() {
        let g = WeightedDigraph::new(3, 5, [(0, 1, 5), (1, 2, 2)]).unwrap();
        let c = weighted_closure(&g);
        assert_eq!(
            c.edges().collect::<Vec<_>>(),
            vec![(0, 1, 5), (0, 2, 7), (1, 2, 2)]
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let g = random_digraph(40, 0.05, 9);
        let c = transitive_closure(&g);
        assert_eq!(transitive_closure(&c.to_digraph()), c);
    }

    #[test]
    fn bounded_reachability_matches_bfs() {
        let g = random_digraph(50, 0.04, 2);
        let hops = g.hop_distances();
        for r in [0, 1, 3, 7] {
            let b = bounded_reachability(&g, r);
            for u in 0..50 {
                for v in 0..50 {
                    assert_eq!(b.get(u, v), hops.get(u, v) <= r as u64);
                }
            }
        }
    }
}
