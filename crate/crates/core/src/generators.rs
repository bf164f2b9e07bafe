//! Seeded instance families and the vertex-subdivision transform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, WeightedDigraph};
use crate::rng::{self, SeedSplit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Bernoulli edges on the forward pairs of a random permutation.
    RandomDag,
    /// Bernoulli edges on all ordered pairs.
    RandomDigraph,
    /// `0 → 1 → … → n−1`.
    Path,
    /// Consecutive layers of `width` vertices, Bernoulli edges between
    /// adjacent layers.
    Layered,
    /// Row-major grid with right and down edges.
    GridDag,
    /// `RandomDigraph` with uniform integer weights in `[1, W]`.
    WeightedRandom,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::RandomDag,
        Family::RandomDigraph,
        Family::Path,
        Family::Layered,
        Family::GridDag,
        Family::WeightedRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RandomDag => "random_dag",
            Family::RandomDigraph => "random_digraph",
            Family::Path => "path",
            Family::Layered => "layered",
            Family::GridDag => "grid_dag",
            Family::WeightedRandom => "weighted_random",
        }
    }

    fn uses_probability(self) -> bool {
        matches!(
            self,
            Family::RandomDag | Family::RandomDigraph | Family::Layered | Family::WeightedRandom
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::param(format!("unknown family {s:?}")))
    }
}

/// Edge density, either as a probability or as an expected out-degree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Density {
    Probability(f64),
    OutDegree(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub density: Density,
    pub max_weight: Option<u64>,
    /// Layer width for `Layered`; defaults to `⌈√n⌉`.
    pub width: Option<usize>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            density: Density::Probability(0.0),
            max_weight: None,
            width: None,
            seed,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.density = Density::Probability(p);
        self
    }

    pub fn with_density(mut self, d: f64) -> Self {
        self.density = Density::OutDegree(d);
        self
    }

    pub fn with_max_weight(mut self, w: u64) -> Self {
        self.max_weight = Some(w);
        self
    }

    pub fn with_width(mut self, w: usize) -> Self {
        self.width = Some(w);
        self
    }

    fn probability(&self) -> Result<f64> {
        let p = match self.density {
            Density::Probability(p) => p,
            Density::OutDegree(d) => {
                if self.n <= 1 {
                    0.0
                } else {
                    d / (self.n - 1) as f64
                }
            }
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
        }
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::param("n must be at least 1"));
        }
        if self.family.uses_probability() {
            self.probability()?;
        }
        if self.family == Family::WeightedRandom && self.max_weight.is_none() {
            return Err(Error::param("weighted_random needs a max weight W"));
        }
        if self.max_weight == Some(0) {
            return Err(Error::param("max weight must be at least 1"));
        }
        if self.width == Some(0) {
            return Err(Error::param("layer width must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Unweighted(Digraph),
    Weighted(WeightedDigraph),
}

/// Build an instance. Deterministic in `spec`. A `max_weight` turns any
/// family into its weighted variant.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let split = SeedSplit::new(spec.seed);
    let mut rng = split.stream(rng::GENERATE);
    let n = spec.n;
    let edges: Vec<(usize, usize)> = match spec.family {
        Family::RandomDag => {
            let p = spec.probability()?;
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((perm[a], perm[b]));
                    }
                }
            }
            edges
        }
        Family::RandomDigraph | Family::WeightedRandom => {
            let p = spec.probability()?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Layered => {
            let p = spec.probability()?;
            let w = spec.width.unwrap_or_else(|| (n as f64).sqrt().ceil() as usize).max(1);
            let mut edges = Vec::new();
            for u in 0..n {
                let next = (u / w + 1) * w;
                for v in next..(next + w).min(n) {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        Family::GridDag => {
            let cols = (n as f64).sqrt().ceil() as usize;
            let mut edges = Vec::new();
            for v in 0..n {
                if (v + 1) % cols != 0 && v + 1 < n {
                    edges.push((v, v + 1));
                }
                if v + cols < n {
                    edges.push((v, v + cols));
                }
            }
            edges
        }
    };
    match spec.max_weight {
        None => Ok(Generated::Unweighted(Digraph::new(n, edges)?)),
        Some(w) => {
            let mut wr = split.stream(rng::WEIGHTS);
            let weighted: Vec<_> = edges
                .into_iter()
                .map(|(u, v)| (u, v, wr.gen_range(1..=w)))
                .collect();
            Ok(Generated::Weighted(WeightedDigraph::new(n, w, weighted)?))
        }
    }
}

pub fn generate_unweighted(spec: &GenSpec) -> Result<Digraph> {
    match generate(spec)? {
        Generated::Unweighted(g) => Ok(g),
        Generated::Weighted(g) => Ok(g.unweighted()),
    }
}

pub fn generate_weighted(spec: &GenSpec) -> Result<WeightedDigraph> {
    match generate(spec)? {
        Generated::Weighted(g) => Ok(g),
        Generated::Unweighted(_) => Err(Error::param("generator settings have no max weight")),
    }
}

/// `G_k`: every vertex `v_i` becomes a path `u^i_1 → … → u^i_{k+1}`, and
/// each edge `(v_i, v_j)` becomes `(u^i_{k+1}, u^j_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Digraph,
    pub k: usize,
    /// `head[i] = u^i_1`.
    pub head: Vec<usize>,
    /// `tail[i] = u^i_{k+1}`.
    pub tail: Vec<usize>,
}

impl Subdivision {
    /// Id of `u^i_j`, `j` in `1..=k+1`.
    pub fn copy(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.k + 1).contains(&j));
        i * (self.k + 1) + (j - 1)
    }

    /// The `G_k` image of a vertex sequence of `g`.
    pub fn map_path(&self, path: &[usize]) -> Vec<usize> {
        path.iter()
            .flat_map(|&i| (1..=self.k + 1).map(move |j| (i, j)))
            .map(|(i, j)| self.copy(i, j))
            .collect()
    }
}

pub fn subdivide(g: &Digraph, k: usize) -> Result<Subdivision> {
    if k == 0 {
        return Err(Error::param("subdivision length k must be at least 1"));
    }
    let span = k + 1;
    let n = g.n() * span;
    let mut edges = Vec::with_capacity(g.n() * k + g.m());
    for i in 0..g.n() {
        for j in 0..k {
            edges.push((i * span + j, i * span + j + 1));
        }
    }
    for (u, v) in g.edges() {
        edges.push((u * span + k, v * span));
    }
    let graph = Digraph::new(n, edges)?;
    Ok(Subdivision {
        graph,
        k,
        head: (0..g.n()).map(|i| i * span).collect(),
        tail: (0..g.n()).map(|i| i * span + k).collect(),
    })
}
