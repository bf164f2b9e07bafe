//! `(ℓ, 2n/ℓ)`-decompositions of a DAG into chains and antichains.
//!
//! Longest chains are peeled greedily while they have at least `⌈2n/ℓ⌉`
//! vertices (at most `ℓ` times). Every peeled chain is that long, so at most
//! `n / ⌈2n/ℓ⌉ ≤ ℓ/2` chains are ever taken, and the residual has no chain of
//! `⌈2n/ℓ⌉` vertices. The residual is then split into Mirsky levels (level =
//! vertex count of the longest chain ending at the vertex), which are
//! antichains, and there are fewer than `⌈2n/ℓ⌉` of them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    /// Each chain is a directed path of the input, listed source first.
    pub chains: Vec<Vec<usize>>,
    /// Sorted vertex sets, by increasing level.
    pub antichains: Vec<Vec<usize>>,
    pub target_ell: usize,
}

impl ChainDecomposition {
    /// `⌈2n/ℓ⌉`.
    pub fn antichain_budget(n: usize, ell: usize) -> usize {
        (2 * n).div_ceil(ell.max(1))
    }
}

/// Longest chain among `alive` vertices, as a vertex sequence. Among chains
/// of maximum vertex count, the one ending at the smallest vertex id wins;
/// predecessors are also chosen by smallest id.
fn longest_chain(order: &[usize], preds: &Digraph, alive: &[bool]) -> Vec<usize> {
    let n = alive.len();
    let mut len = vec![0usize; n];
    let mut back = vec![usize::MAX; n];
    for &v in order {
        if !alive[v] {
            continue;
        }
        let mut best = 0;
        for &u in preds.out_neighbors(v) {
            // ascending u: strict > keeps the smallest id among ties
            if alive[u] && len[u] > best {
                best = len[u];
                back[v] = u;
            }
        }
        len[v] = best + 1;
    }
    let Some(end) = (0..n).filter(|&v| alive[v]).max_by(|&a, &b| len[a].cmp(&len[b]).then(b.cmp(&a)))
    else {
        return Vec::new();
    };
    let mut chain = vec![end];
    let mut cur = end;
    while back[cur] != usize::MAX {
        cur = back[cur];
        chain.push(cur);
    }
    chain.reverse();
    chain
}

pub fn decompose(dag: &Digraph, ell: usize) -> Result<ChainDecomposition> {
    let n = dag.n();
    if ell == 0 || (n > 0 && ell > n) {
        return Err(Error::param(format!("chain budget {ell} outside [1, {n}]")));
    }
    let order = dag.topological_order()?;
    let preds = dag.reversed();
    let threshold = ChainDecomposition::antichain_budget(n, ell);
    let mut alive = vec![true; n];
    let mut chains = Vec::new();

    while chains.len() < ell {
        let chain = longest_chain(&order, &preds, &alive);
        if chain.is_empty() || chain.len() < threshold {
            break;
        }
        for &v in &chain {
            alive[v] = false;
        }
        chains.push(chain);
    }

    let mut level = vec![0usize; n];
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        if !alive[v] {
            continue;
        }
        let l = preds
            .out_neighbors(v)
            .iter()
            .filter(|&&u| alive[u])
            .map(|&u| level[u])
            .max()
            .unwrap_or(0)
            + 1;
        level[v] = l;
        if levels.len() < l {
            levels.resize(l, Vec::new());
        }
        levels[l - 1].push(v);
    }
    for a in &mut levels {
        a.sort_unstable();
    }
    Ok(ChainDecomposition {
        chains,
        antichains: levels,
        target_ell: ell,
    })
}
