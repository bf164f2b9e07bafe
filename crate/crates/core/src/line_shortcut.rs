//! Shortcutting a single directed path to diameter 2.
//!
//! Every vertex is joined to the middle vertex of its range (forward edges
//! into it from the left half, out of it into the right half), then both
//! halves recurse. Two vertices `i < j` are separated, or one of them is the
//! midpoint, at some level; the midpoint `m` of that level gives
//! `p[i] → p[m] → p[j]`.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathShortcut {
    pub path: Vec<usize>,
    /// Forward pairs, in construction order; path edges themselves are not
    /// repeated here.
    pub edges: Vec<(usize, usize)>,
}

impl PathShortcut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// `|p| · ⌈log₂ |p|⌉`.
pub fn edge_budget(len: usize) -> usize {
    if len <= 1 {
        0
    } else {
        len * (usize::BITS - (len - 1).leading_zeros()) as usize
    }
}

/// Shortcut edges over positions `0..len`; `(i, j)` with `i + 1 < j`.
pub fn shortcut_positions(len: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if len < 3 {
        return out;
    }
    let mut stack = vec![(0usize, len - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi <= lo + 1 {
            continue;
        }
        let mid = (lo + hi) / 2;
        // i + 1 == mid and mid + 1 == j are path edges
        out.extend((lo..mid.saturating_sub(1)).map(|i| (i, mid)));
        out.extend((mid + 2..=hi).map(|j| (mid, j)));
        if mid > lo {
            stack.push((lo, mid - 1));
        }
        stack.push((mid + 1, hi));
    }
    out
}

pub fn shortcut_path(p: &[usize]) -> Result<PathShortcut> {
    let mut seen = HashSet::with_capacity(p.len());
    for &v in p {
        if !seen.insert(v) {
            return Err(Error::DuplicateVertex(v));
        }
    }
    if p.is_empty() {
        return Err(Error::param("path must have at least one vertex"));
    }
    let edges = shortcut_positions(p.len())
        .into_iter()
        .map(|(i, j)| (p[i], p[j]))
        .collect();
    Ok(PathShortcut {
        path: p.to_vec(),
        edges,
    })
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Max forward BFS distance over `i < j` in path ∪ shortcuts, on positions.
    fn max_forward_distance(len: usize, edges: &[(usize, usize)]) -> usize {
        let mut adj = vec![Vec::new(); len];
        for i in 1..len {
            adj[i - 1].push(i);
        }
        for &(i, j) in edges {
            adj[i].push(j);
        }
        let mut worst = 0;
        for s in 0..len {
            let mut dist = vec![usize::MAX; len];
            dist[s] = 0;
            let mut q = std::collections::VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            for t in s + 1..len {
                worst = worst.max(dist[t]);
            }
        }
        worst
    }

    #[test]
    fn tiny_paths_need_nothing() {
        assert!(shortcut_path(&[7]).unwrap().is_empty());
        assert!(shortcut_path(&[7, 3]).unwrap().is_empty());
        assert!(shortcut_path(&[]).is_err());
    }

    #[test]
    fn rejects_repeated_vertices() {
        assert!(matches!(
            shortcut_path(&[1, 2, 1]),
            Err(Error::DuplicateVertex(1))
        ));
    }

    #[test]
    fn thirty_three_vertices() {
        let p: Vec<usize> = (100..133).collect();
        let s = shortcut_path(&p).unwrap();
        let pos: Vec<(usize, usize)> = s.edges.iter().map(|&(u, v)| (u - 100, v - 100)).collect();
        assert!(max_forward_distance(33, &pos) <= 2);
        assert!(s.len() <= 33 * 6);
    }

    #[test]
    fn edges_are_distinct() {
        let e = shortcut_positions(500);
        let set: HashSet<_> = e.iter().collect();
        assert_eq!(set.len(), e.len());
    }

    proptest! {
        #[test]
        fn diameter_two_within_budget(len in 1usize..=300) {
            let e = shortcut_positions(len);
            prop_assert!(e.len() <= edge_budget(len));
            prop_assert!(e.iter().all(|&(i, j)| i + 1 < j && j < len));
            prop_assert!(max_forward_distance(len, &e) <= 2);
        }
    }
}
