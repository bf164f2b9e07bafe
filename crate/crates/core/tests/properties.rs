use proptest::prelude::*;

use shortcut_forge::chain_decomp::decompose;
use shortcut_forge::generators::{generate_unweighted, generate_weighted, subdivide, Family, GenSpec};
use shortcut_forge::graph::{
    apsp, condense, hop_limited_dist, lift_shortcuts, transitive_closure,
};
use shortcut_forge::hopset::{geometric_ladder, hopset_small_hop, ladder_bound};
use shortcut_forge::oracles::{check_decomposition, verify_hopset, verify_shortcut};
use shortcut_forge::shortcut::{build_shortcuts, folklore, shortcut_small_diam};
use shortcut_forge::{Digraph, Ratio};

fn digraph(family: Family) -> impl Strategy<Value = Digraph> {
    (2usize..=128, 0.0f64..0.08, any::<u64>()).prop_map(move |(n, p, seed)| {
        generate_unweighted(&GenSpec::new(family, n, seed).with_p(p)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_idempotent(g in digraph(Family::RandomDigraph)) {
        let c = transitive_closure(&g);
        prop_assert_eq!(transitive_closure(&c.to_digraph()), c);
    }

    #[test]
    fn condensation_is_a_dag(g in digraph(Family::RandomDigraph)) {
        let c = condense(&g);
        prop_assert!(c.dag.topological_order().is_ok());
        // component ids already follow a topological order
        prop_assert!(c.dag.edges().all(|(a, b)| a < b));
    }

    #[test]
    fn random_dag_is_acyclic(g in digraph(Family::RandomDag)) {
        prop_assert!(g.is_acyclic());
    }

    #[test]
    fn lifted_edges_stay_in_closure(g in digraph(Family::RandomDigraph), picks in prop::collection::vec((0usize..128, 0usize..128), 0..20)) {
        let c = condense(&g);
        let k = c.component_count();
        let dag_reach = transitive_closure(&c.dag);
        let h_plus: Vec<_> = picks
            .into_iter()
            .map(|(a, b)| (a % k, b % k))
            .filter(|&(a, b)| a != b && dag_reach.reaches(a, b))
            .collect();
        let lifted = lift_shortcuts(&g, &c, &h_plus).unwrap();
        let reach = transitive_closure(&g);
        for (u, v) in lifted.edges() {
            prop_assert!(reach.reaches(u, v), "({}, {}) not in closure", u, v);
        }
    }

    #[test]
    fn decomposition_meets_budget(g in digraph(Family::RandomDag), ell_seed in 1usize..=64) {
        let ell = ell_seed.min(g.n());
        let d = decompose(&g, ell).unwrap();
        let r = check_decomposition(&g, &d);
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn shortcuts_are_sound_and_deterministic(g in digraph(Family::RandomDigraph), d in 3usize..=8, seed in any::<u64>()) {
        let h = build_shortcuts(&g, d, 3.0, seed).unwrap();
        prop_assert!(verify_shortcut(&g, &h, usize::MAX).sound());
        prop_assert_eq!(build_shortcuts(&g, d, 3.0, seed).unwrap().edges().collect::<Vec<_>>(), h.edges().collect::<Vec<_>>());
        let f = folklore(&g, d, 3.0, seed).unwrap();
        prop_assert!(verify_shortcut(&g, &f, usize::MAX).sound());
    }

    #[test]
    fn small_diam_shortcuts_path_chains(g in digraph(Family::RandomDag), seed in any::<u64>()) {
        prop_assume!(g.n() >= 27);
        let h = shortcut_small_diam(&g, 3, 3.0, seed).unwrap();
        // every consecutive chain pair is an H edge, so chains are closure paths
        for chain in &h.chains {
            for w in chain.windows(2) {
                prop_assert!(h.contains(w[0], w[1]) || g.has_edge(w[0], w[1]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hop_limited_is_monotone(n in 2usize..=48, p in 0.02f64..0.2, w in 1u64..=30, seed in any::<u64>()) {
        let g = generate_weighted(&GenSpec::new(Family::WeightedRandom, n, seed).with_p(p).with_max_weight(w)).unwrap();
        let mut prev = hop_limited_dist(&g, 1);
        for beta in 2..n {
            let next = hop_limited_dist(&g, beta);
            for u in 0..n {
                for v in 0..n {
                    prop_assert!(next.get(u, v) <= prev.get(u, v));
                }
            }
            prev = next;
        }
        prop_assert_eq!(hop_limited_dist(&g, n - 1), apsp(&g));
    }

    #[test]
    fn hopset_never_undercuts(n in 12usize..=60, w in 1u64..=20, seed in any::<u64>()) {
        let g = generate_weighted(&GenSpec::new(Family::WeightedRandom, n, seed).with_p(0.06).with_max_weight(w)).unwrap();
        let eps: Ratio = "1/4".parse().unwrap();
        let h = hopset_small_hop(&g, 12, eps, 3.0, seed).unwrap();
        let r = verify_hopset(&g, &h, g.n(), eps);
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn ladder_size_is_bounded(n in 2usize..=40, w in 1u64..=50, seed in any::<u64>(), eps_den in 2u64..=10) {
        let g = generate_weighted(&GenSpec::new(Family::WeightedRandom, n, seed).with_p(0.15).with_max_weight(w)).unwrap();
        let dist = apsp(&g);
        let eps = Ratio::new(1, eps_den).unwrap();
        let path: Vec<usize> = (0..n).collect();
        for v in 0..n {
            let ladder = geometric_ladder(&dist, v, &path, eps);
            prop_assert!(ladder.len() <= ladder_bound(n, g.max_weight(), eps));
            prop_assert!(ladder.iter().all(|&(a, b, d)| a == v && d == dist.get(a, b)));
        }
    }

    #[test]
    fn subdivision_preserves_reachability(g in digraph(Family::RandomDigraph), k in 1usize..=4) {
        prop_assume!(g.n() <= 40);
        let s = subdivide(&g, k).unwrap();
        prop_assert_eq!(s.graph.n(), g.n() * (k + 1));
        let a = transitive_closure(&g);
        let b = transitive_closure(&s.graph);
        for u in 0..g.n() {
            for v in 0..g.n() {
                prop_assert_eq!(a.reaches(u, v), b.reaches(s.head[u], s.tail[v]));
            }
        }
    }
}
