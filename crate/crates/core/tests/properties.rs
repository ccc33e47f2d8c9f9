use std::collections::HashSet;
use std::sync::Arc;

use oddwalk::cycles::CycleSet;
use oddwalk::decomposition::{decompose, DecompositionConfig};
use oddwalk::dsu::{ParityDsu, SparseParityDsu};
use oddwalk::edgelist::{parse_edge_list, write_edge_list};
use oddwalk::exact::{
    distance_to_bipartite_exact, is_bipartite, monochromatic_edges, packing_lower_bound,
};
use oddwalk::generators::{cycle, random_planar, split_to_degree3};
use oddwalk::harvest::prune_by_degree;
use oddwalk::reduction::{
    build_contracted, contract_step, cycle_image, is_well_contractible, GoodPartition,
};
use oddwalk::tester::{trial_rng, wilson_interval, Z95};
use oddwalk::Graph;
use proptest::prelude::*;

fn edges(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(move |n| {
        let e = (0..n, 0..n).prop_filter("no loops", |(u, v)| u != v);
        (Just(n), proptest::collection::vec(e, 0..=max_m))
    })
}

/// Exhaustive 2-coloring over all assignments.
fn brute_two_colorable(n: usize, es: &[(usize, usize, u8)]) -> bool {
    (0u32..1 << n).any(|mask| {
        es.iter()
            .all(|&(u, v, p)| ((mask >> u) ^ (mask >> v)) & 1 == u32::from(p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dsu_matches_exhaustive_coloring(
        n in 1usize..=10,
        raw in proptest::collection::vec((0usize..10, 0usize..10, 0u8..2), 0..30),
    ) {
        let es: Vec<(usize, usize, u8)> = raw.into_iter().map(|(u, v, p)| (u % n, v % n, p)).collect();
        let mut dsu = ParityDsu::new(n);
        let mut sparse = SparseParityDsu::new();
        let mut first = None;
        for (i, &(u, v, p)) in es.iter().enumerate() {
            let c = dsu.add_edge(u, v, p);
            prop_assert_eq!(c, sparse.add_edge(u + 1000, v + 1000, p));
            if c && first.is_none() {
                first = Some(i);
            }
        }
        let brute = (1..=es.len()).find(|&k| !brute_two_colorable(n, &es[..k])).map(|k| k - 1);
        prop_assert_eq!(first, brute);
    }

    #[test]
    fn graph_invariants_and_round_trip((n, es) in edges(30, 80)) {
        let g = Graph::from_edges(n, es.clone()).unwrap();
        g.check_invariants().unwrap();
        let distinct: HashSet<(usize, usize)> = es.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        prop_assert_eq!(g.edge_count(), distinct.len());
        let degree_sum: usize = (0..n).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        let back = parse_edge_list(&write_edge_list(&g, &["round trip".into()])).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn bipartite_check_is_sound((n, es) in edges(14, 30)) {
        let g = Graph::from_edges(n, es).unwrap();
        let check = is_bipartite(&g);
        match (&check.coloring, &check.odd_cycle) {
            (Some(col), None) => prop_assert_eq!(monochromatic_edges(&g, col), 0),
            (None, Some(c)) => {
                prop_assert_eq!(c.len() % 2, 1);
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            _ => prop_assert!(false, "exactly one of coloring and odd cycle"),
        }
        let exact = distance_to_bipartite_exact(&g).unwrap();
        prop_assert_eq!(exact == 0, check.is_bipartite());
        prop_assert!(packing_lower_bound(&g, None).0 <= exact);
    }

    #[test]
    fn split_preserves_bipartiteness((n, es) in edges(16, 40)) {
        let g = Graph::from_edges(n, es).unwrap();
        let s = split_to_degree3(&g);
        prop_assert!(s.max_degree() <= 3);
        prop_assert_eq!(is_bipartite(&s).is_bipartite(), is_bipartite(&g).is_bipartite());
    }

    #[test]
    fn decomposition_respects_budget(seed in 0u64..1000, delta in prop::sample::select(vec![0.1, 0.2, 0.5])) {
        let g = random_planar(12, 12, 0.8, &mut trial_rng(seed, 0)).unwrap();
        let d = decompose(&g, delta, &mut trial_rng(seed, 1)).unwrap();
        let cfg = DecompositionConfig::default();
        prop_assert!(d.cut_edges.len() <= cfg.cut_budget(delta, g.vertex_count()));
        prop_assert!(d.diameter_upper.iter().all(|&x| x <= cfg.diameter_bound(delta)));
        for &(u, v) in &d.cut_edges {
            prop_assert_ne!(d.component_of[u], d.component_of[v]);
        }
    }

    #[test]
    fn contiguous_partitions_keep_odd_parity(len in (1usize..=8).prop_map(|k| 2 * k + 1), cuts in proptest::collection::btree_set(0usize..17, 1..6), pick in 0usize..100) {
        // classes are the arcs between cut points; each head is an arc member
        let cuts: Vec<usize> = cuts.into_iter().filter(|&c| c < len).collect();
        prop_assume!(!cuts.is_empty());
        let mut heads = vec![0; len];
        for (j, &start) in cuts.iter().enumerate() {
            let end = if j + 1 < cuts.len() { cuts[j + 1] } else { cuts[0] + len };
            let arc: Vec<usize> = (start..end).map(|i| i % len).collect();
            let h = arc[pick % arc.len()];
            for v in arc {
                heads[v] = h;
            }
        }
        let cs = Arc::new(CycleSet::new(Arc::new(cycle(len).unwrap()), vec![(0..len).collect()]).unwrap());
        let p = GoodPartition::from_heads(heads);
        let s = build_contracted(&cs, vec![0], p.clone()).unwrap();
        let im = &s.images()[0];
        prop_assert_eq!(im.parity_sum(), 1);
        prop_assert_eq!(im.len(), cuts.len());
        prop_assert_eq!(im, &cycle_image(cs.cycle(0), &p));
        // contracting any one head agrees with rebuilding from the partition
        if im.len() >= 2 {
            let u = im.heads[pick % im.len()];
            prop_assert!(is_well_contractible(&s, u));
            let next = contract_step(&s, &[u]).unwrap();
            next.audit().unwrap();
            prop_assert_eq!(next.max_image_len(), im.len() - 1);
        }
    }

    #[test]
    fn prune_reaches_fixpoint(
        contrib in proptest::collection::vec(proptest::collection::vec((0usize..12, 1usize..3), 1..5), 0..20),
        reference in proptest::collection::vec(0usize..40, 12),
        num in 1usize..20,
    ) {
        let kept = prune_by_degree(&contrib, &reference, (num, 12));
        let mut cur = [0; 12];
        for &i in &kept {
            for &(v, a) in &contrib[i] {
                cur[v] += a;
            }
        }
        for v in 0..12 {
            prop_assert!(cur[v] == 0 || 12 * cur[v] * 12 > num * reference[v]);
        }
    }

    #[test]
    fn wilson_interval_is_proper(n in 1usize..100_000, frac in 0.0f64..=1.0) {
        let k = ((n as f64) * frac) as usize;
        let (lo, hi) = wilson_interval(k, n, Z95);
        let p = k as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= p + 1e-12 && p <= hi + 1e-12 && hi <= 1.0);
    }
}
