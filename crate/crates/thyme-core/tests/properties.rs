//! Cross-module invariants checked on seeded random inputs.

use proptest::prelude::*;

use thyme_core::analysis::{significance, CharacteristicProfile};
use thyme_core::counting::{
    count_brute_force, count_dp, count_ordered_timestamp_pairs, count_thyme, count_thyme_plus,
    MotifCountVector, ThymePlusState, ThymeState,
};
use thyme_core::features::incident_counts;
use thyme_core::hypergraph::{NodeId, TemporalHypergraph};
use thyme_core::motif::{MotifTable, RegionPattern};
use thyme_core::synthetic::{random_hypergraph, RandomConfig};
use thyme_core::RandomSeed;

fn case(seed: u64) -> TemporalHypergraph {
    random_hypergraph(RandomConfig {
        node_count: 12 + (seed % 17) as usize,
        edge_count: 30 + (seed % 60) as usize,
        size_range: (1, 5),
        repeat_prob: [0.0, 0.3, 0.6, 0.9][(seed % 4) as usize],
        seed: RandomSeed(seed),
    })
}

fn deltas_for(t: &TemporalHypergraph) -> Vec<i64> {
    vec![0, 1, t.time_span() / 4 + 1, t.time_span()]
}

/// Connectivity decided by raw pairwise intersections, no region machinery.
fn sets_connected(a: &[NodeId], b: &[NodeId], c: &[NodeId]) -> bool {
    let overlap = |x: &[NodeId], y: &[NodeId]| x.iter().any(|v| y.contains(v));
    [overlap(a, b), overlap(b, c), overlap(c, a)]
        .iter()
        .filter(|&&e| e)
        .count()
        >= 2
}

/// Independent scan: number of ordered connected triples with span ≤ δ.
fn connected_triple_scan(t: &TemporalHypergraph, delta: i64) -> u128 {
    let edges = t.edges();
    let mut total = 0u128;
    for k in 2..edges.len() {
        for j in 1..k {
            for i in 0..j {
                if edges[k].timestamp() - edges[i].timestamp() <= delta
                    && sets_connected(edges[i].nodes(), edges[j].nodes(), edges[k].nodes())
                {
                    total += 1;
                }
            }
        }
    }
    total
}

#[test]
fn algorithms_agree_with_oracle() {
    for seed in 0..20u64 {
        let t = case(seed);
        for delta in deltas_for(&t) {
            let oracle = count_brute_force(&t, delta).unwrap();
            assert_eq!(count_dp(&t, delta).unwrap(), oracle, "dp seed={seed} delta={delta}");
            assert_eq!(count_thyme(&t, delta).unwrap(), oracle, "thyme seed={seed} delta={delta}");
            assert_eq!(
                count_thyme_plus(&t, delta).unwrap(),
                oracle,
                "thyme+ seed={seed} delta={delta}"
            );
        }
    }
}

#[test]
fn total_matches_independent_triple_scan() {
    for seed in 0..10u64 {
        let t = case(seed);
        for delta in deltas_for(&t) {
            let counts = count_thyme_plus(&t, delta).unwrap();
            assert_eq!(counts.total(), connected_triple_scan(&t, delta));
        }
    }
}

#[test]
fn shift_invariance() {
    for seed in 0..12u64 {
        let t = case(seed);
        let delta = t.time_span() / 3 + 1;
        let reference = count_thyme_plus(&t, delta).unwrap();
        for shift in [-1000i64, 7, 123456] {
            let shifted = TemporalHypergraph::from_edges(
                t.node_count(),
                t.edges()
                    .iter()
                    .map(|e| (e.nodes().to_vec(), e.timestamp() + shift)),
            )
            .unwrap();
            assert_eq!(count_thyme_plus(&shifted, delta).unwrap(), reference);
        }
    }
}

#[test]
fn scale_invariance() {
    for seed in 0..12u64 {
        let t = case(seed);
        let delta = t.time_span() / 3 + 1;
        let reference = count_thyme_plus(&t, delta).unwrap();
        for scale in [2i64, 5, 60] {
            let scaled = TemporalHypergraph::from_edges(
                t.node_count(),
                t.edges()
                    .iter()
                    .map(|e| (e.nodes().to_vec(), e.timestamp() * scale)),
            )
            .unwrap();
            assert_eq!(count_thyme_plus(&scaled, delta * scale).unwrap(), reference);
        }
    }
}

#[test]
fn delta_monotonicity() {
    for seed in 0..12u64 {
        let t = case(seed);
        let span = t.time_span();
        let mut previous = MotifCountVector::zero();
        for delta in [0, 1, span / 8, span / 2, span] {
            let counts = count_thyme_plus(&t, delta.max(0)).unwrap();
            for (a, b) in previous.counts().iter().zip(counts.counts()) {
                assert!(a <= b, "seed={seed} delta={delta}");
            }
            previous = counts;
        }
    }
}

#[test]
fn window_contents_are_exact() {
    for seed in 0..8u64 {
        let t = case(seed);
        for delta in deltas_for(&t) {
            let mut thyme = ThymeState::new(&t, delta);
            let mut arrival = 0usize;
            while thyme.advance(|_| Ok(())).unwrap() {
                let t_i = t.timestamp(arrival);
                let expected: Vec<usize> = (0..=arrival)
                    .filter(|&x| t.timestamp(x) >= t_i - delta)
                    .collect();
                let got: Vec<usize> = thyme.window().collect();
                assert_eq!(got, expected);
                arrival += 1;
            }

            let mut plus = ThymePlusState::new(&t, delta);
            let mut m = MotifCountVector::zero();
            let mut arrival = 0usize;
            while plus.advance(&mut m).unwrap() {
                let t_i = t.timestamp(arrival);
                let window: Vec<usize> = (0..=arrival)
                    .filter(|&x| t.timestamp(x) >= t_i - delta)
                    .collect();
                assert_eq!(plus.window(), window[0]..arrival + 1);
                // Timestamp queues partition the window.
                let total: usize = plus
                    .window_sets()
                    .iter()
                    .map(|&sid| plus.window_times(sid).len())
                    .sum();
                assert_eq!(total, window.len());
                arrival += 1;
            }
        }
    }
}

#[test]
fn thm96_column_sums_are_triple_counts() {
    for seed in 0..8u64 {
        let t = case(seed);
        let delta = t.time_span() / 3 + 1;
        let counts = count_brute_force(&t, delta).unwrap();
        let matrix = incident_counts(&t, delta).unwrap();
        for (col, (_, count)) in matrix_columns(&matrix).zip(counts.iter()) {
            assert_eq!(col, 3 * count, "seed={seed}");
        }
    }
}

fn matrix_columns(
    m: &thyme_core::features::HyperedgeFeatureMatrix,
) -> impl Iterator<Item = u64> + '_ {
    (0..m.cols()).map(|c| m.column_sum(c))
}

#[test]
fn significance_is_antisymmetric() {
    let mut real = MotifCountVector::zero();
    let mut mean = [0.0f64; 96];
    for i in 0..96usize {
        if i % 3 == 0 {
            real.add(thyme_core::MotifId::new(i as u8 + 1), (i * 7 % 23) as u64).unwrap();
        }
        mean[i] = (i % 5) as f64;
    }
    let forward = significance(&real, &mean, 4.0);
    // Swap roles: rand becomes the integer counts, real the former means.
    let mut swapped_real = MotifCountVector::zero();
    let mut swapped_mean = [0.0f64; 96];
    for i in 0..96usize {
        swapped_mean[i] = real.counts()[i] as f64;
        swapped_real
            .add(thyme_core::MotifId::new(i as u8 + 1), mean[i] as u64)
            .unwrap();
    }
    let backward = significance(&swapped_real, &swapped_mean, 4.0);
    for i in 0..96 {
        assert!((forward[i] + backward[i]).abs() < 1e-12);
    }
}

#[test]
fn valid_fraction_monotone_in_delta() {
    for seed in 0..8u64 {
        let t = case(seed);
        let span = t.time_span();
        let mut previous = 0.0f64;
        for delta in [0, 1, span / 4, span / 2, span] {
            if let Some(f) = thyme_core::analysis::valid_static_fraction(&t, delta.max(0)).unwrap()
            {
                assert!(f + 1e-15 >= previous, "seed={seed} delta={delta}");
                previous = f;
            }
        }
    }
}

proptest! {
    #[test]
    fn relabeling_preserves_patterns(
        a in proptest::collection::btree_set(0u32..20, 1..6),
        b in proptest::collection::btree_set(0u32..20, 1..6),
        c in proptest::collection::btree_set(0u32..20, 1..6),
        perm_seed in 0u64..1000,
    ) {
        let table = MotifTable::global();
        let mut mapping: Vec<u32> = (0..20).collect();
        // Cheap seeded Fisher-Yates.
        let mut state = perm_seed.wrapping_add(0x9E3779B97F4A7C15);
        for i in (1..mapping.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            mapping.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let relabel = |s: &std::collections::BTreeSet<u32>| -> Vec<u32> {
            let mut v: Vec<u32> = s.iter().map(|&x| mapping[x as usize]).collect();
            v.sort_unstable();
            v
        };
        let (a, b, c): (Vec<u32>, Vec<u32>, Vec<u32>) =
            (a.iter().copied().collect(), b.iter().copied().collect(), c.iter().copied().collect());
        let (ra, rb, rc) = (
            relabel(&a.iter().copied().collect()),
            relabel(&b.iter().copied().collect()),
            relabel(&c.iter().copied().collect()),
        );
        prop_assert_eq!(
            RegionPattern::from_sets(&a, &b, &c).unwrap(),
            RegionPattern::from_sets(&ra, &rb, &rc).unwrap()
        );
        prop_assert_eq!(
            table.temporal_motif(&a, &b, &c).unwrap(),
            table.temporal_motif(&ra, &rb, &rc).unwrap()
        );
    }

    #[test]
    fn connectivity_iff_classified(
        a in proptest::collection::btree_set(0u32..12, 1..5),
        b in proptest::collection::btree_set(0u32..12, 1..5),
        c in proptest::collection::btree_set(0u32..12, 1..5),
    ) {
        let (a, b, c): (Vec<u32>, Vec<u32>, Vec<u32>) =
            (a.into_iter().collect(), b.into_iter().collect(), c.into_iter().collect());
        let pattern = RegionPattern::from_sets(&a, &b, &c).unwrap();
        let classified = MotifTable::global().temporal_motif(&a, &b, &c).unwrap();
        prop_assert_eq!(pattern.is_connected(), classified.is_some());
    }

    #[test]
    fn static_class_is_order_free(
        a in proptest::collection::btree_set(0u32..10, 1..5),
        b in proptest::collection::btree_set(0u32..10, 1..5),
        c in proptest::collection::btree_set(0u32..10, 1..5),
    ) {
        let (a, b, c): (Vec<u32>, Vec<u32>, Vec<u32>) =
            (a.into_iter().collect(), b.into_iter().collect(), c.into_iter().collect());
        prop_assume!(a != b && b != c && a != c);
        let table = MotifTable::global();
        let reference = table.static_motif(&a, &b, &c).unwrap();
        for (x, y, z) in [(&a, &c, &b), (&b, &a, &c), (&b, &c, &a), (&c, &a, &b), (&c, &b, &a)] {
            prop_assert_eq!(table.static_motif(x, y, z).unwrap(), reference);
        }
    }

    #[test]
    fn ordered_pair_counts_partition_the_rectangle(
        a in proptest::collection::btree_set(-500i64..500, 0..40),
        b in proptest::collection::btree_set(-500i64..500, 0..40),
    ) {
        let a: Vec<i64> = a.into_iter().collect();
        let b: Vec<i64> = b.iter().filter(|t| !a.contains(t)).copied().collect();
        let (lt, gt) = count_ordered_timestamp_pairs(&a, &b).unwrap();
        prop_assert_eq!(lt + gt, (a.len() * b.len()) as u64);
        let brute = a.iter().flat_map(|&x| b.iter().map(move |&y| x < y)).filter(|&p| p).count();
        prop_assert_eq!(lt, brute as u64);
    }

    #[test]
    fn profile_is_scale_invariant(
        values in proptest::collection::vec(-10.0f64..10.0, 96),
        factor in 0.001f64..1000.0,
    ) {
        let mut base = [0.0; 96];
        base.copy_from_slice(&values);
        let mut scaled = base;
        for v in &mut scaled {
            *v *= factor;
        }
        let cp_a = CharacteristicProfile::from_significance(&base);
        let cp_b = CharacteristicProfile::from_significance(&scaled);
        for (x, y) in cp_a.values().iter().zip(cp_b.values()) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}
