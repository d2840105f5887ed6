//! Acceptance suite. Each test covers one release criterion and prints a
//! single PASS line (visible with `--nocapture`); a failed assertion marks
//! the criterion red.
//!
//! Real-world corpora are optional: the checks tied to them probe
//! `THYME_DATA_DIR` (default `./data`) and report SKIP when absent.

use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use thyme_cli::io::{load, parse_trio, DatasetFormat};
use thyme_core::analysis::{
    characteristic_profile, cp_similarity, valid_static_fraction, ProfileConfig,
};
use thyme_core::counting::{
    count_brute_force, count_dp, count_ordered_timestamp_pairs, count_thyme, count_thyme_plus,
    Algorithm, MotifCountVector, ThymePlusState, ThymeState,
};
use thyme_core::features::{
    build_prediction_dataset, incident_counts, logistic_gradient, logistic_loss,
    train_eval_logreg, FeatureSet, LabeledSplit,
};
use thyme_core::hypergraph::TemporalHypergraph;
use thyme_core::motif::{DuplicationClass, MotifId, MotifTable, PairOrder, RegionPattern};
use thyme_core::synthetic::{locally_repetitive, random_hypergraph, LocalRepeatConfig, RandomConfig};
use thyme_core::RandomSeed;

/// Serializes the wall-clock-sensitive criteria so parallel test threads do
/// not distort their timings.
static TIMING: Mutex<()> = Mutex::new(());

fn pass(criterion: u32, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

fn e1() -> TemporalHypergraph {
    TemporalHypergraph::from_edges(
        5,
        vec![
            (vec![1, 2], 1),
            (vec![2, 3], 2),
            (vec![1, 2], 3),
            (vec![3, 4], 4),
            (vec![1, 2, 3], 6),
        ],
    )
    .unwrap()
}

fn random_case(seed: u64) -> TemporalHypergraph {
    random_hypergraph(RandomConfig {
        node_count: 8 + (seed % 33) as usize,          // ≤ 40
        edge_count: 40 + (seed * 13 % 261) as usize,   // ≤ 300
        size_range: (1, 5),
        repeat_prob: [0.0, 0.25, 0.55, 0.85][(seed % 4) as usize],
        seed: RandomSeed(seed),
    })
}

fn delta_grid(t: &TemporalHypergraph) -> Vec<i64> {
    let mut gaps: Vec<i64> = t
        .edges()
        .windows(2)
        .map(|w| w[1].timestamp() - w[0].timestamp())
        .collect();
    gaps.sort_unstable();
    let median_gap = gaps.get(gaps.len() / 2).copied().unwrap_or(1);
    vec![0, 1, median_gap, t.time_span()]
}

#[test]
fn criterion_1_motif_table_cardinalities() {
    let _guard = TIMING.lock().unwrap();
    let started = Instant::now();
    let table = MotifTable::new();
    assert_eq!(table.entries().len(), 96);

    let count_class = |pred: &dyn Fn(&DuplicationClass) -> bool| {
        table.entries().iter().filter(|e| pred(&e.class)).count()
    };
    assert_eq!(count_class(&|c| matches!(c, DuplicationClass::Triple)), 86);
    assert_eq!(count_class(&|c| matches!(c, DuplicationClass::Pair { .. })), 9);
    assert_eq!(count_class(&|c| matches!(c, DuplicationClass::Single)), 1);

    for (ids, expected) in [
        ([87u8, 90, 93], PairOrder::FirstTwo),
        ([88, 91, 94], PairOrder::LastTwo),
        ([89, 92, 95], PairOrder::FirstLast),
    ] {
        for id in ids {
            match table.entry(MotifId::new(id)).class {
                DuplicationClass::Pair { order, .. } => assert_eq!(order, expected, "motif {id}"),
                other => panic!("motif {id} should be pair-inducing, got {other:?}"),
            }
        }
    }

    let orbit_classes: std::collections::BTreeSet<u8> = table
        .entries()
        .iter()
        .filter_map(|e| e.static_class.map(|c| c.get()))
        .collect();
    assert_eq!(orbit_classes.len(), 26);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(1, "96 patterns split 86/9/1, pair block O1/O2/O3 layout, 26 static orbits");
}

#[test]
fn criterion_2_oracle_equivalence() {
    let _guard = TIMING.lock().unwrap();
    let started = Instant::now();
    let cases: u64 = 100;
    (0..cases).into_par_iter().for_each(|seed| {
        let t = random_case(seed);
        for delta in delta_grid(&t) {
            let oracle = count_brute_force(&t, delta).unwrap();
            assert_eq!(count_dp(&t, delta).unwrap(), oracle, "dp seed={seed} delta={delta}");
            assert_eq!(
                count_thyme(&t, delta).unwrap(),
                oracle,
                "thyme seed={seed} delta={delta}"
            );
            assert_eq!(
                count_thyme_plus(&t, delta).unwrap(),
                oracle,
                "thyme-plus seed={seed} delta={delta}"
            );
        }
    });
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    pass(
        2,
        &format!("dp/thyme/thyme-plus equal brute force on {cases} hypergraphs × 4 deltas in {elapsed:.1?}"),
    );
}

#[test]
fn criterion_3_worked_example() {
    let _guard = TIMING.lock().unwrap();
    let started = Instant::now();
    let t = e1();
    let table = MotifTable::global();
    let id_of = |code: u8| table.id_of_pattern(RegionPattern::from_code(code)).unwrap();

    let reference = count_brute_force(&t, 3).unwrap();
    assert_eq!(reference.total(), 4);
    // (e1,e2,e3) duplicates {1,2} around {2,3}: proper-overlap O3, code 98 = motif 95.
    assert_eq!(reference.get(MotifId::new(95)), 1);
    assert_eq!(id_of(98), MotifId::new(95));
    // (e1,e2,e4), (e2,e3,e4), (e3,e4,e5) are the distinct-set instances.
    for code in [29u8, 46, 50] {
        assert_eq!(reference.get(id_of(code)), 1, "code {code}");
    }

    for algo in [Algorithm::Dp, Algorithm::Thyme, Algorithm::ThymePlus] {
        let counts = thyme_core::counting::run(algo, &t, 3).unwrap().counts;
        assert_eq!(counts, reference, "{}", algo.name());
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(3, "worked example: 4 instances (motifs 6, 15, 19, 95), all four algorithms agree");
}

#[test]
fn criterion_4_property_suites() {
    let cases = 50u64;

    // Shift invariance.
    for seed in 0..cases {
        let t = random_case(seed);
        let delta = t.time_span() / 3 + 1;
        let reference = count_thyme_plus(&t, delta).unwrap();
        let shift = [-977i64, 41, 100_003][(seed % 3) as usize];
        let shifted = TemporalHypergraph::from_edges(
            t.node_count(),
            t.edges().iter().map(|e| (e.nodes().to_vec(), e.timestamp() + shift)),
        )
        .unwrap();
        assert_eq!(count_thyme_plus(&shifted, delta).unwrap(), reference, "shift seed={seed}");
    }

    // Positive integer scale invariance.
    for seed in 0..cases {
        let t = random_case(seed);
        let delta = t.time_span() / 4 + 1;
        let scale = [2i64, 7, 3600][(seed % 3) as usize];
        let reference = count_thyme_plus(&t, delta).unwrap();
        let scaled = TemporalHypergraph::from_edges(
            t.node_count(),
            t.edges().iter().map(|e| (e.nodes().to_vec(), e.timestamp() * scale)),
        )
        .unwrap();
        assert_eq!(count_thyme_plus(&scaled, delta * scale).unwrap(), reference, "scale seed={seed}");
    }

    // Delta monotonicity.
    for seed in 0..cases {
        let t = random_case(seed);
        let span = t.time_span();
        let mut previous = MotifCountVector::zero();
        for delta in [0, 1, span / 6, span / 2, span] {
            let counts = count_thyme_plus(&t, delta.max(0)).unwrap();
            for (a, b) in previous.counts().iter().zip(counts.counts()) {
                assert!(a <= b, "monotonicity seed={seed} delta={delta}");
            }
            previous = counts;
        }
    }

    // THM96 column sums are three times the motif counts.
    for seed in 0..cases {
        let t = random_case(seed);
        let delta = delta_grid(&t)[2];
        let counts = count_thyme_plus(&t, delta).unwrap();
        let matrix = incident_counts(&t, delta).unwrap();
        for c in 0..96 {
            assert_eq!(
                matrix.column_sum(c),
                3 * counts.get(MotifId::new(c as u8 + 1)),
                "column sums seed={seed}"
            );
        }
    }

    // Window contents after every arrival.
    for seed in 0..cases {
        let t = random_case(seed);
        let delta = delta_grid(&t)[2];
        let mut thyme = ThymeState::new(&t, delta);
        let mut plus = ThymePlusState::new(&t, delta);
        let mut sink = MotifCountVector::zero();
        let mut arrival = 0usize;
        loop {
            let more = thyme.advance(|_| Ok(())).unwrap();
            if !more {
                break;
            }
            plus.advance(&mut sink).unwrap();
            let t_i = t.timestamp(arrival);
            let expected: Vec<usize> =
                (0..=arrival).filter(|&x| t.timestamp(x) >= t_i - delta).collect();
            assert_eq!(thyme.window().collect::<Vec<_>>(), expected, "seed={seed}");
            assert_eq!(plus.window(), expected[0]..arrival + 1, "seed={seed}");
            let in_queues: usize =
                plus.window_sets().iter().map(|&sid| plus.window_times(sid).len()).sum();
            assert_eq!(in_queues, expected.len(), "seed={seed}");
            arrival += 1;
        }
    }

    // Ordered-pair combination identity.
    let mut rng_state = 0x243F6A8885A308D3u64;
    let mut next = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    for case in 0..cases {
        let mut pool: Vec<i64> = (0..200).map(|_| (next() % 10_000) as i64).collect();
        pool.sort_unstable();
        pool.dedup();
        let cut = (next() % pool.len() as u64) as usize;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, &v) in pool.iter().enumerate() {
            if (i + cut) % 2 == 0 {
                a.push(v);
            } else {
                b.push(v);
            }
        }
        let (lt, gt) = count_ordered_timestamp_pairs(&a, &b).unwrap();
        assert_eq!(lt + gt, (a.len() * b.len()) as u64, "comb case={case}");
    }

    pass(4, "shift/scale invariance, delta monotonicity, column sums, window contents, pair identity × 50 cases");
}

#[test]
fn criterion_5_performance_ordering() {
    let _guard = TIMING.lock().unwrap();
    let started = Instant::now();
    let corpus = locally_repetitive(LocalRepeatConfig {
        node_count: 500,
        edge_count: 50_000,
        pool_size: 500,
        size_range: (2, 4),
        repeat_prob: 0.9,
        recency: 50,
        seed: RandomSeed(20_210_915),
    });
    let delta = 1_000i64; // unit gaps: the window spans ~1,000 arrivals

    let t0 = Instant::now();
    let thyme_run = thyme_core::counting::run(Algorithm::Thyme, &corpus, delta).unwrap();
    let thyme_wall = t0.elapsed();

    let t0 = Instant::now();
    let plus_run = thyme_core::counting::run(Algorithm::ThymePlus, &corpus, delta).unwrap();
    let plus_wall = t0.elapsed();

    assert_eq!(thyme_run.counts, plus_run.counts, "counters disagree at scale");

    let p_nodes = thyme_run.stats.peak_window_nodes.unwrap();
    let q_nodes = plus_run.stats.peak_window_nodes.unwrap();
    assert!(
        plus_wall < thyme_wall,
        "expected the combinatorial counter to be faster: {plus_wall:?} vs {thyme_wall:?}"
    );
    assert!(
        p_nodes >= 5 * q_nodes,
        "expected ≥5× window compression: P peak {p_nodes}, Q peak {q_nodes}"
    );
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    pass(
        5,
        &format!(
            "50k-edge corpus: {plus_wall:.1?} vs {thyme_wall:.1?} wall, window peaks {q_nodes} vs {p_nodes} nodes"
        ),
    );
}

#[test]
fn criterion_6_valid_static_fraction() {
    let fraction = valid_static_fraction(&e1(), 3).unwrap().unwrap();
    assert_eq!(fraction, 0.5);

    for seed in 0..20u64 {
        let t = random_case(seed);
        let span = t.time_span();
        let mut previous = 0.0f64;
        for delta in [0, 1, span / 4, span / 2, span] {
            if let Some(f) = valid_static_fraction(&t, delta.max(0)).unwrap() {
                assert!(f >= previous - 1e-15, "seed={seed} delta={delta}");
                assert!((0.0..=1.0).contains(&f));
                previous = f;
            }
        }
    }

    match corpus_path("threads-ubuntu") {
        Some(prefix) => {
            let ds = load(&prefix, DatasetFormat::Trio, RandomSeed(1)).unwrap();
            let delta = ds.scale_delta(5 * 3600);
            let fraction = valid_static_fraction(&ds.hypergraph, delta).unwrap().unwrap();
            let expected = 0.0007 / 100.0;
            assert!(
                (fraction - expected).abs() <= 0.1 * expected,
                "threads-ubuntu fraction {fraction} vs expected {expected} (±10%)"
            );
            pass(6, "worked example 0.5 exact, monotone in delta, threads-ubuntu within ±10%");
        }
        None => {
            pass(6, "worked example 0.5 exact, monotone in delta (threads-ubuntu corpus absent: SKIP)");
        }
    }
}

fn corpus_path(name: &str) -> Option<PathBuf> {
    let root = std::env::var("THYME_DATA_DIR").unwrap_or_else(|_| "./data".into());
    for candidate in [
        PathBuf::from(&root).join(name).join(name),
        PathBuf::from(&root).join(name),
    ] {
        let mut probe = candidate.file_name().map(|s| s.to_os_string()).unwrap_or_default();
        probe.push("-nverts.txt");
        if candidate.with_file_name(probe).exists() {
            return Some(candidate);
        }
    }
    None
}

#[test]
fn criterion_7_parser_fidelity() {
    match corpus_path("email-Enron") {
        Some(prefix) => {
            let ds = load(&prefix, DatasetFormat::Trio, RandomSeed(1)).unwrap();
            let g = thyme_core::StaticHypergraph::induce(&ds.hypergraph);
            assert_eq!(ds.hypergraph.node_count(), 143);
            assert_eq!(ds.hypergraph.len(), 10_885);
            assert_eq!(g.len(), 1_514);
            let max_size = ds.hypergraph.edges().iter().map(|e| e.size()).max().unwrap();
            assert_eq!(max_size, 37);
            pass(7, "email-Enron statistics match: |V|=143, 10,885 edges, 1,514 sets, max size 37");
        }
        None => {
            // Synthetic trio round trip.
            let dir = tempfile::tempdir().unwrap();
            let prefix = dir.path().join("synthetic");
            let t = random_hypergraph(RandomConfig {
                node_count: 25,
                edge_count: 120,
                size_range: (1, 6),
                repeat_prob: 0.4,
                seed: RandomSeed(33),
            });
            let mut nverts = String::new();
            let mut simplices = String::new();
            let mut times = String::new();
            for edge in t.edges() {
                nverts.push_str(&format!("{}\n", edge.size()));
                for &v in edge.nodes() {
                    simplices.push_str(&format!("{v}\n"));
                }
                times.push_str(&format!("{}\n", edge.timestamp()));
            }
            std::fs::write(dir.path().join("synthetic-nverts.txt"), nverts).unwrap();
            std::fs::write(dir.path().join("synthetic-simplices.txt"), simplices).unwrap();
            std::fs::write(dir.path().join("synthetic-times.txt"), times).unwrap();
            let ds = parse_trio(&prefix, RandomSeed(1)).unwrap();
            assert_eq!(ds.hypergraph.len(), t.len());
            assert_eq!(ds.hypergraph.node_count(), t.node_count());
            assert!(ds.scale.is_identity());
            // Node labels were dense already, so the graphs coincide edge by edge.
            let same_sizes = ds
                .hypergraph
                .edges()
                .iter()
                .zip(t.edges())
                .all(|(a, b)| a.size() == b.size() && a.timestamp() == b.timestamp());
            assert!(same_sizes);
            assert_eq!(
                count_thyme_plus(&ds.hypergraph, 40).unwrap(),
                count_thyme_plus(&t, 40).unwrap()
            );
            pass(7, "synthetic trio round trip exact (email-Enron corpus absent: SKIP)");
        }
    }
}

#[test]
fn criterion_8_profile_pipeline() {
    let _guard = TIMING.lock().unwrap();
    let gen_a = |seed: u64| {
        locally_repetitive(LocalRepeatConfig {
            node_count: 150,
            edge_count: 1_500,
            pool_size: 80,
            size_range: (2, 3),
            repeat_prob: 0.85,
            recency: 15,
            seed: RandomSeed(seed),
        })
    };
    let gen_b = |seed: u64| {
        random_hypergraph(RandomConfig {
            node_count: 60,
            edge_count: 1_500,
            size_range: (4, 7),
            repeat_prob: 0.05,
            seed: RandomSeed(seed),
        })
    };

    let profile_of = |t: &TemporalHypergraph, seed: u64| {
        let cfg = ProfileConfig { delta: 40, replicas: 3, epsilon: 4.0, seed: RandomSeed(seed) };
        characteristic_profile(t, &cfg).unwrap().profile
    };

    let pairs = 10u64;
    let sims: Vec<(f64, f64)> = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let a1 = profile_of(&gen_a(1_000 + 2 * i), 71 + i);
            let a2 = profile_of(&gen_a(1_001 + 2 * i), 72 + i);
            let b1 = profile_of(&gen_b(5_000 + i), 73 + i);
            for cp in [&a1, &a2, &b1] {
                let norm: f64 = cp.values().iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() <= 1e-9, "profiles are unit norm");
                assert!((cp_similarity(cp, cp) - 1.0).abs() <= 1e-9);
            }
            (cp_similarity(&a1, &a2), cp_similarity(&a1, &b1))
        })
        .collect();

    let mean_same: f64 = sims.iter().map(|(s, _)| s).sum::<f64>() / pairs as f64;
    let mean_cross: f64 = sims.iter().map(|(_, c)| c).sum::<f64>() / pairs as f64;
    assert!(
        mean_same > mean_cross,
        "same-generator similarity {mean_same:.3} should exceed cross-generator {mean_cross:.3}"
    );
    pass(
        8,
        &format!("unit-norm profiles, self-similarity 1, same-generator {mean_same:.3} > cross {mean_cross:.3}"),
    );
}

#[test]
fn criterion_9_prediction_harness() {
    // Linearly separable features.
    let mut train_features = Vec::new();
    let mut train_labels = Vec::new();
    let mut test_features = Vec::new();
    let mut test_labels = Vec::new();
    for i in 0..200 {
        let x = (i as f64) / 20.0 - 5.0;
        let row = vec![x, 0.3 * x + 1.0, -x];
        let y = if x + 0.1 > 0.0 { 1.0 } else { 0.0 };
        if i % 5 == 0 {
            test_features.push(row);
            test_labels.push(y);
        } else {
            train_features.push(row);
            train_labels.push(y);
        }
    }
    let split = LabeledSplit {
        train_features,
        train_labels,
        test_features,
        test_labels,
        column_ids: vec![1, 2, 3],
    };
    let accuracy = train_eval_logreg(&split, 600, 0.5).unwrap();
    assert!(accuracy >= 0.95, "separable accuracy {accuracy}");

    // Gradient against central finite differences.
    let features: Vec<Vec<f64>> = (0..12)
        .map(|i| {
            (0..4)
                .map(|j| ((i * 7 + j * 13) as f64 * 0.7154).sin())
                .collect()
        })
        .collect();
    let labels: Vec<f64> = (0..12).map(|i| f64::from(i % 3 == 0)).collect();
    let weights = vec![0.4, -0.2, 0.9, -0.6];
    let bias = 0.05;
    let (grad_w, grad_b) = logistic_gradient(&features, &labels, &weights, bias);
    let h = 1e-6;
    for i in 0..weights.len() {
        let mut plus = weights.clone();
        let mut minus = weights.clone();
        plus[i] += h;
        minus[i] -= h;
        let fd = (logistic_loss(&features, &labels, &plus, bias)
            - logistic_loss(&features, &labels, &minus, bias))
            / (2.0 * h);
        let rel = (grad_w[i] - fd).abs() / fd.abs().max(1e-12);
        assert!(rel <= 1e-5, "weight {i}: relative error {rel}");
    }
    let fd_b = (logistic_loss(&features, &labels, &weights, bias + h)
        - logistic_loss(&features, &labels, &weights, bias - h))
        / (2.0 * h);
    assert!((grad_b - fd_b).abs() / fd_b.abs().max(1e-12) <= 1e-5);

    // Harness reports all three feature sets on a synthetic hypergraph.
    let t = random_hypergraph(RandomConfig {
        node_count: 40,
        edge_count: 220,
        size_range: (2, 4),
        repeat_prob: 0.5,
        seed: RandomSeed(77),
    });
    let dataset = build_prediction_dataset(&t, 30, RandomSeed(170)).unwrap();
    let mut reported = Vec::new();
    for set in [FeatureSet::Thm96, FeatureSet::Thm26, FeatureSet::Shm26] {
        let split = dataset.features(set).unwrap();
        let accuracy = train_eval_logreg(&split, 250, 0.4).unwrap();
        assert!((0.0..=1.0).contains(&accuracy));
        reported.push(format!("{}={accuracy:.3}", set.name()));
    }
    pass(
        9,
        &format!(
            "separable accuracy {accuracy:.3} ≥ 0.95, gradient matches finite differences, harness reports {}",
            reported.join(" ")
        ),
    );
}
