//! Seeded synthetic hypergraph generators for tests and benchmarks.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{NodeId, TemporalHypergraph};
use crate::random::RandomSeed;

/// Parameters for [`random_hypergraph`].
#[derive(Debug, Clone, Copy)]
pub struct RandomConfig {
    pub node_count: usize,
    pub edge_count: usize,
    pub size_range: (usize, usize),
    /// Probability that an arrival repeats a previously emitted node set.
    pub repeat_prob: f64,
    pub seed: RandomSeed,
}

/// Uniform random temporal hypergraph with controllable duplication. Fresh
/// sets draw distinct nodes uniformly; with `repeat_prob` an arrival copies
/// the node set of a uniformly chosen earlier edge. Timestamps advance by
/// random gaps of 1..=3.
pub fn random_hypergraph(cfg: RandomConfig) -> TemporalHypergraph {
    let mut rng = cfg.seed.rng();
    let mut history: Vec<Vec<NodeId>> = Vec::with_capacity(cfg.edge_count);
    let mut edges: Vec<(Vec<NodeId>, i64)> = Vec::with_capacity(cfg.edge_count);
    let mut t = 0i64;
    for _ in 0..cfg.edge_count {
        t += rng.gen_range(1..=3);
        let nodes = if !history.is_empty() && rng.gen_bool(cfg.repeat_prob) {
            history[rng.gen_range(0..history.len())].clone()
        } else {
            draw_set(&mut rng, cfg.node_count, cfg.size_range)
        };
        history.push(nodes.clone());
        edges.push((nodes, t));
    }
    TemporalHypergraph::from_edges(cfg.node_count, edges).expect("generator keeps invariants")
}

/// Parameters for [`locally_repetitive`].
#[derive(Debug, Clone, Copy)]
pub struct LocalRepeatConfig {
    pub node_count: usize,
    pub edge_count: usize,
    /// Number of distinct node sets in the pool.
    pub pool_size: usize,
    pub size_range: (usize, usize),
    /// Probability of repeating a recently seen set instead of drawing from
    /// the whole pool.
    pub repeat_prob: f64,
    /// How many recent arrivals count as "recent".
    pub recency: usize,
    pub seed: RandomSeed,
}

/// Stream over a fixed pool of distinct node sets where arrivals mostly
/// repeat recently used sets. Unit timestamp gaps, so a window of width δ
/// holds δ+1 arrivals.
pub fn locally_repetitive(cfg: LocalRepeatConfig) -> TemporalHypergraph {
    let mut rng = cfg.seed.rng();
    let mut pool: Vec<Vec<NodeId>> = Vec::with_capacity(cfg.pool_size);
    let mut seen = HashSet::new();
    while pool.len() < cfg.pool_size {
        let candidate = draw_set(&mut rng, cfg.node_count, cfg.size_range);
        if seen.insert(candidate.clone()) {
            pool.push(candidate);
        }
    }
    let mut recent: Vec<usize> = Vec::with_capacity(cfg.recency);
    let mut edges: Vec<(Vec<NodeId>, i64)> = Vec::with_capacity(cfg.edge_count);
    for t in 0..cfg.edge_count {
        let pick = if !recent.is_empty() && rng.gen_bool(cfg.repeat_prob) {
            recent[rng.gen_range(0..recent.len())]
        } else {
            rng.gen_range(0..pool.len())
        };
        if recent.len() == cfg.recency {
            recent.remove(0);
        }
        recent.push(pick);
        edges.push((pool[pick].clone(), t as i64 + 1));
    }
    TemporalHypergraph::from_edges(cfg.node_count, edges).expect("generator keeps invariants")
}

fn draw_set(rng: &mut impl Rng, node_count: usize, size_range: (usize, usize)) -> Vec<NodeId> {
    let (lo, hi) = size_range;
    assert!(1 <= lo && lo <= hi && hi <= node_count);
    let size = rng.gen_range(lo..=hi);
    let mut nodes: Vec<NodeId> = Vec::with_capacity(size);
    if size * 4 >= node_count {
        let mut all: Vec<NodeId> = (0..node_count as NodeId).collect();
        all.shuffle(rng);
        nodes.extend(all.into_iter().take(size));
    } else {
        while nodes.len() < size {
            let v = rng.gen_range(0..node_count) as NodeId;
            if !nodes.contains(&v) {
                nodes.push(v);
            }
        }
    }
    nodes.sort_unstable();
    nodes
}
