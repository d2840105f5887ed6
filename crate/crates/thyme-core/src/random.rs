//! Seeded null-model generators: degree/size-preserving structure
//! randomization and timestamp shuffling.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_chacha::rand_core::SeedableRng;
use thiserror::Error;

use crate::hypergraph::{NodeId, TemporalHypergraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RandomizeError {
    #[error("requested hyperedge size {size} exceeds the {support} nodes with positive degree")]
    SizeExceedsSupport { size: usize, support: usize },
    #[error("degree total {degree_total} does not match size total {size_total}")]
    DegreeSizeMismatch { degree_total: u64, size_total: u64 },
}

/// Seed for every generator in this crate. The same seed on the same input
/// reproduces output bit for bit (within this implementation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.0)
    }

    /// Derives an independent stream for replica `index` (splitmix64 mix).
    pub fn child(&self, index: u64) -> RandomSeed {
        let mut z = self
            .0
            .wrapping_add(0x9E3779B97F4A7C15u64.wrapping_mul(index.wrapping_add(1)));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        RandomSeed(z ^ (z >> 31))
    }
}

/// Chung-Lu style hypergraph sampler: for each requested size, draws that
/// many distinct nodes with probability proportional to degree. Node degrees
/// are matched in expectation, sizes exactly.
pub fn hypercl(
    degrees: &[u64],
    sizes: &[usize],
    seed: RandomSeed,
) -> Result<Vec<Vec<NodeId>>, RandomizeError> {
    let degree_total: u64 = degrees.iter().sum();
    let size_total: u64 = sizes.iter().map(|&s| s as u64).sum();
    if degree_total != size_total {
        return Err(RandomizeError::DegreeSizeMismatch { degree_total, size_total });
    }
    let support: Vec<NodeId> = (0..degrees.len())
        .filter(|&v| degrees[v] > 0)
        .map(|v| v as NodeId)
        .collect();
    if let Some(&size) = sizes.iter().find(|&&s| s == 0 || s > support.len()) {
        return Err(RandomizeError::SizeExceedsSupport { size, support: support.len() });
    }
    if sizes.is_empty() {
        return Ok(Vec::new());
    }

    let weights: Vec<u64> = support.iter().map(|&v| degrees[v as usize]).collect();
    let sampler = WeightedIndex::new(&weights).expect("positive weights");
    let mut rng = seed.rng();
    let mut out = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let mut members: Vec<NodeId> = Vec::with_capacity(size);
        if size * 2 <= support.len() {
            // Rejection sampling; collisions are rare for small sizes.
            while members.len() < size {
                let v = support[sampler.sample(&mut rng)];
                if !members.contains(&v) {
                    members.push(v);
                }
            }
        } else {
            // Weighted sampling without replacement via exponential keys.
            let mut keyed: Vec<(f64, NodeId)> = support
                .iter()
                .zip(&weights)
                .map(|(&v, &w)| {
                    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                    (u.ln() / w as f64, v)
                })
                .collect();
            keyed.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            members.extend(keyed.iter().take(size).map(|&(_, v)| v));
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out)
}

/// Permutes the timestamps among the hyperedges, keeping both multisets
/// intact, and returns the re-sorted hypergraph.
pub fn shuffle_timestamps(t: &TemporalHypergraph, seed: RandomSeed) -> TemporalHypergraph {
    let mut rng = seed.rng();
    let mut sets: Vec<Vec<NodeId>> = t.edges().iter().map(|e| e.nodes().to_vec()).collect();
    sets.shuffle(&mut rng);
    let edges = sets
        .into_iter()
        .enumerate()
        .map(|(i, nodes)| (nodes, t.timestamp(i)))
        .collect::<Vec<_>>();
    TemporalHypergraph::from_edges(t.node_count(), edges)
        .expect("permuting node sets over the original timestamps stays valid")
}

/// Full null model: resample the structure with [`hypercl`] using the
/// degrees and sizes of the input, then assign the original timestamps in
/// random order.
pub fn randomize_temporal(
    t: &TemporalHypergraph,
    seed: RandomSeed,
) -> Result<TemporalHypergraph, RandomizeError> {
    let degrees = t.temporal_degrees();
    let sizes = t.edge_sizes();
    let sets = hypercl(&degrees, &sizes, seed.child(0))?;
    let mut rng = seed.child(1).rng();
    let mut timestamps: Vec<i64> = t.edges().iter().map(|e| e.timestamp()).collect();
    timestamps.shuffle(&mut rng);
    let mut edges: Vec<(Vec<NodeId>, i64)> = sets.into_iter().zip(timestamps).collect();
    edges.sort_by_key(|&(_, ts)| ts);
    Ok(TemporalHypergraph::from_edges(t.node_count(), edges)
        .expect("original timestamps are unique"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::StaticHypergraph;

    fn sample() -> TemporalHypergraph {
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

    #[test]
    fn hypercl_preserves_sizes() {
        let degrees = vec![3, 2, 2, 1];
        let sizes = vec![3, 3, 2];
        let edges = hypercl(&degrees, &sizes, RandomSeed(7)).unwrap();
        let mut got: Vec<usize> = edges.iter().map(|e| e.len()).collect();
        got.sort_unstable();
        assert_eq!(got, vec![2, 3, 3]);
        for edge in &edges {
            let mut dedup = edge.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), edge.len(), "members must be distinct");
        }
    }

    #[test]
    fn hypercl_is_deterministic() {
        let degrees = vec![5, 4, 3, 2, 1, 1];
        let sizes = vec![4, 3, 3, 2, 2, 1, 1];
        assert_eq!(
            hypercl(&degrees, &sizes, RandomSeed(42)).unwrap(),
            hypercl(&degrees, &sizes, RandomSeed(42)).unwrap()
        );
    }

    #[test]
    fn hypercl_degree_proportional_frequency() {
        // Degrees (3,1), size-1 edges: node 0 should appear with frequency
        // 3/4 within a ±3σ binomial band.
        let draws = 8000usize;
        let degrees = vec![3 * draws as u64 / 4, draws as u64 / 4];
        let sizes = vec![1usize; draws];
        let edges = hypercl(&degrees, &sizes, RandomSeed(11)).unwrap();
        let zero_picks = edges.iter().filter(|e| e[0] == 0).count() as f64;
        let p = 0.75;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        assert!((zero_picks - draws as f64 * p).abs() <= 3.0 * sigma);
    }

    #[test]
    fn hypercl_rejects_oversized_edges() {
        let err = hypercl(&[1, 1], &[1, 2], RandomSeed(0)).unwrap_err();
        assert!(matches!(err, RandomizeError::DegreeSizeMismatch { .. }));
        let err = hypercl(&[2, 0, 1], &[3], RandomSeed(0)).unwrap_err();
        assert_eq!(err, RandomizeError::SizeExceedsSupport { size: 3, support: 2 });
    }

    #[test]
    fn shuffle_preserves_multisets() {
        let t = sample();
        let shuffled = shuffle_timestamps(&t, RandomSeed(3));
        let mut original_times: Vec<i64> = t.edges().iter().map(|e| e.timestamp()).collect();
        let mut new_times: Vec<i64> = shuffled.edges().iter().map(|e| e.timestamp()).collect();
        original_times.sort_unstable();
        new_times.sort_unstable();
        assert_eq!(original_times, new_times);

        let mut original_sets: Vec<&[u32]> = t.edges().iter().map(|e| e.nodes()).collect();
        let mut new_sets: Vec<&[u32]> = shuffled.edges().iter().map(|e| e.nodes()).collect();
        original_sets.sort_unstable();
        new_sets.sort_unstable();
        assert_eq!(original_sets, new_sets);

        // Structure untouched: same induced static hypergraph.
        let a = StaticHypergraph::induce(&t);
        let b = StaticHypergraph::induce(&shuffled);
        let mut sa: Vec<_> = a.sets().to_vec();
        let mut sb: Vec<_> = b.sets().to_vec();
        sa.sort();
        sb.sort();
        assert_eq!(sa, sb);
    }

    #[test]
    fn randomize_preserves_counts_and_sizes() {
        let t = sample();
        let r = randomize_temporal(&t, RandomSeed(9)).unwrap();
        assert_eq!(r.len(), t.len());
        let mut sa = t.edge_sizes();
        let mut sb = r.edge_sizes();
        sa.sort_unstable();
        sb.sort_unstable();
        assert_eq!(sa, sb);
    }
}
