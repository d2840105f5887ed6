//! Derived statistics: significance against null models, characteristic
//! profiles, repetition and locality measurements, and the fraction of
//! static triples carrying at least one valid temporal instance.

use std::collections::{BTreeMap, HashSet};

use crate::counting::triples::{for_each_connected_static_triple, for_each_triple_containing, NeighborScratch};
use crate::counting::{count_thyme_plus, CountError, MotifCountVector};
use crate::hypergraph::{StaticHypergraph, TemporalHypergraph};
use crate::random::{randomize_temporal, RandomizeError, RandomSeed};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Relative significance of each motif against null-model mean counts:
/// `(real − rand) / (real + rand + epsilon)`. The offset keeps near-zero
/// counts from exploding; 4 is the conventional choice.
pub const DEFAULT_EPSILON: f64 = 4.0;

pub fn significance(
    real: &MotifCountVector,
    rand_mean: &[f64; 96],
    epsilon: f64,
) -> [f64; 96] {
    let mut out = [0.0; 96];
    for (i, slot) in out.iter_mut().enumerate() {
        let r = real.counts()[i] as f64;
        let m = rand_mean[i];
        debug_assert!(m >= 0.0);
        *slot = (r - m) / (r + m + epsilon);
    }
    out
}

/// Unit-norm significance vector; the all-zero vector passes through.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicProfile {
    values: [f64; 96],
}

impl CharacteristicProfile {
    pub fn from_significance(delta: &[f64; 96]) -> Self {
        let norm = delta.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut values = *delta;
        if norm > 0.0 {
            for v in &mut values {
                *v /= norm;
            }
        }
        Self { values }
    }

    pub fn from_values(values: [f64; 96]) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[f64; 96] {
        &self.values
    }
}

/// Pearson correlation between two profiles over the 96 slots. Constant
/// input yields NaN: the correlation is undefined there.
pub fn cp_similarity(a: &CharacteristicProfile, b: &CharacteristicProfile) -> f64 {
    pearson(a.values(), b.values())
}

pub(crate) fn pearson(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        cov += (x - mean_a) * (y - mean_b);
        var_a += (x - mean_a) * (x - mean_a);
        var_b += (y - mean_b) * (y - mean_b);
    }
    if var_a == 0.0 || var_b == 0.0 {
        return f64::NAN;
    }
    cov / (var_a.sqrt() * var_b.sqrt())
}

#[derive(Debug, Clone, Copy)]
pub struct ProfileConfig {
    pub delta: i64,
    pub replicas: usize,
    pub epsilon: f64,
    pub seed: RandomSeed,
}

impl ProfileConfig {
    pub fn new(delta: i64, seed: RandomSeed) -> Self {
        Self { delta, replicas: 5, epsilon: DEFAULT_EPSILON, seed }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProfileError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Randomize(#[from] RandomizeError),
}

#[derive(Debug, Clone)]
pub struct ProfileResult {
    pub profile: CharacteristicProfile,
    pub real_counts: MotifCountVector,
    pub rand_mean: [f64; 96],
    /// Seeds of the generated replicas, for reproducibility records.
    pub replica_seeds: Vec<u64>,
}

/// Characteristic profile of a hypergraph: real counts against the mean
/// counts of `replicas` randomized copies (structure resampled, timestamps
/// shuffled). Replicas run in parallel under the `parallel` feature; the
/// result does not depend on scheduling because each replica derives its
/// own seed.
pub fn characteristic_profile(
    t: &TemporalHypergraph,
    cfg: &ProfileConfig,
) -> Result<ProfileResult, ProfileError> {
    let real = count_thyme_plus(t, cfg.delta)?;
    let seeds: Vec<RandomSeed> = (0..cfg.replicas).map(|r| cfg.seed.child(r as u64)).collect();

    let replica_counts = |seed: &RandomSeed| -> Result<MotifCountVector, ProfileError> {
        let replica = randomize_temporal(t, *seed)?;
        Ok(count_thyme_plus(&replica, cfg.delta)?)
    };

    #[cfg(feature = "parallel")]
    let counts: Vec<MotifCountVector> =
        seeds.par_iter().map(replica_counts).collect::<Result<_, _>>()?;
    #[cfg(not(feature = "parallel"))]
    let counts: Vec<MotifCountVector> =
        seeds.iter().map(replica_counts).collect::<Result<_, _>>()?;

    let mut rand_mean = [0.0f64; 96];
    if !counts.is_empty() {
        for c in &counts {
            for (slot, &v) in rand_mean.iter_mut().zip(c.counts()) {
                *slot += v as f64;
            }
        }
        for slot in &mut rand_mean {
            *slot /= counts.len() as f64;
        }
    }

    let delta = significance(&real, &rand_mean, cfg.epsilon);
    Ok(ProfileResult {
        profile: CharacteristicProfile::from_significance(&delta),
        real_counts: real,
        rand_mean,
        replica_seeds: seeds.iter().map(|s| s.0).collect(),
    })
}

/// Histogram of how often each distinct node set repeats: repetition count
/// → number of node sets with that count.
pub fn repetition_distribution(t: &TemporalHypergraph) -> BTreeMap<u64, u64> {
    let g = StaticHypergraph::induce(t);
    let mut histogram = BTreeMap::new();
    for &m in g.multiplicities() {
        *histogram.entry(m).or_insert(0) += 1;
    }
    histogram
}

/// Mean time span of `n` consecutive occurrences of the same node set,
/// sliding over each set's occurrence list. `None` when no set occurs `n`
/// times.
pub fn locality_intervals(t: &TemporalHypergraph, n: usize) -> Option<f64> {
    assert!(n >= 2, "a span needs at least two occurrences");
    let g = StaticHypergraph::induce(t);
    let mut times: Vec<Vec<i64>> = vec![Vec::new(); g.len()];
    for (index, &sid) in g.temporal_to_static().iter().enumerate() {
        times[sid as usize].push(t.timestamp(index));
    }
    let mut total = 0i128;
    let mut runs = 0u64;
    for list in &times {
        if list.len() < n {
            continue;
        }
        for window in list.windows(n) {
            total += (window[n - 1] - window[0]) as i128;
            runs += 1;
        }
    }
    (runs > 0).then(|| total as f64 / runs as f64)
}

/// Fraction of connected static triples induced by at least one valid
/// temporal instance. Triples of three distinct node sets only; instances
/// built on two or one set never mark a static triple. `None` when the
/// static hypergraph has no connected triple.
pub fn valid_static_fraction(
    t: &TemporalHypergraph,
    delta: i64,
) -> Result<Option<f64>, CountError> {
    assert!(delta >= 0);
    let g = StaticHypergraph::induce(t);

    let mut total = 0u64;
    for_each_connected_static_triple(&g, |_, _, _| {
        total += 1;
        Ok(())
    })?;
    if total == 0 {
        return Ok(None);
    }

    // Windowed sweep over the node-set graph: any connected triple present
    // in the window when its newest member arrives has a valid instance
    // (every per-set timestamp list is non-empty by construction).
    let mut induced: HashSet<[u32; 3]> = HashSet::new();
    let mut times_len: Vec<usize> = vec![0; g.len()];
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); g.len()];
    let mut scratch = NeighborScratch::new(g.len());
    let mut window_start = 0usize;
    for i in 0..t.len() {
        let sid = g.temporal_to_static()[i];
        if times_len[sid as usize] == 0 {
            for &other in g.neighbors(sid) {
                if times_len[other as usize] > 0 {
                    adjacency[sid as usize].push(other);
                    adjacency[other as usize].push(sid);
                }
            }
        }
        times_len[sid as usize] += 1;
        while t.timestamp(window_start) + delta < t.timestamp(i) {
            let w = g.temporal_to_static()[window_start];
            times_len[w as usize] -= 1;
            if times_len[w as usize] == 0 {
                let neighbors = std::mem::take(&mut adjacency[w as usize]);
                for other in neighbors {
                    let list = &mut adjacency[other as usize];
                    let pos = list.iter().position(|&x| x == w).expect("symmetric edge");
                    list.swap_remove(pos);
                }
            }
            window_start += 1;
        }
        for_each_triple_containing(&adjacency, sid, &mut scratch, |_| true, |u, v| {
            let mut key = [sid, u, v];
            key.sort_unstable();
            induced.insert(key);
            Ok(())
        })?;
    }
    Ok(Some(induced.len() as f64 / total as f64))
}
