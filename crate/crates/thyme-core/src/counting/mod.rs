//! Exact counting of temporal motif instances.
//!
//! Four interchangeable algorithms produce the same 96-slot count vector for
//! a hypergraph and window width δ: a cubic brute-force scan (the oracle),
//! a dynamic-programming baseline over static triples, enumeration over a
//! windowed projected graph of temporal hyperedges, and a duplication-aware
//! combinatorial counter over a projected graph of distinct node sets.
//! An ordered triple of hyperedges is an instance when its node sets form a
//! connected overlap graph and the arrival span satisfies `t_k - t_i <= δ`
//! (closed interval).

mod brute;
mod dp;
mod thyme;
mod thyme_plus;
pub(crate) mod triples;

use thiserror::Error;

use crate::hypergraph::TemporalHypergraph;
use crate::motif::MotifId;

pub use brute::count_brute_force;
pub use dp::{count_dp, SequenceCounter};
pub use thyme::{count_thyme, Instance, ThymeState};
pub use thyme_plus::{count_ordered_timestamp_pairs, count_thyme_plus, ThymePlusState};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("motif count overflowed the 64-bit range")]
    Overflow,
    #[error("timestamp lists must be disjoint")]
    OverlappingTimestamps,
}

/// Per-motif instance counts, indexed by motif id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotifCountVector {
    counts: [u64; 96],
}

impl MotifCountVector {
    pub fn zero() -> Self {
        Self { counts: [0; 96] }
    }

    pub fn get(&self, id: MotifId) -> u64 {
        self.counts[id.index()]
    }

    /// Adds `n` instances of `id`; counting overflow is a hard error.
    pub fn add(&mut self, id: MotifId, n: u64) -> Result<(), CountError> {
        let slot = &mut self.counts[id.index()];
        *slot = slot.checked_add(n).ok_or(CountError::Overflow)?;
        Ok(())
    }

    pub fn merge(&mut self, other: &Self) -> Result<(), CountError> {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a = a.checked_add(*b).ok_or(CountError::Overflow)?;
        }
        Ok(())
    }

    pub fn counts(&self) -> &[u64; 96] {
        &self.counts
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (MotifId, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (MotifId::new(i as u8 + 1), c))
    }
}

/// Counting algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    BruteForce,
    Dp,
    Thyme,
    ThymePlus,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::BruteForce => "bruteforce",
            Algorithm::Dp => "dp",
            Algorithm::Thyme => "thyme",
            Algorithm::ThymePlus => "thyme-plus",
        }
    }
}

/// Projected-graph footprint of a counting run; `None` for algorithms that
/// keep no windowed graph.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunStats {
    pub peak_window_nodes: Option<usize>,
    pub peak_window_edges: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CountRun {
    pub counts: MotifCountVector,
    pub stats: RunStats,
}

/// Runs the selected algorithm, reporting window-graph peaks where the
/// algorithm maintains one.
pub fn run(algo: Algorithm, t: &TemporalHypergraph, delta: i64) -> Result<CountRun, CountError> {
    match algo {
        Algorithm::BruteForce => Ok(CountRun {
            counts: count_brute_force(t, delta)?,
            stats: RunStats::default(),
        }),
        Algorithm::Dp => Ok(CountRun {
            counts: count_dp(t, delta)?,
            stats: RunStats::default(),
        }),
        Algorithm::Thyme => {
            let mut state = ThymeState::new(t, delta);
            let mut counts = MotifCountVector::zero();
            while state.advance(|instance| counts.add(instance.motif, 1))? {}
            let stats = RunStats {
                peak_window_nodes: Some(state.peak_nodes()),
                peak_window_edges: Some(state.peak_edges()),
            };
            Ok(CountRun { counts, stats })
        }
        Algorithm::ThymePlus => {
            let mut state = ThymePlusState::new(t, delta);
            let mut counts = MotifCountVector::zero();
            while state.advance(&mut counts)? {}
            let stats = RunStats {
                peak_window_nodes: Some(state.peak_nodes()),
                peak_window_edges: Some(state.peak_edges()),
            };
            Ok(CountRun { counts, stats })
        }
    }
}
