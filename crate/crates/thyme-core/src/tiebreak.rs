//! Disambiguation of duplicate timestamps.
//!
//! Edges sharing a timestamp are randomly ordered (seeded), then all
//! timestamps are re-indexed onto a strictly increasing integer axis:
//! `t' = t·S + m` where `m` is the position inside the tie group and the
//! stretch `S = 2·g − 1` (g = largest group). With that stretch, a window
//! width expressed in original units converts as `δ' = δ·S + (g − 1)`, and
//! whether a pair of edges falls inside the window is decided purely by the
//! original-unit distance — the random within-group order can never flip it.
//! Tie-free inputs pass through unchanged (S = 1, δ' = δ).

use rand::seq::SliceRandom;

use crate::hypergraph::{HypergraphError, NodeId, TemporalHypergraph};
use crate::random::RandomSeed;

/// Conversion from original time units onto the tie-broken axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeScale {
    stretch: i64,
    max_group: i64,
}

impl TimeScale {
    pub fn identity() -> Self {
        Self { stretch: 1, max_group: 1 }
    }

    pub fn is_identity(&self) -> bool {
        self.stretch == 1
    }

    pub fn stretch(&self) -> i64 {
        self.stretch
    }

    /// Window width in original units, expressed on the tie-broken axis.
    pub fn scale_delta(&self, delta: i64) -> i64 {
        assert!(delta >= 0);
        delta * self.stretch + (self.max_group - 1)
    }
}

/// Orders entries by timestamp, randomly permuting equal-timestamp groups,
/// and re-indexes onto a strictly increasing axis. The payload rides along.
/// Returns an error when the stretched timestamps leave the 64-bit range.
pub fn break_ties<T>(
    mut entries: Vec<(i64, T)>,
    seed: RandomSeed,
) -> Result<(Vec<(i64, T)>, TimeScale), HypergraphError> {
    entries.sort_by_key(|&(t, _)| t);
    let mut max_group = 1i64;
    {
        let mut run = 1i64;
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                run += 1;
                max_group = max_group.max(run);
            } else {
                run = 1;
            }
        }
    }
    if entries.is_empty() || max_group == 1 {
        return Ok((entries, TimeScale::identity()));
    }

    let stretch = 2 * max_group - 1;
    let scale = TimeScale { stretch, max_group };
    let mut rng = seed.rng();
    let mut out: Vec<(i64, T)> = Vec::with_capacity(entries.len());
    let mut group: Vec<(i64, T)> = Vec::new();
    let mut flush = |group: &mut Vec<(i64, T)>, out: &mut Vec<(i64, T)>| -> Result<(), HypergraphError> {
        group.shuffle(&mut rng);
        for (offset, (t, payload)) in group.drain(..).enumerate() {
            let scaled = t
                .checked_mul(stretch)
                .and_then(|x| x.checked_add(offset as i64))
                .ok_or(HypergraphError::TimestampOverflow { timestamp: t })?;
            out.push((scaled, payload));
        }
        Ok(())
    };
    for (t, payload) in entries {
        if group.last().is_some_and(|&(gt, _)| gt != t) {
            flush(&mut group, &mut out)?;
        }
        group.push((t, payload));
    }
    flush(&mut group, &mut out)?;
    Ok((out, scale))
}

/// [`break_ties`] over whole hypergraph edges.
pub fn break_ties_hypergraph(
    node_count: usize,
    edges: Vec<(Vec<NodeId>, i64)>,
    seed: RandomSeed,
) -> Result<(TemporalHypergraph, TimeScale), HypergraphError> {
    let entries: Vec<(i64, Vec<NodeId>)> = edges.into_iter().map(|(n, t)| (t, n)).collect();
    let (broken, scale) = break_ties(entries, seed)?;
    let t = TemporalHypergraph::from_edges(
        node_count,
        broken.into_iter().map(|(ts, nodes)| (nodes, ts)),
    )?;
    Ok((t, scale))
}
