//! Windowed subsequence counting over static-edge label sequences.
//!
//! The baseline counter enumerates connected triples, overlapping pairs, and
//! single edges of the induced static hypergraph; for each it merges the
//! inducing temporal hyperedges into one time-sorted sequence and counts
//! label subsequences of length up to three inside the sliding window. The
//! length-3 table accumulates over the whole scan while the shorter tables
//! track live window state, so each completed subsequence is banked exactly
//! when its last element arrives.

use crate::counting::triples::for_each_connected_static_triple;
use crate::counting::{CountError, MotifCountVector};
use crate::hypergraph::{StaticEdgeId, StaticHypergraph, TemporalHypergraph};
use crate::motif::MotifTable;

/// Counts of ordered label tuples (lengths 1..=3) over a small alphabet.
/// Length-1 and length-2 counts reflect the current window; length-3 counts
/// only grow between reads.
pub struct SequenceCounter {
    alphabet: usize,
    c1: Vec<u64>,
    c2: Vec<u64>,
    c3: Vec<u64>,
}

impl SequenceCounter {
    pub fn new(alphabet: usize) -> Self {
        Self {
            alphabet,
            c1: vec![0; alphabet],
            c2: vec![0; alphabet * alphabet],
            c3: vec![0; alphabet * alphabet * alphabet],
        }
    }

    pub fn singles(&self, l: usize) -> u64 {
        self.c1[l]
    }

    pub fn pairs(&self, first: usize, second: usize) -> u64 {
        self.c2[first * self.alphabet + second]
    }

    pub fn triples(&self, first: usize, second: usize, third: usize) -> u64 {
        self.c3[(first * self.alphabet + second) * self.alphabet + third]
    }

    /// Appends an in-window element: longer prefixes are extended before the
    /// shorter tables are bumped, so the new element never pairs with itself.
    pub fn increment(&mut self, label: usize) -> Result<(), CountError> {
        let a = self.alphabet;
        for first in 0..a {
            for second in 0..a {
                let pairs = self.c2[first * a + second];
                if pairs > 0 {
                    let slot = &mut self.c3[(first * a + second) * a + label];
                    *slot = slot.checked_add(pairs).ok_or(CountError::Overflow)?;
                }
            }
        }
        for first in 0..a {
            let singles = self.c1[first];
            if singles > 0 {
                let slot = &mut self.c2[first * a + label];
                *slot = slot.checked_add(singles).ok_or(CountError::Overflow)?;
            }
        }
        self.c1[label] += 1;
        Ok(())
    }

    /// Expires the oldest window element carrying `label`: the element leaves
    /// the singles first, then every pair it started is released against the
    /// post-decrement singles.
    pub fn decrement(&mut self, label: usize) {
        let a = self.alphabet;
        self.c1[label] = self.c1[label]
            .checked_sub(1)
            .expect("decrement of a label with no live window element");
        for suffix in 0..a {
            let slot = &mut self.c2[label * a + suffix];
            *slot = slot
                .checked_sub(self.c1[suffix])
                .expect("window pair count went negative");
        }
    }
}

/// Merged time-sorted arrivals for one static edge group.
struct GroupSequence {
    timestamps: Vec<i64>,
    labels: Vec<usize>,
}

fn merge_group(times_by_edge: &[&[i64]]) -> GroupSequence {
    let total: usize = times_by_edge.iter().map(|t| t.len()).sum();
    let mut timestamps = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    let mut cursor = vec![0usize; times_by_edge.len()];
    for _ in 0..total {
        let mut best: Option<(usize, i64)> = None;
        for (label, times) in times_by_edge.iter().enumerate() {
            if cursor[label] < times.len() {
                let t = times[cursor[label]];
                if best.map_or(true, |(_, bt)| t < bt) {
                    best = Some((label, t));
                }
            }
        }
        let (label, t) = best.expect("cursor bookkeeping");
        cursor[label] += 1;
        timestamps.push(t);
        labels.push(label);
    }
    GroupSequence { timestamps, labels }
}

/// Scans one merged sequence and returns the subsequence tables.
fn scan_group(seq: &GroupSequence, alphabet: usize, delta: i64) -> Result<SequenceCounter, CountError> {
    let mut counter = SequenceCounter::new(alphabet);
    let mut window_start = 0usize;
    for (i, &t_i) in seq.timestamps.iter().enumerate() {
        while seq.timestamps[window_start] + delta < t_i {
            counter.decrement(seq.labels[window_start]);
            window_start += 1;
        }
        counter.increment(seq.labels[i])?;
    }
    Ok(counter)
}

/// Orderings crediting the pair tier: every length-3 key over two labels
/// that uses both of them.
const PAIR_KEYS: [[usize; 3]; 6] = [
    [0, 0, 1],
    [0, 1, 0],
    [1, 0, 0],
    [0, 1, 1],
    [1, 0, 1],
    [1, 1, 0],
];

const TRIPLE_KEYS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Dynamic-programming counter. Each instance is credited by exactly one
/// group scan: the connected static triple it induces, the overlapping pair,
/// or the single static edge, according to how many distinct node sets it
/// uses.
pub fn count_dp(t: &TemporalHypergraph, delta: i64) -> Result<MotifCountVector, CountError> {
    assert!(delta >= 0, "window width must be non-negative");
    let g = StaticHypergraph::induce(t);
    let table = MotifTable::global();
    let mut m = MotifCountVector::zero();

    // Arrival times of each static edge, ascending.
    let mut times: Vec<Vec<i64>> = vec![Vec::new(); g.len()];
    for (index, &sid) in g.temporal_to_static().iter().enumerate() {
        times[sid as usize].push(t.timestamp(index));
    }

    for_each_connected_static_triple(&g, |a, b, c| {
        credit_triple(&g, &times, table, delta, [a, b, c], &mut m)
    })?;
    for (a, b) in g.overlap_pairs().collect::<Vec<_>>() {
        credit_pair(&g, &times, table, delta, [a, b], &mut m)?;
    }
    for sid in 0..g.len() as StaticEdgeId {
        credit_single(&g, &times, table, delta, sid, &mut m)?;
    }
    Ok(m)
}

fn credit_triple(
    g: &StaticHypergraph,
    times: &[Vec<i64>],
    table: &MotifTable,
    delta: i64,
    sids: [StaticEdgeId; 3],
    m: &mut MotifCountVector,
) -> Result<(), CountError> {
    let group = merge_group(&[
        &times[sids[0] as usize],
        &times[sids[1] as usize],
        &times[sids[2] as usize],
    ]);
    let counter = scan_group(&group, 3, delta)?;
    for key in TRIPLE_KEYS {
        let n = counter.triples(key[0], key[1], key[2]);
        if n > 0 {
            let motif = table
                .temporal_motif_unchecked(
                    g.set(sids[key[0]]),
                    g.set(sids[key[1]]),
                    g.set(sids[key[2]]),
                )
                .expect("connected static triple classifies in any order");
            m.add(motif, n)?;
        }
    }
    Ok(())
}

fn credit_pair(
    g: &StaticHypergraph,
    times: &[Vec<i64>],
    table: &MotifTable,
    delta: i64,
    sids: [StaticEdgeId; 2],
    m: &mut MotifCountVector,
) -> Result<(), CountError> {
    let group = merge_group(&[&times[sids[0] as usize], &times[sids[1] as usize]]);
    let counter = scan_group(&group, 2, delta)?;
    for key in PAIR_KEYS {
        let n = counter.triples(key[0], key[1], key[2]);
        if n > 0 {
            let motif = table
                .temporal_motif_unchecked(
                    g.set(sids[key[0]]),
                    g.set(sids[key[1]]),
                    g.set(sids[key[2]]),
                )
                .expect("overlapping pair classifies in any order");
            m.add(motif, n)?;
        }
    }
    Ok(())
}

fn credit_single(
    g: &StaticHypergraph,
    times: &[Vec<i64>],
    table: &MotifTable,
    delta: i64,
    sid: StaticEdgeId,
    m: &mut MotifCountVector,
) -> Result<(), CountError> {
    let list = &times[sid as usize];
    if list.len() < 3 {
        return Ok(());
    }
    let group = GroupSequence { timestamps: list.clone(), labels: vec![0; list.len()] };
    let counter = scan_group(&group, 1, delta)?;
    let n = counter.triples(0, 0, 0);
    if n > 0 {
        let motif = table
            .temporal_motif_unchecked(g.set(sid), g.set(sid), g.set(sid))
            .expect("all-duplicated pattern is connected");
        m.add(motif, n)?;
    }
    Ok(())
}
