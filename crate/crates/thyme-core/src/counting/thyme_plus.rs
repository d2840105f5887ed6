//! Duplication-aware windowed counter over a projected graph of node sets.
//!
//! Vertices are the distinct node sets inside the window; each carries the
//! ordered timestamps of the window hyperedges inducing it. Duplicated
//! arrivals reuse the existing vertex, so the graph stays small on inputs
//! with repetitive hyperedges. Instead of enumerating instances one by one,
//! each connected triple, overlap edge, and vertex is credited with the
//! number of admissible timestamp combinations.

use std::collections::VecDeque;

use crate::counting::triples::{for_each_triple_containing, NeighborScratch};
use crate::counting::{CountError, MotifCountVector};
use crate::hypergraph::{StaticEdgeId, StaticHypergraph, TemporalHypergraph};
use crate::motif::MotifTable;

/// Counts ordered pairs drawn from two disjoint ascending timestamp lists:
/// `lt` pairs with the first component smaller, `gt` the rest, so that
/// `lt + gt = |a| · |b|`. Single linear merge; a shared timestamp is an
/// error because timestamps are globally unique.
pub fn count_ordered_timestamp_pairs(a: &[i64], b: &[i64]) -> Result<(u64, u64), CountError> {
    debug_assert!(a.windows(2).all(|w| w[0] < w[1]), "first list must ascend");
    debug_assert!(b.windows(2).all(|w| w[0] < w[1]), "second list must ascend");
    merge_ordered_pairs(a.iter().copied(), b.iter().copied())
}

fn merge_ordered_pairs(
    a: impl ExactSizeIterator<Item = i64>,
    b: impl ExactSizeIterator<Item = i64>,
) -> Result<(u64, u64), CountError> {
    let total = (a.len() as u64)
        .checked_mul(b.len() as u64)
        .ok_or(CountError::Overflow)?;
    let mut a = a.peekable();
    let mut consumed = 0u64;
    let mut lt = 0u64;
    for t in b {
        while a.peek().is_some_and(|&x| x < t) {
            a.next();
            consumed += 1;
        }
        if a.peek() == Some(&t) {
            return Err(CountError::OverlappingTimestamps);
        }
        lt += consumed;
    }
    Ok((lt, total - lt))
}

fn choose2(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Window state: per-set timestamp queues plus overlap adjacency restricted
/// to the sets present in the window.
struct ProjectedGraphQ {
    times: Vec<VecDeque<i64>>,
    adjacency: Vec<Vec<u32>>,
    node_count: usize,
    edge_count: usize,
}

impl ProjectedGraphQ {
    fn new(static_len: usize) -> Self {
        Self {
            times: vec![VecDeque::new(); static_len],
            adjacency: vec![Vec::new(); static_len],
            node_count: 0,
            edge_count: 0,
        }
    }

    fn insert(&mut self, g: &StaticHypergraph, sid: StaticEdgeId, t: i64) {
        if self.times[sid as usize].is_empty() {
            for &other in g.neighbors(sid) {
                if !self.times[other as usize].is_empty() {
                    self.adjacency[sid as usize].push(other);
                    self.adjacency[other as usize].push(sid);
                    self.edge_count += 1;
                }
            }
            self.node_count += 1;
        }
        self.times[sid as usize].push_back(t);
    }

    fn remove(&mut self, sid: StaticEdgeId, t: i64) {
        let popped = self.times[sid as usize].pop_front();
        debug_assert_eq!(popped, Some(t), "expiry follows arrival order");
        if self.times[sid as usize].is_empty() {
            let neighbors = std::mem::take(&mut self.adjacency[sid as usize]);
            self.edge_count -= neighbors.len();
            for other in neighbors {
                let list = &mut self.adjacency[other as usize];
                let pos = list.iter().position(|&x| x == sid).expect("symmetric edge");
                list.swap_remove(pos);
            }
            self.node_count -= 1;
        }
    }
}

/// Step-wise combinatorial counter; [`advance`](Self::advance) processes one
/// arrival and credits every instance whose newest member it is.
pub struct ThymePlusState<'a> {
    t: &'a TemporalHypergraph,
    g: StaticHypergraph,
    delta: i64,
    q: ProjectedGraphQ,
    scratch: NeighborScratch,
    window_start: usize,
    next: usize,
    peak_nodes: usize,
    peak_edges: usize,
}

impl<'a> ThymePlusState<'a> {
    pub fn new(t: &'a TemporalHypergraph, delta: i64) -> Self {
        assert!(delta >= 0, "window width must be non-negative");
        let g = StaticHypergraph::induce(t);
        let q = ProjectedGraphQ::new(g.len());
        let scratch = NeighborScratch::new(g.len());
        Self {
            t,
            g,
            delta,
            q,
            scratch,
            window_start: 0,
            next: 0,
            peak_nodes: 0,
            peak_edges: 0,
        }
    }

    /// Processes the next arrival, adding its instances to `m`; returns
    /// `Ok(false)` when exhausted.
    pub fn advance(&mut self, m: &mut MotifCountVector) -> Result<bool, CountError> {
        if self.next >= self.t.len() {
            return Ok(false);
        }
        let i = self.next;
        let t_i = self.t.timestamp(i);
        let sid = self.g.temporal_to_static()[i];
        self.q.insert(&self.g, sid, t_i);
        while self.t.timestamp(self.window_start) + self.delta < t_i {
            let w = self.window_start;
            self.q.remove(self.g.temporal_to_static()[w], self.t.timestamp(w));
            self.window_start += 1;
        }
        self.peak_nodes = self.peak_nodes.max(self.q.node_count);
        self.peak_edges = self.peak_edges.max(self.q.edge_count);

        let table = MotifTable::global();
        let g = &self.g;
        let q = &self.q;
        let set_i = g.set(sid);

        // Triples of distinct node sets: credit both arrival orders of the
        // two older sets with their timestamp pair counts.
        for_each_triple_containing(
            &q.adjacency,
            sid,
            &mut self.scratch,
            |_| true,
            |u, v| {
                let (lt, gt) = merge_ordered_pairs(
                    q.times[u as usize].iter().copied(),
                    q.times[v as usize].iter().copied(),
                )?;
                if lt > 0 {
                    let motif = table
                        .temporal_motif_unchecked(g.set(u), g.set(v), set_i)
                        .expect("connected window triple");
                    m.add(motif, lt)?;
                }
                if gt > 0 {
                    let motif = table
                        .temporal_motif_unchecked(g.set(v), g.set(u), set_i)
                        .expect("connected window triple");
                    m.add(motif, gt)?;
                }
                Ok(())
            },
        )?;

        // Pairs: one older copy of the arriving set combined with a copy of
        // an overlapping set, in either order, or two copies of the
        // overlapping set.
        let own = &q.times[sid as usize];
        for &other in &q.adjacency[sid as usize] {
            let others = &q.times[other as usize];
            let set_o = g.set(other);
            let (lt, gt) = merge_ordered_pairs(
                own.iter().copied().take(own.len() - 1),
                others.iter().copied(),
            )?;
            if lt > 0 {
                let motif = table
                    .temporal_motif_unchecked(set_i, set_o, set_i)
                    .expect("overlapping pair");
                m.add(motif, lt)?;
            }
            if gt > 0 {
                let motif = table
                    .temporal_motif_unchecked(set_o, set_i, set_i)
                    .expect("overlapping pair");
                m.add(motif, gt)?;
            }
            let both_other = choose2(others.len() as u64);
            if both_other > 0 {
                let motif = table
                    .temporal_motif_unchecked(set_o, set_o, set_i)
                    .expect("overlapping pair");
                m.add(motif, both_other)?;
            }
        }

        // Two older copies of the arriving set.
        let repeats = choose2(own.len() as u64 - 1);
        if repeats > 0 {
            let motif = table
                .temporal_motif_unchecked(set_i, set_i, set_i)
                .expect("all-duplicated pattern");
            m.add(motif, repeats)?;
        }

        self.next += 1;
        Ok(true)
    }

    /// Indices currently inside the window (after the last `advance`).
    pub fn window(&self) -> std::ops::Range<usize> {
        self.window_start..self.next
    }

    /// Node sets present in the window, by static edge id.
    pub fn window_sets(&self) -> Vec<StaticEdgeId> {
        (0..self.g.len() as StaticEdgeId)
            .filter(|&sid| !self.q.times[sid as usize].is_empty())
            .collect()
    }

    /// Window timestamps of one node set, ascending.
    pub fn window_times(&self, sid: StaticEdgeId) -> Vec<i64> {
        self.q.times[sid as usize].iter().copied().collect()
    }

    pub fn static_graph(&self) -> &StaticHypergraph {
        &self.g
    }

    pub fn window_node_count(&self) -> usize {
        self.q.node_count
    }

    pub fn window_edge_count(&self) -> usize {
        self.q.edge_count
    }

    pub fn peak_nodes(&self) -> usize {
        self.peak_nodes
    }

    pub fn peak_edges(&self) -> usize {
        self.peak_edges
    }
}

/// Counts instances by timestamp combinations on the node-set graph.
pub fn count_thyme_plus(
    t: &TemporalHypergraph,
    delta: i64,
) -> Result<MotifCountVector, CountError> {
    let mut state = ThymePlusState::new(t, delta);
    let mut counts = MotifCountVector::zero();
    while state.advance(&mut counts)? {}
    Ok(counts)
}
