//! Windowed enumeration over a projected graph of temporal hyperedges.
//!
//! Every hyperedge in the window is a vertex; vertices are adjacent when
//! their node sets intersect. Each arrival is inserted, expired entries are
//! dropped, and every connected triple containing the arrival (necessarily
//! its newest member) is classified once.

use std::collections::HashMap;

use crate::counting::triples::{for_each_triple_containing, NeighborScratch, Overlap};
use crate::counting::{CountError, MotifCountVector};
use crate::hypergraph::TemporalHypergraph;
use crate::motif::{MotifId, MotifTable};

/// One classified instance; indices are positions in the edge sequence in
/// arrival order, `first < second < third`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Instance {
    pub first: usize,
    pub second: usize,
    pub third: usize,
    pub motif: MotifId,
}

struct ProjectedGraphP {
    adjacency: HashMap<u32, Vec<u32>>,
    incident: Vec<Vec<u32>>, // node -> window members containing it, oldest first
    edge_count: usize,
}

impl ProjectedGraphP {
    fn new(node_count: usize) -> Self {
        Self {
            adjacency: HashMap::new(),
            incident: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    fn insert(&mut self, index: u32, nodes: &[u32], seen: &mut NeighborScratch) {
        let mut neighbors = Vec::new();
        seen.reset();
        for &v in nodes {
            for &other in &self.incident[v as usize] {
                if seen.mark_once(other) {
                    neighbors.push(other);
                }
            }
        }
        self.edge_count += neighbors.len();
        for &n in &neighbors {
            self.adjacency.get_mut(&n).expect("window member").push(index);
        }
        self.adjacency.insert(index, neighbors);
        for &v in nodes {
            self.incident[v as usize].push(index);
        }
    }

    fn remove(&mut self, index: u32, nodes: &[u32]) {
        let neighbors = self.adjacency.remove(&index).expect("window member");
        self.edge_count -= neighbors.len();
        for n in neighbors {
            let list = self.adjacency.get_mut(&n).expect("window member");
            let pos = list.iter().position(|&x| x == index).expect("symmetric edge");
            list.swap_remove(pos);
        }
        for &v in nodes {
            // The expiring edge is the oldest, hence first in each list.
            debug_assert_eq!(self.incident[v as usize].first(), Some(&index));
            self.incident[v as usize].remove(0);
        }
    }
}

impl Overlap for ProjectedGraphP {
    fn neighbors_of(&self, v: u32) -> &[u32] {
        self.adjacency.get(&v).map_or(&[], |n| n.as_slice())
    }
}

/// Step-wise windowed enumerator; [`advance`](Self::advance) processes one
/// arrival and reports each instance whose newest member it is.
pub struct ThymeState<'a> {
    t: &'a TemporalHypergraph,
    delta: i64,
    graph: ProjectedGraphP,
    collect_seen: NeighborScratch,
    triple_scratch: NeighborScratch,
    window_start: usize,
    next: usize,
    peak_nodes: usize,
    peak_edges: usize,
}

impl<'a> ThymeState<'a> {
    pub fn new(t: &'a TemporalHypergraph, delta: i64) -> Self {
        assert!(delta >= 0, "window width must be non-negative");
        Self {
            t,
            delta,
            graph: ProjectedGraphP::new(t.node_count()),
            collect_seen: NeighborScratch::new(t.len()),
            triple_scratch: NeighborScratch::new(t.len()),
            window_start: 0,
            next: 0,
            peak_nodes: 0,
            peak_edges: 0,
        }
    }

    /// Processes the next arrival; returns `Ok(false)` when exhausted.
    pub fn advance(
        &mut self,
        mut sink: impl FnMut(Instance) -> Result<(), CountError>,
    ) -> Result<bool, CountError> {
        if self.next >= self.t.len() {
            return Ok(false);
        }
        let i = self.next;
        let t_i = self.t.timestamp(i);
        self.graph
            .insert(i as u32, self.t.edges()[i].nodes(), &mut self.collect_seen);
        while self.t.timestamp(self.window_start) + self.delta < t_i {
            let w = self.window_start;
            self.graph.remove(w as u32, self.t.edges()[w].nodes());
            self.window_start += 1;
        }
        self.peak_nodes = self.peak_nodes.max(i + 1 - self.window_start);
        self.peak_edges = self.peak_edges.max(self.graph.edge_count);

        let table = MotifTable::global();
        let edges = self.t.edges();
        let graph = &self.graph;
        for_each_triple_containing(
            graph,
            i as u32,
            &mut self.triple_scratch,
            |_| true,
            |u, v| {
                let (first, second) = if u < v { (u, v) } else { (v, u) };
                let motif = table
                    .temporal_motif_unchecked(
                        edges[first as usize].nodes(),
                        edges[second as usize].nodes(),
                        edges[i].nodes(),
                    )
                    .expect("window triple overlaps pairwise-connectedly");
                sink(Instance {
                    first: first as usize,
                    second: second as usize,
                    third: i,
                    motif,
                })
            },
        )?;
        self.next += 1;
        Ok(true)
    }

    /// Indices currently inside the window (after the last `advance`).
    pub fn window(&self) -> std::ops::Range<usize> {
        self.window_start..self.next
    }

    pub fn window_len(&self) -> usize {
        self.next - self.window_start
    }

    pub fn window_edge_count(&self) -> usize {
        self.graph.edge_count
    }

    pub fn peak_nodes(&self) -> usize {
        self.peak_nodes
    }

    pub fn peak_edges(&self) -> usize {
        self.peak_edges
    }
}

/// Counts instances by exhaustive windowed enumeration.
pub fn count_thyme(t: &TemporalHypergraph, delta: i64) -> Result<MotifCountVector, CountError> {
    let mut state = ThymeState::new(t, delta);
    let mut counts = MotifCountVector::zero();
    while state.advance(|instance| counts.add(instance.motif, 1))? {}
    Ok(counts)
}
