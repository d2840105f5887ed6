//! Enumeration of connected triples containing a pivot vertex.

use crate::counting::CountError;
use crate::hypergraph::{StaticEdgeId, StaticHypergraph};

/// Read access to an overlap graph's adjacency lists.
pub(crate) trait Overlap {
    fn neighbors_of(&self, v: u32) -> &[u32];
}

impl Overlap for Vec<Vec<u32>> {
    fn neighbors_of(&self, v: u32) -> &[u32] {
        &self[v as usize]
    }
}

impl Overlap for StaticHypergraph {
    fn neighbors_of(&self, v: u32) -> &[u32] {
        self.neighbors(v)
    }
}

/// Generation-stamped scratch marks; avoids clearing between pivots.
pub(crate) struct NeighborScratch {
    mark: Vec<u32>,
    generation: u32,
}

impl NeighborScratch {
    pub fn new(capacity: usize) -> Self {
        Self { mark: vec![0; capacity], generation: 0 }
    }

    fn begin(&mut self) {
        self.generation += 1;
        if self.generation == u32::MAX {
            self.mark.fill(0);
            self.generation = 1;
        }
    }

    fn mark(&mut self, v: u32) {
        self.mark[v as usize] = self.generation;
    }

    fn is_marked(&self, v: u32) -> bool {
        self.mark[v as usize] == self.generation
    }

    /// Starts a fresh mark generation for ad-hoc deduplication.
    pub fn reset(&mut self) {
        self.begin();
    }

    /// Marks `v`, reporting whether it was unmarked before.
    pub fn mark_once(&mut self, v: u32) -> bool {
        if self.is_marked(v) {
            false
        } else {
            self.mark(v);
            true
        }
    }
}

/// Visits every connected triple {x, u, v} with `keep`-eligible companions
/// exactly once: (a) unordered pairs of neighbors of x, connected through x;
/// (b) open wedges x–u–v where v neighbors u but not x. A wedge companion v
/// reachable through several neighbors u yields one triple per u — those are
/// distinct hyperedge triples — while marking x's neighborhood keeps any
/// {x, u, v} with v also adjacent to x out of the wedge pass, so no triple
/// is reported twice.
pub(crate) fn for_each_triple_containing<G, K, V>(
    graph: &G,
    x: u32,
    scratch: &mut NeighborScratch,
    mut keep: K,
    mut visit: V,
) -> Result<(), CountError>
where
    G: Overlap + ?Sized,
    K: FnMut(u32) -> bool,
    V: FnMut(u32, u32) -> Result<(), CountError>,
{
    scratch.begin();
    let neighbors = graph.neighbors_of(x);
    for &u in neighbors {
        if keep(u) {
            scratch.mark(u);
        }
    }
    for (i, &u) in neighbors.iter().enumerate() {
        if !keep(u) {
            continue;
        }
        for &v in &neighbors[i + 1..] {
            if keep(v) {
                visit(u, v)?;
            }
        }
        for &v in graph.neighbors_of(u) {
            if v != x && keep(v) && !scratch.is_marked(v) {
                visit(u, v)?;
            }
        }
    }
    Ok(())
}

/// Visits every connected triple of distinct static edges exactly once, by
/// electing the largest id of each triple as the pivot.
pub(crate) fn for_each_connected_static_triple<V>(
    g: &StaticHypergraph,
    mut visit: V,
) -> Result<(), CountError>
where
    V: FnMut(StaticEdgeId, StaticEdgeId, StaticEdgeId) -> Result<(), CountError>,
{
    let mut scratch = NeighborScratch::new(g.len());
    for x in 0..g.len() as u32 {
        for_each_triple_containing(g, x, &mut scratch, |v| v < x, |u, v| visit(x, u, v))?;
    }
    Ok(())
}
