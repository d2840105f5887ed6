//! Temporal and static hypergraph types.
//!
//! A temporal hypergraph is a time-ordered sequence of hyperedges, each a
//! non-empty node set with an integer arrival timestamp. Timestamps are
//! strictly increasing along the sequence; inputs with ties must be
//! disambiguated first (see [`crate::tiebreak`]). Dropping timestamps and
//! deduplicating node sets induces the static hypergraph.

use std::collections::HashMap;

use thiserror::Error;

/// Dense node identifier, `0..node_count`.
pub type NodeId = u32;

/// Identifier of a distinct node set in an induced static hypergraph.
pub type StaticEdgeId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("hyperedge must contain at least one node")]
    EmptyEdge,
    #[error("timestamps must strictly increase: t[{index}] = {timestamp} does not exceed its predecessor")]
    NonIncreasingTimestamps { index: usize, timestamp: i64 },
    #[error("node {node} out of range (node_count = {node_count})")]
    NodeOutOfRange { node: NodeId, node_count: usize },
    #[error("timestamp {timestamp} cannot be stretched without overflowing 64 bits")]
    TimestampOverflow { timestamp: i64 },
}

/// A node set paired with its arrival time. Nodes are kept sorted and
/// deduplicated so set algebra can run on slices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalHyperedge {
    nodes: Vec<NodeId>,
    timestamp: i64,
}

impl TemporalHyperedge {
    pub fn new(mut nodes: Vec<NodeId>, timestamp: i64) -> Result<Self, HypergraphError> {
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        Ok(Self { nodes, timestamp })
    }

    /// Sorted, duplicate-free node set.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn timestamp(&self) -> i64 {
        self.timestamp
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

/// Time-ordered sequence of temporal hyperedges over nodes `0..node_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalHypergraph {
    node_count: usize,
    edges: Vec<TemporalHyperedge>,
}

impl TemporalHypergraph {
    /// Builds a hypergraph, validating strict timestamp order and node range.
    pub fn new(
        node_count: usize,
        edges: Vec<TemporalHyperedge>,
    ) -> Result<Self, HypergraphError> {
        let mut prev: Option<i64> = None;
        for (index, edge) in edges.iter().enumerate() {
            if let Some(p) = prev {
                if edge.timestamp <= p {
                    return Err(HypergraphError::NonIncreasingTimestamps {
                        index,
                        timestamp: edge.timestamp,
                    });
                }
            }
            prev = Some(edge.timestamp);
            for &node in edge.nodes() {
                if node as usize >= node_count {
                    return Err(HypergraphError::NodeOutOfRange { node, node_count });
                }
            }
        }
        Ok(Self { node_count, edges })
    }

    /// Convenience constructor from `(nodes, timestamp)` pairs.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (Vec<NodeId>, i64)>,
    ) -> Result<Self, HypergraphError> {
        let edges = edges
            .into_iter()
            .map(|(nodes, t)| TemporalHyperedge::new(nodes, t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(node_count, edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[TemporalHyperedge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Timestamp of the edge at `index`.
    pub fn timestamp(&self, index: usize) -> i64 {
        self.edges[index].timestamp
    }

    /// Span of the whole sequence, 0 when fewer than two edges.
    pub fn time_span(&self) -> i64 {
        match (self.edges.first(), self.edges.last()) {
            (Some(a), Some(b)) => b.timestamp - a.timestamp,
            _ => 0,
        }
    }

    /// Per-node degree over the temporal multiset: a node in k temporal
    /// hyperedges has degree k.
    pub fn temporal_degrees(&self) -> Vec<u64> {
        let mut degrees = vec![0u64; self.node_count];
        for edge in &self.edges {
            for &v in edge.nodes() {
                degrees[v as usize] += 1;
            }
        }
        degrees
    }

    /// Hyperedge sizes in sequence order.
    pub fn edge_sizes(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.size()).collect()
    }
}

/// The static hypergraph induced by a temporal one: distinct node sets,
/// their temporal multiplicities, and the overlap adjacency between sets
/// sharing at least one node. `temporal_to_static` maps each temporal
/// hyperedge to the static edge it induces.
#[derive(Debug, Clone)]
pub struct StaticHypergraph {
    node_count: usize,
    sets: Vec<Vec<NodeId>>,
    multiplicity: Vec<u64>,
    neighbors: Vec<Vec<StaticEdgeId>>,
    temporal_to_static: Vec<StaticEdgeId>,
}

impl StaticHypergraph {
    /// Induces the static hypergraph. Static edge ids are assigned in order
    /// of first temporal appearance, so the result is deterministic.
    pub fn induce(t: &TemporalHypergraph) -> Self {
        let mut by_set: HashMap<&[NodeId], StaticEdgeId> = HashMap::new();
        let mut sets: Vec<Vec<NodeId>> = Vec::new();
        let mut multiplicity: Vec<u64> = Vec::new();
        let mut temporal_to_static = Vec::with_capacity(t.len());
        for edge in t.edges() {
            let id = *by_set.entry(edge.nodes()).or_insert_with(|| {
                sets.push(edge.nodes().to_vec());
                multiplicity.push(0);
                (sets.len() - 1) as StaticEdgeId
            });
            multiplicity[id as usize] += 1;
            temporal_to_static.push(id);
        }

        // Overlap adjacency via an inverted node index.
        let mut incident: Vec<Vec<StaticEdgeId>> = vec![Vec::new(); t.node_count()];
        for (id, set) in sets.iter().enumerate() {
            for &v in set {
                incident[v as usize].push(id as StaticEdgeId);
            }
        }
        let mut neighbors: Vec<Vec<StaticEdgeId>> = vec![Vec::new(); sets.len()];
        let mut seen = vec![u32::MAX; sets.len()];
        for (id, set) in sets.iter().enumerate() {
            for &v in set {
                for &other in &incident[v as usize] {
                    if other as usize != id && seen[other as usize] != id as u32 {
                        seen[other as usize] = id as u32;
                        neighbors[id].push(other);
                    }
                }
            }
            neighbors[id].sort_unstable();
        }

        Self {
            node_count: t.node_count(),
            sets,
            multiplicity,
            neighbors,
            temporal_to_static,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Number of distinct node sets.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, id: StaticEdgeId) -> &[NodeId] {
        &self.sets[id as usize]
    }

    pub fn sets(&self) -> &[Vec<NodeId>] {
        &self.sets
    }

    /// Number of temporal hyperedges inducing this set.
    pub fn multiplicity(&self, id: StaticEdgeId) -> u64 {
        self.multiplicity[id as usize]
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.multiplicity
    }

    /// Static edges overlapping `id`, sorted ascending.
    pub fn neighbors(&self, id: StaticEdgeId) -> &[StaticEdgeId] {
        &self.neighbors[id as usize]
    }

    /// All overlapping pairs {a, b} with a < b.
    pub fn overlap_pairs(&self) -> impl Iterator<Item = (StaticEdgeId, StaticEdgeId)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(a, ns)| {
            ns.iter()
                .filter(move |&&b| (a as StaticEdgeId) < b)
                .map(move |&b| (a as StaticEdgeId, b))
        })
    }

    pub fn temporal_to_static(&self) -> &[StaticEdgeId] {
        &self.temporal_to_static
    }

    pub fn are_overlapping(&self, a: StaticEdgeId, b: StaticEdgeId) -> bool {
        self.neighbors[a as usize].binary_search(&b).is_ok()
    }
}
