//! Exact counting and analysis of temporal hypergraph motifs.
//!
//! Ordered triples of connected hyperedges arriving within a time window δ
//! fall into 96 patterns determined by the emptiness of their seven Venn
//! regions and the arrival order. This crate classifies triples, counts
//! instances exactly with four interchangeable algorithms, and carries the
//! downstream machinery: degree/size-preserving null models, significance
//! profiles, per-hyperedge motif features, and a small prediction harness.
//!
//! The `parallel` feature (on by default) runs the embarrassingly parallel
//! pieces — the brute-force oracle and null-model replicas — on rayon;
//! without it everything falls back to sequential loops.

pub mod analysis;
pub mod counting;
pub mod features;
pub mod hypergraph;
pub mod motif;
pub mod random;
pub mod synthetic;
pub mod tiebreak;

pub use counting::{Algorithm, CountError, MotifCountVector};
pub use hypergraph::{StaticHypergraph, TemporalHyperedge, TemporalHypergraph};
pub use motif::{MotifId, MotifTable, RegionPattern, StaticMotifId};
pub use random::RandomSeed;
