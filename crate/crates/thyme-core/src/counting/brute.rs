//! Cubic reference counter: scan all index triples inside the window.

use crate::counting::{CountError, MotifCountVector};
use crate::hypergraph::TemporalHypergraph;
use crate::motif::MotifTable;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Counts every instance by direct enumeration of index triples i<j<k with
/// `t_k - t_i <= delta`. Cubic; meant as the oracle for the other counters
/// and for small inputs.
pub fn count_brute_force(
    t: &TemporalHypergraph,
    delta: i64,
) -> Result<MotifCountVector, CountError> {
    assert!(delta >= 0, "window width must be non-negative");
    let timestamps: Vec<i64> = t.edges().iter().map(|e| e.timestamp()).collect();
    let table = MotifTable::global();

    let count_for_newest = |k: usize| -> Result<MotifCountVector, CountError> {
        let mut local = MotifCountVector::zero();
        let start = timestamps[..k].partition_point(|&ts| ts < timestamps[k] - delta);
        let ek = t.edges()[k].nodes();
        for i in start..k {
            let ei = t.edges()[i].nodes();
            for j in i + 1..k {
                let ej = t.edges()[j].nodes();
                if let Some(motif) = table.temporal_motif_unchecked(ei, ej, ek) {
                    local.add(motif, 1)?;
                }
            }
        }
        Ok(local)
    };

    #[cfg(feature = "parallel")]
    {
        (0..t.len())
            .into_par_iter()
            .try_fold(MotifCountVector::zero, |mut acc, k| {
                acc.merge(&count_for_newest(k)?)?;
                Ok(acc)
            })
            .try_reduce(MotifCountVector::zero, |mut a, b| {
                a.merge(&b)?;
                Ok(a)
            })
    }

    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = MotifCountVector::zero();
        for k in 0..t.len() {
            acc.merge(&count_for_newest(k)?)?;
        }
        Ok(acc)
    }
}
