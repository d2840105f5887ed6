//! Per-hyperedge motif participation features and a small hyperedge
//! prediction harness (fake-edge generation, temporal 8:2 split, logistic
//! regression trained by full-batch gradient descent).

use rand::Rng;
use thiserror::Error;

use crate::counting::{CountError, ThymeState};
use crate::counting::triples::for_each_connected_static_triple;
use crate::hypergraph::{NodeId, StaticHypergraph, TemporalHypergraph};
use crate::motif::MotifTable;
use crate::random::{hypercl, RandomizeError, RandomSeed};
use crate::tiebreak::{break_ties, TimeScale};

/// Dense row-major matrix of participation counts; one row per temporal
/// hyperedge in arrival order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperedgeFeatureMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl HyperedgeFeatureMatrix {
    fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    fn bump(&mut self, r: usize, c: usize) -> Result<(), CountError> {
        let slot = &mut self.data[r * self.cols + c];
        *slot = slot.checked_add(1).ok_or(CountError::Overflow)?;
        Ok(())
    }

    pub fn column_sum(&self, c: usize) -> u64 {
        (0..self.rows).map(|r| self.get(r, c)).sum()
    }

    /// Population variance of one column over all rows.
    pub fn column_variance(&self, c: usize) -> f64 {
        if self.rows == 0 {
            return 0.0;
        }
        let n = self.rows as f64;
        let mean = self.column_sum(c) as f64 / n;
        (0..self.rows)
            .map(|r| {
                let d = self.get(r, c) as f64 - mean;
                d * d
            })
            .sum::<f64>()
            / n
    }

    /// Rows as f64 vectors, optionally restricted to selected columns.
    pub fn to_f64_rows(&self, columns: Option<&[usize]>) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| match columns {
                Some(cols) => cols.iter().map(|&c| self.get(r, c) as f64).collect(),
                None => self.row(r).iter().map(|&v| v as f64).collect(),
            })
            .collect()
    }
}

/// Per-edge counts of temporal motif instances containing the edge, one
/// column per motif. Column sums equal three times the motif counts: every
/// instance has exactly three members.
pub fn incident_counts(
    t: &TemporalHypergraph,
    delta: i64,
) -> Result<HyperedgeFeatureMatrix, CountError> {
    let mut matrix = HyperedgeFeatureMatrix::zero(t.len(), 96);
    let mut state = ThymeState::new(t, delta);
    while state.advance(|instance| {
        let col = instance.motif.index();
        matrix.bump(instance.first, col)?;
        matrix.bump(instance.second, col)?;
        matrix.bump(instance.third, col)
    })? {}
    Ok(matrix)
}

/// Indices of the k columns with the highest variance, ties broken toward
/// lower column ids; the result is returned in ascending column order.
pub fn select_top_variance(matrix: &HyperedgeFeatureMatrix, k: usize) -> Vec<usize> {
    assert!(k <= matrix.cols());
    let mut order: Vec<usize> = (0..matrix.cols()).collect();
    let variances: Vec<f64> = order.iter().map(|&c| matrix.column_variance(c)).collect();
    order.sort_by(|&a, &b| {
        variances[b]
            .partial_cmp(&variances[a])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut selected: Vec<usize> = order.into_iter().take(k).collect();
    selected.sort_unstable();
    selected
}

/// Per-edge counts of connected static triples containing the edge's node
/// set, one column per static class. Temporal information is ignored, so
/// duplicated hyperedges share a row.
pub fn static_incident_counts(
    t: &TemporalHypergraph,
) -> Result<HyperedgeFeatureMatrix, CountError> {
    let g = StaticHypergraph::induce(t);
    let table = MotifTable::global();
    let mut per_static = HyperedgeFeatureMatrix::zero(g.len(), 26);
    for_each_connected_static_triple(&g, |a, b, c| {
        let class = table
            .static_motif_unchecked(g.set(a), g.set(b), g.set(c))
            .expect("connected distinct static triple");
        per_static.bump(a as usize, class.index())?;
        per_static.bump(b as usize, class.index())?;
        per_static.bump(c as usize, class.index())
    })?;
    let mut matrix = HyperedgeFeatureMatrix::zero(t.len(), 26);
    for (row, &sid) in g.temporal_to_static().iter().enumerate() {
        let src = per_static.row(sid as usize).to_vec();
        for (c, v) in src.into_iter().enumerate() {
            matrix.data[row * 26 + c] = v;
        }
    }
    Ok(matrix)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSet {
    Thm96,
    Thm26,
    Shm26,
}

impl FeatureSet {
    pub fn name(&self) -> &'static str {
        match self {
            FeatureSet::Thm96 => "thm96",
            FeatureSet::Thm26 => "thm26",
            FeatureSet::Shm26 => "shm26",
        }
    }
}

#[derive(Debug, Error)]
pub enum PredictionError {
    #[error(transparent)]
    Randomize(#[from] RandomizeError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("train split contains a single class")]
    SingleClassTrainSet,
    #[error("empty train or test split")]
    EmptySplit,
}

/// Real edges merged with an equal number of degree/size-preserving fakes,
/// sorted by (tie-broken) time and split 8:2 for train/test.
pub struct PredictionDataset {
    merged: TemporalHypergraph,
    labels: Vec<bool>,
    time_scale: TimeScale,
    delta_scaled: i64,
    split: usize,
}

/// Builds the prediction dataset: one fake hyperedge per real one, sampled
/// with the real degree/size profile and a timestamp drawn uniformly over
/// the real time range. Collisions are resolved by the tie-break rule, and
/// δ is rescaled with the timestamps.
pub fn build_prediction_dataset(
    t: &TemporalHypergraph,
    delta: i64,
    seed: RandomSeed,
) -> Result<PredictionDataset, PredictionError> {
    let degrees = t.temporal_degrees();
    let sizes = t.edge_sizes();
    let fake_sets = hypercl(&degrees, &sizes, seed.child(0))?;
    let mut rng = seed.child(1).rng();
    let (t_min, t_max) = match (t.edges().first(), t.edges().last()) {
        (Some(a), Some(b)) => (a.timestamp(), b.timestamp()),
        _ => (0, 0),
    };

    let mut entries: Vec<(i64, (Vec<NodeId>, bool))> = Vec::with_capacity(2 * t.len());
    for edge in t.edges() {
        entries.push((edge.timestamp(), (edge.nodes().to_vec(), true)));
    }
    for nodes in fake_sets {
        entries.push((rng.gen_range(t_min..=t_max), (nodes, false)));
    }
    let (broken, time_scale) =
        break_ties(entries, seed.child(2)).expect("synthetic timestamps stay in range");
    let labels: Vec<bool> = broken.iter().map(|(_, (_, real))| *real).collect();
    let merged = TemporalHypergraph::from_edges(
        t.node_count(),
        broken.into_iter().map(|(ts, (nodes, _))| (nodes, ts)),
    )
    .expect("tie-broken timestamps strictly increase");

    let split = merged.len() * 8 / 10;
    Ok(PredictionDataset {
        merged,
        labels,
        delta_scaled: time_scale.scale_delta(delta),
        time_scale,
        split,
    })
}

/// Train/test feature rows with labels (1.0 = real).
pub struct LabeledSplit {
    pub train_features: Vec<Vec<f64>>,
    pub train_labels: Vec<f64>,
    pub test_features: Vec<Vec<f64>>,
    pub test_labels: Vec<f64>,
    /// Column identity per feature column: motif ids for the temporal sets,
    /// static class ids for the static set.
    pub column_ids: Vec<usize>,
}

impl PredictionDataset {
    pub fn merged(&self) -> &TemporalHypergraph {
        &self.merged
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn time_scale(&self) -> TimeScale {
        self.time_scale
    }

    pub fn train_len(&self) -> usize {
        self.split
    }

    pub fn test_len(&self) -> usize {
        self.merged.len() - self.split
    }

    /// Feature matrix over the merged hypergraph, split by time order.
    pub fn features(&self, set: FeatureSet) -> Result<LabeledSplit, CountError> {
        let (matrix, columns): (HyperedgeFeatureMatrix, Vec<usize>) = match set {
            FeatureSet::Thm96 => {
                let m = incident_counts(&self.merged, self.delta_scaled)?;
                (m, (1..=96).collect())
            }
            FeatureSet::Thm26 => {
                let m = incident_counts(&self.merged, self.delta_scaled)?;
                let selected = select_top_variance(&m, 26);
                let ids = selected.iter().map(|&c| c + 1).collect();
                let rows = m.to_f64_rows(Some(&selected));
                return Ok(self.split_rows(rows, ids));
            }
            FeatureSet::Shm26 => {
                let m = static_incident_counts(&self.merged)?;
                (m, (1..=26).collect())
            }
        };
        let rows = matrix.to_f64_rows(None);
        Ok(self.split_rows(rows, columns))
    }

    fn split_rows(&self, rows: Vec<Vec<f64>>, column_ids: Vec<usize>) -> LabeledSplit {
        let mut train_features = rows;
        let test_features = train_features.split_off(self.split);
        let to_f = |b: &bool| if *b { 1.0 } else { 0.0 };
        LabeledSplit {
            train_features,
            train_labels: self.labels[..self.split].iter().map(to_f).collect(),
            test_features,
            test_labels: self.labels[self.split..].iter().map(to_f).collect(),
            column_ids,
        }
    }
}

/// Mean binary cross-entropy of a logistic model on raw feature rows.
pub fn logistic_loss(features: &[Vec<f64>], labels: &[f64], weights: &[f64], bias: f64) -> f64 {
    let n = features.len() as f64;
    features
        .iter()
        .zip(labels)
        .map(|(x, &y)| {
            let p = sigmoid(dot(weights, x) + bias);
            let p = p.clamp(1e-12, 1.0 - 1e-12);
            -(y * p.ln() + (1.0 - y) * (1.0 - p).ln())
        })
        .sum::<f64>()
        / n
}

/// Full-batch gradient of [`logistic_loss`]; returns (∂weights, ∂bias).
pub fn logistic_gradient(
    features: &[Vec<f64>],
    labels: &[f64],
    weights: &[f64],
    bias: f64,
) -> (Vec<f64>, f64) {
    let n = features.len() as f64;
    let mut grad_w = vec![0.0; weights.len()];
    let mut grad_b = 0.0;
    for (x, &y) in features.iter().zip(labels) {
        let err = sigmoid(dot(weights, x) + bias) - y;
        for (g, &xi) in grad_w.iter_mut().zip(x) {
            *g += err * xi;
        }
        grad_b += err;
    }
    for g in &mut grad_w {
        *g /= n;
    }
    (grad_w, grad_b / n)
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Column-wise standardization statistics fitted on the train split.
fn fit_standardizer(features: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let cols = features.first().map_or(0, |r| r.len());
    let n = features.len() as f64;
    let mut mean = vec![0.0; cols];
    for row in features {
        for (m, &v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n;
    }
    let mut std = vec![0.0; cols];
    for row in features {
        for ((s, &v), &m) in std.iter_mut().zip(row).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    for s in &mut std {
        *s = (*s / n).sqrt();
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    (mean, std)
}

fn standardize(features: &[Vec<f64>], mean: &[f64], std: &[f64]) -> Vec<Vec<f64>> {
    features
        .iter()
        .map(|row| {
            row.iter()
                .zip(mean.iter().zip(std))
                .map(|(&v, (&m, &s))| (v - m) / s)
                .collect()
        })
        .collect()
}

/// Trains logistic regression on standardized train features and returns
/// test accuracy at threshold 0.5.
pub fn train_eval_logreg(
    split: &LabeledSplit,
    epochs: usize,
    learning_rate: f64,
) -> Result<f64, PredictionError> {
    if split.train_features.is_empty() || split.test_features.is_empty() {
        return Err(PredictionError::EmptySplit);
    }
    let positives = split.train_labels.iter().filter(|&&y| y == 1.0).count();
    if positives == 0 || positives == split.train_labels.len() {
        return Err(PredictionError::SingleClassTrainSet);
    }

    let (mean, std) = fit_standardizer(&split.train_features);
    let train = standardize(&split.train_features, &mean, &std);
    let test = standardize(&split.test_features, &mean, &std);

    let mut weights = vec![0.0; mean.len()];
    let mut bias = 0.0;
    for _ in 0..epochs {
        let (grad_w, grad_b) = logistic_gradient(&train, &split.train_labels, &weights, bias);
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= learning_rate * g;
        }
        bias -= learning_rate * grad_b;
    }

    let correct = test
        .iter()
        .zip(&split.test_labels)
        .filter(|(x, &y)| {
            let predicted = if sigmoid(dot(&weights, x) + bias) >= 0.5 { 1.0 } else { 0.0 };
            predicted == y
        })
        .count();
    Ok(correct as f64 / test.len() as f64)
}
