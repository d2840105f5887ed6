//! Subcommand implementations. Every writer is deterministic given the
//! input, flags, and seed, so repeated runs are byte-identical.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use thyme_core::analysis::{
    cp_similarity, locality_intervals, repetition_distribution, valid_static_fraction,
    CharacteristicProfile, ProfileConfig, ProfileError,
};
use thyme_core::counting::{self, Algorithm, CountError, MotifCountVector};
use thyme_core::features::{
    build_prediction_dataset, incident_counts, select_top_variance, static_incident_counts,
    train_eval_logreg, FeatureSet, HyperedgeFeatureMatrix, PredictionError,
};
use thyme_core::motif::{DuplicationClass, MotifTable};
use thyme_core::random::{randomize_temporal, shuffle_timestamps};
use thyme_core::RandomSeed;

use crate::io::{load, write_tsv, DatasetFormat, LoadedDataset};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Data(#[from] anyhow::Error),
    #[error("{0}")]
    Overflow(CountError),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Data(_) => 2,
            CommandError::Overflow(_) => 3,
        }
    }
}

fn lift_count(err: CountError) -> CommandError {
    match err {
        CountError::Overflow => CommandError::Overflow(err),
        other => CommandError::Data(anyhow!(other)),
    }
}

fn lift_profile(err: ProfileError) -> CommandError {
    match err {
        ProfileError::Count(CountError::Overflow) => CommandError::Overflow(CountError::Overflow),
        other => CommandError::Data(anyhow!(other)),
    }
}

fn lift_prediction(err: PredictionError) -> CommandError {
    match err {
        PredictionError::Count(CountError::Overflow) => {
            CommandError::Overflow(CountError::Overflow)
        }
        other => CommandError::Data(anyhow!(other)),
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>, CommandError> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn load_dataset(
    input: &Path,
    format: DatasetFormat,
    seed: u64,
) -> Result<LoadedDataset, CommandError> {
    load(input, format, RandomSeed(seed)).map_err(|e| CommandError::Data(anyhow!(e)))
}

#[derive(Serialize)]
struct CountReport<'a> {
    dataset: &'a str,
    algorithm: &'a str,
    delta: i64,
    delta_scaled: i64,
    time_stretch: i64,
    seed: u64,
    wall_time_ms: f64,
    peak_window_nodes: Option<usize>,
    peak_window_edges: Option<usize>,
    total_instances: u64,
    counts: Vec<u64>,
}

pub fn count(
    algo: Algorithm,
    delta: i64,
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    json: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    require_non_negative(delta)?;
    let ds = load_dataset(input, format, seed)?;
    let delta_scaled = ds.scale_delta(delta);
    let started = Instant::now();
    let run = counting::run(algo, &ds.hypergraph, delta_scaled).map_err(lift_count)?;
    let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut w = open_out(out)?;
    writeln!(w, "motif_id,count").context("write counts")?;
    for (id, c) in run.counts.iter() {
        writeln!(w, "{id},{c}").context("write counts")?;
    }
    drop(w);

    if let Some(json_path) = json {
        let report = CountReport {
            dataset: &ds.name,
            algorithm: algo.name(),
            delta,
            delta_scaled,
            time_stretch: ds.scale.stretch(),
            seed,
            wall_time_ms,
            peak_window_nodes: run.stats.peak_window_nodes,
            peak_window_edges: run.stats.peak_window_edges,
            total_instances: run.counts.total() as u64,
            counts: run.counts.counts().to_vec(),
        };
        let mut w = open_out(Some(json_path))?;
        serde_json::to_writer_pretty(&mut w, &report).context("write json report")?;
        writeln!(w).ok();
    }
    Ok(())
}

pub fn motif_table(out: Option<&Path>) -> Result<(), CommandError> {
    let table = MotifTable::global();
    let mut w = open_out(out)?;
    writeln!(
        w,
        "motif_id,pattern_code,region_bits,duplication_class,pair_structure,static_class"
    )
    .context("write table")?;
    for entry in table.entries() {
        let static_class = entry
            .static_class
            .map(|c| c.get().to_string())
            .unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{}",
            entry.id,
            entry.pattern.code(),
            entry.pattern.bit_string(),
            entry.class.label(),
            entry.class.structure_label(),
            static_class
        )
        .context("write table")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomizeMode {
    Shuffle,
    Hypercl,
}

pub fn randomize(
    mode: RandomizeMode,
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    let ds = load_dataset(input, format, seed)?;
    let generated = match mode {
        RandomizeMode::Shuffle => shuffle_timestamps(&ds.hypergraph, RandomSeed(seed)),
        RandomizeMode::Hypercl => randomize_temporal(&ds.hypergraph, RandomSeed(seed))
            .map_err(|e| CommandError::Data(anyhow!(e)))?,
    };
    let w = open_out(out)?;
    write_tsv(w, &generated, Some(&ds.labels)).context("write tsv")?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
pub struct ProfileReport {
    pub dataset: String,
    pub delta: i64,
    pub delta_scaled: i64,
    pub replicas: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub replica_seeds: Vec<u64>,
    pub values: Vec<f64>,
}

pub fn profile(
    delta: i64,
    replicas: usize,
    epsilon: f64,
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    require_non_negative(delta)?;
    let ds = load_dataset(input, format, seed)?;
    let delta_scaled = ds.scale_delta(delta);
    let cfg = ProfileConfig { delta: delta_scaled, replicas, epsilon, seed: RandomSeed(seed) };
    let result =
        thyme_core::analysis::characteristic_profile(&ds.hypergraph, &cfg).map_err(lift_profile)?;
    let report = ProfileReport {
        dataset: ds.name.clone(),
        delta,
        delta_scaled,
        replicas,
        epsilon,
        seed,
        replica_seeds: result.replica_seeds.clone(),
        values: result.profile.values().to_vec(),
    };
    let mut w = open_out(out)?;
    serde_json::to_writer_pretty(&mut w, &report).context("write profile")?;
    writeln!(w).ok();
    Ok(())
}

pub fn similarity(profiles: &[PathBuf], out: Option<&Path>) -> Result<(), CommandError> {
    let mut loaded: Vec<ProfileReport> = Vec::with_capacity(profiles.len());
    for path in profiles {
        let content = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let report: ProfileReport = serde_json::from_str(&content)
            .with_context(|| format!("cannot parse profile {}", path.display()))?;
        if report.values.len() != 96 {
            return Err(CommandError::Data(anyhow!(
                "{}: expected 96 profile values, found {}",
                path.display(),
                report.values.len()
            )));
        }
        loaded.push(report);
    }
    let cps: Vec<CharacteristicProfile> = loaded
        .iter()
        .map(|r| {
            let mut values = [0.0; 96];
            values.copy_from_slice(&r.values);
            CharacteristicProfile::from_values(values)
        })
        .collect();

    let mut w = open_out(out)?;
    let header: Vec<&str> = loaded.iter().map(|r| r.dataset.as_str()).collect();
    writeln!(w, "dataset,{}", header.join(",")).context("write similarity")?;
    for (i, report) in loaded.iter().enumerate() {
        let row: Vec<String> = cps
            .iter()
            .map(|other| format!("{:.6}", cp_similarity(&cps[i], other)))
            .collect();
        writeln!(w, "{},{}", report.dataset, row.join(",")).context("write similarity")?;
    }
    Ok(())
}

pub fn features(
    set: FeatureSet,
    delta: Option<i64>,
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    let ds = load_dataset(input, format, seed)?;
    let need_delta = || -> Result<i64, CommandError> {
        let d = delta.ok_or_else(|| {
            CommandError::Data(anyhow!("--delta is required for temporal feature sets"))
        })?;
        require_non_negative(d)?;
        Ok(ds.scale_delta(d))
    };
    let (matrix, ids): (HyperedgeFeatureMatrix, Vec<usize>) = match set {
        FeatureSet::Thm96 => {
            let m = incident_counts(&ds.hypergraph, need_delta()?).map_err(lift_count)?;
            (m, (1..=96).collect())
        }
        FeatureSet::Thm26 => {
            let m = incident_counts(&ds.hypergraph, need_delta()?).map_err(lift_count)?;
            let selected = select_top_variance(&m, 26);
            let ids: Vec<usize> = selected.iter().map(|&c| c + 1).collect();
            write_feature_csv(out, &m, Some(&selected), &ids)?;
            return Ok(());
        }
        FeatureSet::Shm26 => {
            let m = static_incident_counts(&ds.hypergraph).map_err(lift_count)?;
            (m, (1..=26).collect())
        }
    };
    write_feature_csv(out, &matrix, None, &ids)
}

fn write_feature_csv(
    out: Option<&Path>,
    matrix: &HyperedgeFeatureMatrix,
    columns: Option<&[usize]>,
    ids: &[usize],
) -> Result<(), CommandError> {
    let mut w = open_out(out)?;
    let header: Vec<String> = ids.iter().map(|id| id.to_string()).collect();
    writeln!(w, "{}", header.join(",")).context("write features")?;
    for r in 0..matrix.rows() {
        let row: Vec<String> = match columns {
            Some(cols) => cols.iter().map(|&c| matrix.get(r, c).to_string()).collect(),
            None => matrix.row(r).iter().map(|v| v.to_string()).collect(),
        };
        writeln!(w, "{}", row.join(",")).context("write features")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PredictReport {
    feature_set: String,
    accuracy: f64,
    train_size: usize,
    test_size: usize,
    seed: u64,
}

pub fn predict(
    delta: i64,
    epochs: usize,
    learning_rate: f64,
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    require_non_negative(delta)?;
    let ds = load_dataset(input, format, seed)?;
    let dataset = build_prediction_dataset(&ds.hypergraph, ds.scale_delta(delta), RandomSeed(seed))
        .map_err(lift_prediction)?;
    let mut reports = Vec::new();
    for set in [FeatureSet::Thm96, FeatureSet::Thm26, FeatureSet::Shm26] {
        let split = dataset.features(set).map_err(lift_count)?;
        let accuracy = train_eval_logreg(&split, epochs, learning_rate).map_err(lift_prediction)?;
        reports.push(PredictReport {
            feature_set: set.name().to_string(),
            accuracy,
            train_size: dataset.train_len(),
            test_size: dataset.test_len(),
            seed,
        });
    }
    let mut w = open_out(out)?;
    serde_json::to_writer_pretty(&mut w, &reports).context("write prediction report")?;
    writeln!(w).ok();
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatsKind {
    Repetition,
    Locality,
    ValidFraction,
    PairOrders,
}

pub fn stats(
    what: StatsKind,
    n_list: &[usize],
    delta: Option<i64>,
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    let ds = load_dataset(input, format, seed)?;
    let mut w = open_out(out)?;
    match what {
        StatsKind::Repetition => {
            writeln!(w, "repetition,node_sets").context("write stats")?;
            for (rep, count) in repetition_distribution(&ds.hypergraph) {
                writeln!(w, "{rep},{count}").context("write stats")?;
            }
        }
        StatsKind::Locality => {
            writeln!(w, "n,mean_span").context("write stats")?;
            for &n in n_list {
                if n < 2 {
                    return Err(CommandError::Data(anyhow!("locality needs n >= 2")));
                }
                match locality_intervals(&ds.hypergraph, n) {
                    Some(mean) => writeln!(w, "{n},{mean:.6}").context("write stats")?,
                    None => writeln!(w, "{n},nan").context("write stats")?,
                }
            }
        }
        StatsKind::ValidFraction => {
            let delta = delta.ok_or_else(|| {
                CommandError::Data(anyhow!("--delta is required for valid-fraction"))
            })?;
            require_non_negative(delta)?;
            let fraction = valid_static_fraction(&ds.hypergraph, ds.scale_delta(delta))
                .map_err(lift_count)?;
            writeln!(w, "delta,fraction").context("write stats")?;
            match fraction {
                Some(f) => writeln!(w, "{delta},{f:.9}").context("write stats")?,
                None => writeln!(w, "{delta},nan").context("write stats")?,
            }
        }
        StatsKind::PairOrders => {
            let delta = delta.ok_or_else(|| {
                CommandError::Data(anyhow!("--delta is required for pair-orders"))
            })?;
            require_non_negative(delta)?;
            let counts = counting::count_thyme_plus(&ds.hypergraph, ds.scale_delta(delta))
                .map_err(lift_count)?;
            write_pair_orders(&mut w, &counts)?;
        }
    }
    Ok(())
}

/// Counts and in-structure ratios of the nine duplicated-pair motifs,
/// grouped by containment structure.
fn write_pair_orders(w: &mut dyn Write, counts: &MotifCountVector) -> Result<(), CommandError> {
    let table = MotifTable::global();
    writeln!(
        w,
        "structure,o1_motif,o1_count,o2_motif,o2_count,o3_motif,o3_count,o1_ratio,o2_ratio,o3_ratio"
    )
    .context("write stats")?;
    for base in [87u8, 90, 93] {
        let ids = [base, base + 1, base + 2];
        let structure = match table.entry(thyme_core::MotifId::new(base)).class {
            DuplicationClass::Pair { structure, .. } => structure.label(),
            _ => unreachable!("ids 87..=95 are pair-inducing"),
        };
        let values: Vec<u64> = ids
            .iter()
            .map(|&id| counts.get(thyme_core::MotifId::new(id)))
            .collect();
        let total: u64 = values.iter().sum();
        let ratio = |v: u64| {
            if total == 0 {
                "nan".to_string()
            } else {
                format!("{:.6}", v as f64 / total as f64)
            }
        };
        writeln!(
            w,
            "{structure},{},{},{},{},{},{},{},{},{}",
            ids[0],
            values[0],
            ids[1],
            values[1],
            ids[2],
            values[2],
            ratio(values[0]),
            ratio(values[1]),
            ratio(values[2])
        )
        .context("write stats")?;
    }
    Ok(())
}

pub fn bench(
    algos: &[Algorithm],
    deltas: &[i64],
    input: &Path,
    format: DatasetFormat,
    out: Option<&Path>,
    seed: u64,
) -> Result<(), CommandError> {
    if deltas.is_empty() {
        return Err(CommandError::Data(anyhow!("--deltas must list at least one value")));
    }
    let ds = load_dataset(input, format, seed)?;
    let mut w = open_out(out)?;
    writeln!(
        w,
        "algorithm,delta,wall_time_ms,peak_window_nodes,peak_window_edges,total_instances"
    )
    .context("write bench")?;
    // Cells run sequentially so wall times are not polluted by each other.
    for &delta in deltas {
        require_non_negative(delta)?;
        let delta_scaled = ds.scale_delta(delta);
        for &algo in algos {
            let started = Instant::now();
            let run = counting::run(algo, &ds.hypergraph, delta_scaled).map_err(lift_count)?;
            let wall = started.elapsed().as_secs_f64() * 1e3;
            writeln!(
                w,
                "{},{},{:.3},{},{},{}",
                algo.name(),
                delta,
                wall,
                run.stats.peak_window_nodes.map_or(String::new(), |v| v.to_string()),
                run.stats.peak_window_edges.map_or(String::new(), |v| v.to_string()),
                run.counts.total()
            )
            .context("write bench")?;
        }
    }
    Ok(())
}

fn require_non_negative(delta: i64) -> Result<(), CommandError> {
    if delta < 0 {
        return Err(CommandError::Data(anyhow!("--delta must be non-negative")));
    }
    Ok(())
}
