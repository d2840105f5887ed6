//! Dataset parsing and serialization.
//!
//! Native format: UTF-8 TSV with LF line endings, one hyperedge per line as
//! `<int64 timestamp>\t<label>(,<label>)*`; lines starting with `#` are
//! comments. The trio layout spreads a dataset over three integer-per-line
//! files `<prefix>-nverts.txt`, `<prefix>-simplices.txt`, `<prefix>-times.txt`.
//!
//! Parsing sorts edges by timestamp, resolves equal timestamps with the
//! seeded tie-break rule (stretching the time axis; window widths must be
//! converted through the returned [`TimeScale`]), and remaps node labels to
//! dense ids in order of first appearance in the final edge order.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;
use thyme_core::hypergraph::{HypergraphError, NodeId, TemporalHypergraph};
use thyme_core::tiebreak::{break_ties, TimeScale};
use thyme_core::RandomSeed;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{path}:{line}: {message}")]
    Line { path: PathBuf, line: usize, message: String },
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// A parsed dataset: the normalized hypergraph plus everything needed to
/// interpret it (original node labels, time-axis stretch, tie-break seed).
#[derive(Debug, Clone)]
pub struct LoadedDataset {
    pub hypergraph: TemporalHypergraph,
    pub scale: TimeScale,
    pub labels: Vec<String>,
    pub name: String,
    pub seed: RandomSeed,
}

impl LoadedDataset {
    /// Window width in original units, on the parsed time axis.
    pub fn scale_delta(&self, delta: i64) -> i64 {
        self.scale.scale_delta(delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    Auto,
    Tsv,
    Trio,
}

/// Loads a dataset, auto-detecting the trio layout by probing for
/// `<path>-nverts.txt`.
pub fn load(path: &Path, format: DatasetFormat, seed: RandomSeed) -> Result<LoadedDataset, ParseError> {
    let format = match format {
        DatasetFormat::Auto => {
            if trio_file(path, "nverts").exists() {
                DatasetFormat::Trio
            } else {
                DatasetFormat::Tsv
            }
        }
        other => other,
    };
    match format {
        DatasetFormat::Tsv => parse_tsv(path, seed),
        DatasetFormat::Trio => parse_trio(path, seed),
        DatasetFormat::Auto => unreachable!(),
    }
}

pub fn parse_tsv(path: &Path, seed: RandomSeed) -> Result<LoadedDataset, ParseError> {
    let content = fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut raw: Vec<(i64, Vec<String>)> = Vec::new();
    for (index, line) in content.lines().enumerate() {
        let line_no = index + 1;
        let line = line.trim_end_matches('\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (ts, nodes) = line.split_once('\t').ok_or_else(|| ParseError::Line {
            path: path.to_path_buf(),
            line: line_no,
            message: "expected <timestamp>\\t<node>(,<node>)*".into(),
        })?;
        let timestamp: i64 = ts.parse().map_err(|_| ParseError::Line {
            path: path.to_path_buf(),
            line: line_no,
            message: format!("invalid integer timestamp {ts:?}"),
        })?;
        let mut members: Vec<String> = Vec::new();
        for token in nodes.split(',') {
            if token.is_empty() {
                return Err(ParseError::Line {
                    path: path.to_path_buf(),
                    line: line_no,
                    message: "empty node label".into(),
                });
            }
            if !members.iter().any(|m| m == token) {
                members.push(token.to_string());
            }
        }
        if members.is_empty() {
            return Err(ParseError::Line {
                path: path.to_path_buf(),
                line: line_no,
                message: "empty node list".into(),
            });
        }
        raw.push((timestamp, members));
    }
    finish(raw, dataset_name(path), seed)
}

fn trio_file(prefix: &Path, part: &str) -> PathBuf {
    let mut name = prefix.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!("-{part}.txt"));
    prefix.with_file_name(name)
}

fn read_ints(path: &Path) -> Result<Vec<i64>, ParseError> {
    let content = fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = Vec::new();
    for (index, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(line.parse().map_err(|_| ParseError::Line {
            path: path.to_path_buf(),
            line: index + 1,
            message: format!("invalid integer {line:?}"),
        })?);
    }
    Ok(out)
}

pub fn parse_trio(prefix: &Path, seed: RandomSeed) -> Result<LoadedDataset, ParseError> {
    let nverts_path = trio_file(prefix, "nverts");
    let simplices_path = trio_file(prefix, "simplices");
    let times_path = trio_file(prefix, "times");
    let nverts = read_ints(&nverts_path)?;
    let simplices = read_ints(&simplices_path)?;
    let times = read_ints(&times_path)?;
    if times.len() != nverts.len() {
        return Err(ParseError::File {
            path: times_path,
            message: format!(
                "{} timestamps for {} hyperedge sizes",
                times.len(),
                nverts.len()
            ),
        });
    }
    let expected: i64 = nverts.iter().sum();
    if expected != simplices.len() as i64 {
        return Err(ParseError::File {
            path: simplices_path,
            message: format!(
                "sizes sum to {expected} but {} members are listed",
                simplices.len()
            ),
        });
    }
    let mut raw: Vec<(i64, Vec<String>)> = Vec::with_capacity(nverts.len());
    let mut cursor = 0usize;
    for (&size, &t) in nverts.iter().zip(&times) {
        if size <= 0 {
            return Err(ParseError::File {
                path: nverts_path,
                message: format!("non-positive hyperedge size {size}"),
            });
        }
        let mut members: Vec<String> = Vec::with_capacity(size as usize);
        for &node in &simplices[cursor..cursor + size as usize] {
            let label = node.to_string();
            if !members.iter().any(|m| m == &label) {
                members.push(label);
            }
        }
        cursor += size as usize;
        raw.push((t, members));
    }
    finish(raw, dataset_name(prefix), seed)
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn finish(
    raw: Vec<(i64, Vec<String>)>,
    name: String,
    seed: RandomSeed,
) -> Result<LoadedDataset, ParseError> {
    let entries: Vec<(i64, Vec<String>)> = raw;
    let (ordered, scale) = break_ties(entries, seed)?;

    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(Vec<NodeId>, i64)> = Vec::with_capacity(ordered.len());
    for (timestamp, members) in ordered {
        let nodes: Vec<NodeId> = members
            .into_iter()
            .map(|label| {
                *ids.entry(label.clone()).or_insert_with(|| {
                    labels.push(label);
                    (labels.len() - 1) as NodeId
                })
            })
            .collect();
        edges.push((nodes, timestamp));
    }
    let hypergraph = TemporalHypergraph::from_edges(labels.len(), edges)?;
    Ok(LoadedDataset { hypergraph, scale, labels, name, seed })
}

/// Writes the native TSV format. When `labels` is given, node ids map back
/// to their original labels; otherwise the dense ids are written.
pub fn write_tsv<W: Write>(
    mut w: W,
    t: &TemporalHypergraph,
    labels: Option<&[String]>,
) -> std::io::Result<()> {
    for edge in t.edges() {
        let rendered: Vec<String> = edge
            .nodes()
            .iter()
            .map(|&v| match labels {
                Some(l) => l[v as usize].clone(),
                None => v.to_string(),
            })
            .collect();
        write!(w, "{}\t{}\n", edge.timestamp(), rendered.join(","))?;
    }
    Ok(())
}
