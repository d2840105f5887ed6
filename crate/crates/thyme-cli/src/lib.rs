//! Command-line surface for the motif toolkit: dataset parsing, counting,
//! null models, profiles, features, statistics, and benchmarking.

pub mod commands;
pub mod io;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CommandError, RandomizeMode, StatsKind};
use thyme_core::counting::Algorithm;
use thyme_core::features::FeatureSet;

use crate::io::DatasetFormat;

#[derive(Parser, Debug)]
#[command(
    name = "thyme",
    version,
    about = "Exact temporal hypergraph motif counting and analysis",
    after_help = "Exit codes: 0 success, 1 usage error, 2 data error, 3 counting overflow."
)]
pub struct Cli {
    /// Seed for tie-breaking and every randomized step.
    #[arg(long, global = true, env = "THYME_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgoArg {
    Bruteforce,
    Dp,
    Thyme,
    ThymePlus,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Bruteforce => Algorithm::BruteForce,
            AlgoArg::Dp => Algorithm::Dp,
            AlgoArg::Thyme => Algorithm::Thyme,
            AlgoArg::ThymePlus => Algorithm::ThymePlus,
        }
    }
}

impl std::fmt::Display for AlgoArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", Algorithm::from(*self).name())
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Auto,
    Tsv,
    Trio,
}

impl From<FormatArg> for DatasetFormat {
    fn from(f: FormatArg) -> DatasetFormat {
        match f {
            FormatArg::Auto => DatasetFormat::Auto,
            FormatArg::Tsv => DatasetFormat::Tsv,
            FormatArg::Trio => DatasetFormat::Trio,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Shuffle,
    Hypercl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SetArg {
    Thm96,
    Thm26,
    Shm26,
}

impl From<SetArg> for FeatureSet {
    fn from(s: SetArg) -> FeatureSet {
        match s {
            SetArg::Thm96 => FeatureSet::Thm96,
            SetArg::Thm26 => FeatureSet::Thm26,
            SetArg::Shm26 => FeatureSet::Shm26,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WhatArg {
    Repetition,
    Locality,
    ValidFraction,
    PairOrders,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count motif instances with one of the four algorithms.
    Count {
        #[arg(long)]
        algo: AlgoArg,
        /// Window width in the dataset's original time units.
        #[arg(long)]
        delta: i64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        /// CSV destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON report with run metadata.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Export the catalog of the 96 patterns.
    MotifTable {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a null-model hypergraph (TSV on the parsed time axis).
    Randomize {
        #[arg(long)]
        mode: ModeArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characteristic profile against randomized replicas.
    Profile {
        #[arg(long)]
        delta: i64,
        #[arg(long, default_value_t = 5)]
        replicas: usize,
        #[arg(long, default_value_t = 4.0)]
        epsilon: f64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pearson similarity matrix of saved profiles.
    Similarity {
        /// Profile JSON files produced by `profile` (at least two).
        #[arg(required = true, num_args = 2..)]
        profiles: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-hyperedge motif participation features.
    Features {
        #[arg(long)]
        set: SetArg,
        /// Required for the temporal sets, ignored for shm26.
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hyperedge prediction harness over real and fake hyperedges.
    Predict {
        #[arg(long)]
        delta: i64,
        #[arg(long, default_value_t = 300)]
        epochs: usize,
        #[arg(long, default_value_t = 0.5)]
        learning_rate: f64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repetition, locality, valid-fraction, and pair-order statistics.
    Stats {
        #[arg(long)]
        what: WhatArg,
        /// Run lengths for locality, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        n: Vec<usize>,
        /// Required for valid-fraction and pair-orders.
        #[arg(long)]
        delta: Option<i64>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Wall-time and window-size comparison across algorithms and deltas.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [AlgoArg::Dp, AlgoArg::Thyme, AlgoArg::ThymePlus])]
        algos: Vec<AlgoArg>,
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<i64>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cli: Cli) -> Result<(), CommandError> {
    let seed = cli.seed;
    match cli.command {
        Command::Count { algo, delta, input, format, out, json } => commands::count(
            algo.into(),
            delta,
            &input,
            format.into(),
            out.as_deref(),
            json.as_deref(),
            seed,
        ),
        Command::MotifTable { out } => commands::motif_table(out.as_deref()),
        Command::Randomize { mode, input, format, out } => {
            let mode = match mode {
                ModeArg::Shuffle => RandomizeMode::Shuffle,
                ModeArg::Hypercl => RandomizeMode::Hypercl,
            };
            commands::randomize(mode, &input, format.into(), out.as_deref(), seed)
        }
        Command::Profile { delta, replicas, epsilon, input, format, out } => commands::profile(
            delta,
            replicas,
            epsilon,
            &input,
            format.into(),
            out.as_deref(),
            seed,
        ),
        Command::Similarity { profiles, out } => commands::similarity(&profiles, out.as_deref()),
        Command::Features { set, delta, input, format, out } => {
            commands::features(set.into(), delta, &input, format.into(), out.as_deref(), seed)
        }
        Command::Predict { delta, epochs, learning_rate, input, format, out } => commands::predict(
            delta,
            epochs,
            learning_rate,
            &input,
            format.into(),
            out.as_deref(),
            seed,
        ),
        Command::Stats { what, n, delta, input, format, out } => {
            let what = match what {
                WhatArg::Repetition => StatsKind::Repetition,
                WhatArg::Locality => StatsKind::Locality,
                WhatArg::ValidFraction => StatsKind::ValidFraction,
                WhatArg::PairOrders => StatsKind::PairOrders,
            };
            commands::stats(what, &n, delta, &input, format.into(), out.as_deref(), seed)
        }
        Command::Bench { algos, deltas, input, format, out } => {
            let algos: Vec<Algorithm> = algos.into_iter().map(Into::into).collect();
            commands::bench(&algos, &deltas, &input, format.into(), out.as_deref(), seed)
        }
    }
}
