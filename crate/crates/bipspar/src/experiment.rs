//! Generate → sparsify → find → compare, repeated over derived seeds.
//!
//! Repetition `i` (counted across sizes) uses `s = derive_seed(master, i)`;
//! the graph, sparsifier and finder get `derive_seed(s, 0)`, `derive_seed(s, 1)`
//! and `derive_seed(s, 2)`. Everything except `runtime_s` is a pure function
//! of the config.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bipspar_core::dsparsify::sparsify_digraph;
use bipspar_core::hashing::derive_seed;
use bipspar_core::localbip::{find_bipartite_cluster, find_directed_cluster, FinderParams};
use bipspar_core::measures::{bipartiteness_ratio, flow_ratio};
use bipspar_core::synth::{sbm_directed, sbm_undirected, DirectedSbm, UndirectedSbm};
use bipspar_core::{sparsify, AlphaMode, ClusterPair, SparsifyConfig, WeightedDigraph, WeightedGraph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::io::{format_g17, io_err, read_digraph, read_graph, IoError};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("invalid config field `{field}`: {reason}")]
    Config { field: &'static str, reason: String },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Graph(#[from] bipspar_core::Error),
    #[error("thread pool: {0}")]
    Threads(String),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

fn bad(field: &'static str, reason: impl Into<String>) -> ExperimentError {
    ExperimentError::Config { field, reason: reason.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    UndirectedSbm,
    DirectedSbm,
    FileUndirected,
    FileDirected,
}

/// SBM parameters. `n1`/`n2` are ignored when `sizes` is set on the config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SbmParams {
    pub n1: usize,
    pub n2: usize,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

fn default_alpha_mode() -> AlphaMode {
    AlphaMode::Default
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub sbm: Option<SbmParams>,
    /// Per-side sizes; each size runs `repetitions` times with `n1 = n2 = size`.
    #[serde(default)]
    pub sizes: Option<Vec<usize>>,
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default = "default_alpha_mode")]
    pub alpha: AlphaMode,
    #[serde(default)]
    pub finder: FinderParams,
    #[serde(default = "one")]
    pub repetitions: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    /// Worker cap; 0 defers to `BIPSPAR_THREADS`, then to rayon's default.
    #[serde(default)]
    pub threads: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(bad("repetitions", "must be at least 1"));
        }
        self.finder.validate().map_err(|e| bad("finder", e.to_string()))?;
        SparsifyConfig::new(self.alpha, 0).validate().map_err(|e| bad("alpha", e.to_string()))?;
        match self.kind {
            ExperimentKind::UndirectedSbm | ExperimentKind::DirectedSbm => {
                let sbm = self.sbm.ok_or_else(|| bad("sbm", "required for SBM experiments"))?;
                if let Some(sizes) = &self.sizes {
                    if sizes.is_empty() || sizes.contains(&0) {
                        return Err(bad("sizes", "must be a non-empty list of positive sizes"));
                    }
                }
                for spec in self.specs(&sbm, 0) {
                    spec.map_err(|e| bad("sbm", e.to_string()))?;
                }
            }
            ExperimentKind::FileUndirected | ExperimentKind::FileDirected => {
                if self.input.is_none() {
                    return Err(bad("input", "required for file experiments"));
                }
                if self.sizes.is_some() {
                    return Err(bad("sizes", "only applies to SBM experiments"));
                }
            }
        }
        Ok(())
    }

    fn sizes_of(&self, sbm: &SbmParams) -> Vec<(usize, usize)> {
        match &self.sizes {
            Some(s) => s.iter().map(|&n| (n, n)).collect(),
            None => vec![(sbm.n1, sbm.n2)],
        }
    }

    fn specs(&self, sbm: &SbmParams, seed: u64) -> Vec<std::result::Result<GraphSpec, bipspar_core::Error>> {
        self.sizes_of(sbm)
            .into_iter()
            .map(|(n1, n2)| match self.kind {
                ExperimentKind::DirectedSbm => {
                    let eta = sbm.eta.ok_or_else(|| missing("eta"))?;
                    let s = DirectedSbm { n1, n2, eta, seed };
                    s.validate()?;
                    Ok(GraphSpec::Directed(s))
                }
                _ => {
                    let p = sbm.p.ok_or_else(|| missing("p"))?;
                    let q = sbm.q.unwrap_or(0.1 * p);
                    let s = UndirectedSbm { n1, n2, p, q, seed };
                    s.validate()?;
                    Ok(GraphSpec::Undirected(s))
                }
            })
            .collect()
    }
}

fn missing(name: &'static str) -> bipspar_core::Error {
    bipspar_core::Error::InvalidParameter { name, reason: "missing".into() }
}

#[derive(Debug, Clone, Copy)]
enum GraphSpec {
    Undirected(UndirectedSbm),
    Directed(DirectedSbm),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Sparsified,
}

impl Variant {
    fn as_str(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::Sparsified => "sparsified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub seed: u64,
    pub variant: Variant,
    pub runtime_s: f64,
    /// `β` (undirected) or flow ratio (directed) of the finder output,
    /// measured on the original graph.
    pub quality: f64,
    pub edges_in: usize,
    pub edges_out: usize,
}

enum Loaded {
    Undirected(WeightedGraph),
    Directed(WeightedDigraph),
}

/// Worker count: `threads` if non-zero, else `BIPSPAR_THREADS` if set and
/// non-zero, else 0 (rayon decides).
pub fn thread_count(threads: usize) -> usize {
    if threads > 0 {
        return threads;
    }
    std::env::var("BIPSPAR_THREADS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    config.validate()?;
    // (counter, spec or loaded graph index)
    let mut jobs: Vec<(u64, Option<GraphSpec>)> = Vec::new();
    let mut file_graph: Option<Loaded> = None;
    match config.kind {
        ExperimentKind::UndirectedSbm | ExperimentKind::DirectedSbm => {
            let sbm = config.sbm.expect("validated");
            let mut counter = 0u64;
            for spec in config.specs(&sbm, 0) {
                let spec = spec.expect("validated");
                for _ in 0..config.repetitions {
                    jobs.push((counter, Some(spec)));
                    counter += 1;
                }
            }
        }
        ExperimentKind::FileUndirected | ExperimentKind::FileDirected => {
            let path = config.input.as_deref().expect("validated");
            file_graph = Some(if config.kind == ExperimentKind::FileUndirected {
                Loaded::Undirected(read_graph(path)?.0)
            } else {
                Loaded::Directed(read_digraph(path)?.0)
            });
            jobs.extend((0..config.repetitions as u64).map(|c| (c, None)));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(config.threads))
        .build()
        .map_err(|e| ExperimentError::Threads(e.to_string()))?;
    let results: Vec<Result<[ExperimentRow; 2]>> = pool.install(|| {
        jobs.par_iter().map(|&(counter, spec)| run_one(config, counter, spec, file_graph.as_ref())).collect()
    });
    let mut rows = Vec::with_capacity(2 * results.len());
    for r in results {
        rows.extend(r?);
    }
    rows.sort_by_key(|a| (a.seed, a.variant));
    Ok(rows)
}

fn run_one(
    config: &ExperimentConfig,
    counter: u64,
    spec: Option<GraphSpec>,
    file: Option<&Loaded>,
) -> Result<[ExperimentRow; 2]> {
    let seed = derive_seed(config.seed, counter);
    let (gseed, sseed, fseed) = (derive_seed(seed, 0), derive_seed(seed, 1), derive_seed(seed, 2));
    let finder = FinderParams { seed: fseed, ..config.finder };
    let scfg = SparsifyConfig::new(config.alpha, sseed);
    let generated;
    let graph = match spec {
        Some(GraphSpec::Undirected(s)) => {
            generated = Loaded::Undirected(sbm_undirected(&UndirectedSbm { seed: gseed, ..s })?.0);
            &generated
        }
        Some(GraphSpec::Directed(s)) => {
            generated = Loaded::Directed(sbm_directed(&DirectedSbm { seed: gseed, ..s })?.0);
            &generated
        }
        None => file.expect("file experiments carry a graph"),
    };
    let row = |variant, runtime: f64, quality, edges_out| ExperimentRow {
        seed,
        variant,
        runtime_s: runtime,
        quality,
        edges_in: match graph {
            Loaded::Undirected(g) => g.num_edges(),
            Loaded::Directed(g) => g.num_arcs(),
        },
        edges_out,
    };
    match graph {
        Loaded::Undirected(g) => {
            let sparse = sparsify(g, &scfg)?;
            let mut out = Vec::with_capacity(2);
            for (variant, h) in [(Variant::Full, g), (Variant::Sparsified, &sparse)] {
                let (res, t) = timed(|| find_bipartite_cluster(h, &finder));
                let res = res?;
                let pair = ClusterPair::new(res.l, res.r)?;
                out.push(row(variant, t, bipartiteness_ratio(g, &pair)?, h.num_edges()));
            }
            Ok(out.try_into().expect("two variants"))
        }
        Loaded::Directed(g) => {
            let sparse = sparsify_digraph(g, &scfg)?;
            let mut out = Vec::with_capacity(2);
            for (variant, h) in [(Variant::Full, g), (Variant::Sparsified, &sparse)] {
                let (res, t) = timed(|| find_directed_cluster(h, &finder));
                let res = res?;
                out.push(row(variant, t, flow_ratio(g, &res.pair)?, h.num_arcs()));
            }
            Ok(out.try_into().expect("two variants"))
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

pub const CSV_HEADER: &str = "seed,variant,runtime_s,quality,edges_in,edges_out";

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.seed,
            r.variant.as_str(),
            format_g17(r.runtime_s),
            format_g17(r.quality),
            r.edges_in,
            r.edges_out
        );
    }
    s
}

/// Parses what [`to_csv`] writes.
pub fn from_csv(text: &str) -> std::result::Result<Vec<ExperimentRow>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err("missing or wrong header".into());
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            let err = |what: &str| format!("row {}: bad {what}", i + 1);
            if f.len() != 6 {
                return Err(err("column count"));
            }
            Ok(ExperimentRow {
                seed: f[0].parse().map_err(|_| err("seed"))?,
                variant: match f[1] {
                    "full" => Variant::Full,
                    "sparsified" => Variant::Sparsified,
                    _ => return Err(err("variant")),
                },
                runtime_s: f[2].parse().map_err(|_| err("runtime_s"))?,
                quality: f[3].parse().map_err(|_| err("quality"))?,
                edges_in: f[4].parse().map_err(|_| err("edges_in"))?,
                edges_out: f[5].parse().map_err(|_| err("edges_out"))?,
            })
        })
        .collect()
}

pub fn to_json(rows: &[ExperimentRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn emit(rows: &[ExperimentRow], format: Format, path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(bad("rows", "nothing to emit"));
    }
    let text = match format {
        Format::Csv => to_csv(rows),
        Format::Json => to_json(rows),
    };
    std::fs::write(path, text).map_err(io_err(path))?;
    Ok(())
}
