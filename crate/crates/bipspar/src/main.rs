use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use bipspar::experiment::{self, run_experiment, ExperimentConfig, ExperimentError, Format};
use bipspar::io::{self, idmap_path, IdMap, IoError, Mode};
use bipspar::output::{DirectedJson, PlantedJson, SpectrumJson, SweepJson};
use bipspar::stream::sparsify_file;
use bipspar_core::cover::{reverse_graph, semi_double_cover};
use bipspar_core::dsparsify::{report, resolve_directed_alpha, sparsify_digraph_with_alpha};
use bipspar_core::localbip::{find_bipartite_cluster, find_directed_cluster, FinderParams};
use bipspar_core::spectral::SpectralSummary;
use bipspar_core::synth::{sbm_directed, sbm_undirected, DirectedSbm, SbmSpec, UndirectedSbm};
use bipspar_core::{sparsify, AlphaMode, ClusterPair, Edge, SparsifyConfig, WeightedGraph};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Cluster-preserving sparsification of graphs and digraphs.
#[derive(Parser)]
#[command(name = "bipspar", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a two-block SBM edge list and a planted-pair sidecar.
    Sbm(SbmArgs),
    /// Sparsify an undirected edge list.
    Sparsify(SparsifyArgs),
    /// Sparsify a directed arc list through the semi-double cover.
    Dsparsify(DsparsifyArgs),
    /// Build a semi-double cover, or map a cover back to arcs.
    Cover(CoverArgs),
    /// Run the spectral two-sided sweep finder and print the result as JSON.
    Findbip(FindbipArgs),
    /// Print the spectra of the normalized and signless matrices as JSON.
    Spectral(SpectralArgs),
    /// Run a generate/sparsify/find experiment from a JSON config.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Undirected,
    Directed,
}

#[derive(Args)]
struct SbmArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Size of the first block (L / C1).
    #[arg(long)]
    n1: usize,
    /// Size of the second block (R / C2).
    #[arg(long)]
    n2: usize,
    /// Cross-block edge probability (undirected).
    #[arg(long)]
    p: Option<f64>,
    /// Intra-block edge probability (undirected); defaults to 0.1·p.
    #[arg(long)]
    q: Option<f64>,
    /// Probability of an L→R arc; R→L arcs get 1 − eta (directed).
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path.
    #[arg(long)]
    output: PathBuf,
    /// Planted-pair JSON path [default: <output>.planted.json].
    #[arg(long)]
    planted: Option<PathBuf>,
}

#[derive(Args)]
struct AlphaArgs {
    /// Oversampling factor; default 12·ln(n) (12·ln(2n) for digraphs).
    #[arg(long, conflicts_with = "spectral_k")]
    alpha: Option<f64>,
    /// Derive alpha from the spectrum for k clusters (small graphs only).
    #[arg(long)]
    spectral_k: Option<usize>,
    /// Constant for --spectral-k.
    #[arg(long, default_value_t = 1.0, requires = "spectral_k")]
    c0: f64,
}

impl AlphaArgs {
    fn mode(&self) -> AlphaMode {
        match (self.alpha, self.spectral_k) {
            (Some(a), _) => AlphaMode::Explicit(a),
            (None, Some(k)) => AlphaMode::Spectral { k, c0: self.c0 },
            (None, None) => AlphaMode::Default,
        }
    }
}

#[derive(Args)]
struct SparsifyArgs {
    #[command(flatten)]
    alpha: AlphaArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Two passes over the file instead of loading it; input must be duplicate-free.
    #[arg(long)]
    stream: bool,
}

#[derive(Args)]
struct DsparsifyArgs {
    #[command(flatten)]
    alpha: AlphaArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// JSON list of witness pairs [{"A": [...], "B": [...]}, ...] in input ids.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Forward,
    Reverse,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long, value_enum)]
    direction: Direction,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct FinderArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Power-iteration cap.
    #[arg(long, default_value_t = 500)]
    iters: usize,
    /// Rayleigh-quotient convergence tolerance.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
}

#[derive(Args)]
struct FindbipArgs {
    #[arg(long)]
    input: PathBuf,
    /// Treat the input as arcs and search the semi-double cover.
    #[arg(long)]
    directed: bool,
    #[command(flatten)]
    finder: FinderArgs,
}

#[derive(Args)]
struct SpectralArgs {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config file.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's output path; stdout when neither is set.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    repetitions: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker cap; 0 defers to BIPSPAR_THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn write_ids(output: &Path, ids: &IdMap) -> anyhow::Result<()> {
    if !ids.is_identity() {
        ids.write(&idmap_path(output))?;
    }
    Ok(())
}

fn cmd_sbm(a: SbmArgs) -> anyhow::Result<()> {
    let spec = match a.kind {
        Kind::Undirected => {
            let p = a.p.ok_or_else(|| anyhow!("config: --p is required for undirected SBMs"))?;
            SbmSpec::Undirected(UndirectedSbm { n1: a.n1, n2: a.n2, p, q: a.q.unwrap_or(0.1 * p), seed: a.seed })
        }
        Kind::Directed => {
            let eta = a.eta.ok_or_else(|| anyhow!("config: --eta is required for directed SBMs"))?;
            SbmSpec::Directed(DirectedSbm { n1: a.n1, n2: a.n2, eta, seed: a.seed })
        }
    };
    let planted = match &spec {
        SbmSpec::Undirected(s) => {
            let (g, p) = sbm_undirected(s)?;
            io::write_graph(&a.output, &g)?;
            p
        }
        SbmSpec::Directed(s) => {
            let (g, p) = sbm_directed(s)?;
            io::write_digraph(&a.output, &g)?;
            p
        }
    };
    let side = a.planted.unwrap_or_else(|| {
        let mut s = a.output.as_os_str().to_owned();
        s.push(".planted.json");
        s.into()
    });
    io::write_json(&side, &PlantedJson { spec, planted })?;
    Ok(())
}

#[derive(Serialize)]
struct SparsifySummary {
    n: usize,
    input_edges: usize,
    output_edges: usize,
    alpha: f64,
    seed: u64,
}

fn cmd_sparsify(a: SparsifyArgs) -> anyhow::Result<()> {
    let config = SparsifyConfig::new(a.alpha.mode(), a.seed);
    if a.stream {
        let s = sparsify_file(&a.input, &a.output, Mode::Undirected, &config)?;
        return print_json(&s);
    }
    let (g, ids) = io::read_graph(&a.input)?;
    let alpha = config.resolve_alpha(&g)?;
    let h = sparsify(&g, &SparsifyConfig::explicit(alpha, a.seed))?;
    io::write_graph(&a.output, &h)?;
    write_ids(&a.output, &ids)?;
    print_json(&SparsifySummary {
        n: g.n(),
        input_edges: g.num_edges(),
        output_edges: h.num_edges(),
        alpha,
        seed: a.seed,
    })
}

#[derive(Serialize)]
struct WitnessJson {
    #[serde(rename = "A")]
    a: Vec<u64>,
    #[serde(rename = "B")]
    b: Vec<u64>,
    before: Option<f64>,
    after: Option<f64>,
}

#[derive(Serialize)]
struct DsparsifyJson {
    input_arcs: usize,
    output_arcs: usize,
    alpha: f64,
    seed: u64,
    witnesses: Vec<WitnessJson>,
}

fn to_compact(ids: &IdMap, xs: &[usize]) -> anyhow::Result<Vec<usize>> {
    xs.iter()
        .map(|&x| {
            ids.to_compact(x as u64).ok_or_else(|| anyhow!("graph: witness vertex {x} does not occur in the input"))
        })
        .collect()
}

fn cmd_dsparsify(a: DsparsifyArgs) -> anyhow::Result<()> {
    let (g, ids) = io::read_digraph(&a.input)?;
    let config = SparsifyConfig::new(a.alpha.mode(), a.seed);
    let alpha = resolve_directed_alpha(&g, &config)?;
    let h = sparsify_digraph_with_alpha(&g, alpha, a.seed)?;
    io::write_digraph(&a.output, &h)?;
    write_ids(&a.output, &ids)?;
    let witnesses = match &a.witness {
        Some(path) => io::read_witnesses(path)?
            .iter()
            .map(|p| Ok(ClusterPair::new(to_compact(&ids, p.a())?, to_compact(&ids, p.b())?)?))
            .collect::<anyhow::Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let r = report(&g, &h, alpha, a.seed, &witnesses);
    print_json(&DsparsifyJson {
        input_arcs: r.input_arcs,
        output_arcs: r.output_arcs,
        alpha: r.alpha,
        seed: r.seed,
        witnesses: r
            .witnesses
            .iter()
            .map(|w| WitnessJson {
                a: ids.map_all(w.pair.a()),
                b: ids.map_all(w.pair.b()),
                before: w.before,
                after: w.after,
            })
            .collect(),
    })
}

fn cmd_cover(a: CoverArgs) -> anyhow::Result<()> {
    match a.direction {
        Direction::Forward => {
            let (g, ids) = io::read_digraph(&a.input)?;
            io::write_graph(&a.output, semi_double_cover(&g).graph())?;
            write_ids(&a.output, &ids)?;
        }
        Direction::Reverse => {
            // cover ids carry meaning (parity), so never compact them
            let list = io::read_edge_list(&a.input)?;
            let edges: Vec<Edge> = list
                .edges
                .iter()
                .map(|e| Edge::new(list.ids.to_original(e.u) as usize, list.ids.to_original(e.v) as usize, e.w))
                .collect();
            let top = list.ids.original.last().map_or(0, |&x| x as usize + 1);
            let n = list.n.max(top).next_multiple_of(2);
            let h = WeightedGraph::from_edges(n, edges)?;
            io::write_digraph(&a.output, &reverse_graph(&h)?)?;
        }
    }
    Ok(())
}

fn cmd_findbip(a: FindbipArgs) -> anyhow::Result<()> {
    let params = FinderParams { iters: a.finder.iters, tol: a.finder.tol, seed: a.finder.seed };
    if a.directed {
        let (g, ids) = io::read_digraph(&a.input)?;
        let start = Instant::now();
        let mut c = find_directed_cluster(&g, &params)?;
        c.sweep.elapsed = Some(start.elapsed());
        print_json(&DirectedJson::new(&c, &ids))
    } else {
        let (g, ids) = io::read_graph(&a.input)?;
        let start = Instant::now();
        let mut s = find_bipartite_cluster(&g, &params)?;
        s.elapsed = Some(start.elapsed());
        print_json(&SweepJson::new(&s, &ids))
    }
}

fn cmd_spectral(a: SpectralArgs) -> anyhow::Result<()> {
    let (g, _) = io::read_graph(&a.input)?;
    print_json(&SpectrumJson::from(&SpectralSummary::of(&g)?))
}

fn cmd_experiment(a: ExperimentArgs) -> anyhow::Result<()> {
    let mut config: ExperimentConfig = io::read_json(&a.config)?;
    if let Some(o) = a.output {
        config.output = Some(o);
    }
    if let Some(f) = a.format {
        config.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(r) = a.repetitions {
        config.repetitions = r;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    if let Some(t) = a.threads {
        config.threads = t;
    }
    let rows = run_experiment(&config)?;
    match &config.output {
        Some(path) => experiment::emit(&rows, config.format, path)?,
        None => match config.format {
            Format::Csv => print!("{}", experiment::to_csv(&rows)),
            Format::Json => print!("{}", experiment::to_json(&rows)),
        },
    }
    Ok(())
}

/// Short category tag for the one-line error report.
fn category(err: &anyhow::Error) -> &'static str {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<IoError>() {
            return match e {
                IoError::Io { .. } => "io",
                IoError::Parse { .. } => "parse",
                IoError::Json { .. } => "json",
                IoError::Graph(_) => "graph",
            };
        }
        if let Some(e) = cause.downcast_ref::<ExperimentError>() {
            return match e {
                ExperimentError::Config { .. } => "config",
                ExperimentError::Io(_) => "io",
                ExperimentError::Graph(_) => "graph",
                ExperimentError::Threads(_) => "threads",
            };
        }
        if cause.downcast_ref::<bipspar_core::Error>().is_some() {
            return "graph";
        }
    }
    "error"
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Sbm(a) => cmd_sbm(a),
        Cmd::Sparsify(a) => cmd_sparsify(a),
        Cmd::Dsparsify(a) => cmd_dsparsify(a),
        Cmd::Cover(a) => cmd_cover(a),
        Cmd::Findbip(a) => cmd_findbip(a),
        Cmd::Spectral(a) => cmd_spectral(a),
        Cmd::Experiment(a) => cmd_experiment(a).context("experiment failed"),
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {}", one_line(first));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // ad-hoc messages already start with their own category
            match category(&e) {
                "error" => eprintln!("error: {}", one_line(&format!("{e:#}"))),
                cat => eprintln!("error: {cat}: {}", one_line(&format!("{e:#}"))),
            }
            ExitCode::FAILURE
        }
    }
}
