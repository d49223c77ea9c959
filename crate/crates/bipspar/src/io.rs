//! Edge-list files, id compaction and JSON side files.
//!
//! An edge-list line is `u v [w]`: two non-negative integer ids and an
//! optional positive weight (default 1). Lines starting with `#` are comments.
//! A `# vertices N` comment fixes the vertex count and keeps ids as written;
//! without it the ids seen in the file are compacted to `0..k` in ascending
//! order and the mapping is reported as an [`IdMap`].

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use bipspar_core::{ClusterPair, Edge, WeightedDigraph, WeightedGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Graph(#[from] bipspar_core::Error),
}

pub type Result<T> = std::result::Result<T, IoError>;

pub(crate) fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io { path: path.to_path_buf(), source }
}

/// `%.17g`: 17 significant digits, which round-trips every `f64`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let s = format!("{:.*}", (16 - exp) as usize, x);
        trim_zeros(&s).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mant), sign, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Compact id `i` ↔ original id `original[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    pub original: Vec<u64>,
}

impl IdMap {
    pub fn is_identity(&self) -> bool {
        self.original.iter().enumerate().all(|(i, &o)| i as u64 == o)
    }

    pub fn to_original(&self, id: usize) -> u64 {
        self.original[id]
    }

    pub fn map_all(&self, ids: &[usize]) -> Vec<u64> {
        ids.iter().map(|&i| self.original[i]).collect()
    }

    /// Compact id of an original id, if present.
    pub fn to_compact(&self, id: u64) -> Option<usize> {
        self.original.binary_search(&id).ok()
    }

    /// Writes `compact original` lines.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = String::from("# compact original\n");
        for (i, o) in self.original.iter().enumerate() {
            let _ = writeln!(out, "{i} {o}");
        }
        std::fs::write(path, out).map_err(io_err(path))
    }
}

/// A parsed edge list before it becomes a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<Edge>,
    pub ids: IdMap,
    /// Count of non-comment lines.
    pub lines: usize,
}

fn parse_header(line: &str) -> Option<&str> {
    let rest = line.trim_start_matches('#').trim();
    rest.strip_prefix("vertices").map(str::trim)
}

pub(crate) enum Line {
    Blank,
    Header(usize),
    Edge(u64, u64, f64),
}

pub(crate) fn parse_line(line: &str) -> std::result::Result<Line, String> {
    let line = line.trim();
    if line.is_empty() {
        return Ok(Line::Blank);
    }
    if line.starts_with('#') {
        return match parse_header(line) {
            Some(n) => n.parse().map(Line::Header).map_err(|_| format!("bad vertex count `{n}`")),
            None => Ok(Line::Blank),
        };
    }
    let mut it = line.split_whitespace();
    let mut id = |what: &str| -> std::result::Result<u64, String> {
        let tok = it.next().ok_or_else(|| format!("missing {what}"))?;
        tok.parse().map_err(|_| format!("bad vertex id `{tok}`"))
    };
    let u = id("source id")?;
    let v = id("target id")?;
    let w = match it.next() {
        None => 1.0,
        Some(tok) => tok.parse::<f64>().map_err(|_| format!("bad weight `{tok}`"))?,
    };
    if it.next().is_some() {
        return Err("expected `u v [w]`".into());
    }
    if !(w.is_finite() && w > 0.0) {
        return Err(format!("weight {w} must be finite and positive"));
    }
    if u == v {
        return Err(format!("self-loop at vertex {u}"));
    }
    Ok(Line::Edge(u, v, w))
}

/// Calls `f` with the line number and content of every non-blank line.
pub(crate) fn scan(path: &Path, mut f: impl FnMut(usize, Line) -> Result<()>) -> Result<()> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut reader = BufReader::new(file);
    let mut buf = String::new();
    let mut lineno = 0;
    loop {
        buf.clear();
        if reader.read_line(&mut buf).map_err(io_err(path))? == 0 {
            return Ok(());
        }
        lineno += 1;
        match parse_line(&buf) {
            Ok(Line::Blank) => {}
            Ok(line) => f(lineno, line)?,
            Err(msg) => return Err(IoError::Parse { path: path.to_path_buf(), line: lineno, msg }),
        }
    }
}

/// Reads an edge-list file. Duplicate lines are kept here and merged when the
/// graph is built.
pub fn read_edge_list(path: &Path) -> Result<EdgeList> {
    let parse_err = |line: usize, msg: String| IoError::Parse { path: path.to_path_buf(), line, msg };
    let mut declared: Option<usize> = None;
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    scan(path, |lineno, line| {
        match line {
            Line::Blank => {}
            Line::Header(n) => {
                if !raw.is_empty() {
                    return Err(parse_err(lineno, "vertex header must precede edges".into()));
                }
                declared = Some(n);
            }
            Line::Edge(u, v, w) => {
                if let Some(n) = declared {
                    if u.max(v) >= n as u64 {
                        return Err(parse_err(lineno, format!("vertex {} exceeds declared count {n}", u.max(v))));
                    }
                }
                raw.push((u, v, w));
            }
        }
        Ok(())
    })?;
    let lines = raw.len();
    let (n, ids) = match declared {
        Some(n) => (n, IdMap { original: (0..n as u64).collect() }),
        None => {
            let mut original: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
            original.sort_unstable();
            original.dedup();
            (original.len(), IdMap { original })
        }
    };
    let edges = if declared.is_some() {
        raw.iter().map(|&(u, v, w)| Edge::new(u as usize, v as usize, w)).collect()
    } else {
        raw.iter().map(|&(u, v, w)| Edge::new(ids.to_compact(u).unwrap(), ids.to_compact(v).unwrap(), w)).collect()
    };
    Ok(EdgeList { n, edges, ids, lines })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Undirected,
    Directed,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ingested {
    Undirected(WeightedGraph),
    Directed(WeightedDigraph),
}

/// Reads a file and normalizes it into a graph (duplicates merged).
/// A file without edges gives an empty graph and a warning on stderr.
pub fn ingest(path: &Path, mode: Mode) -> Result<(Ingested, IdMap)> {
    let list = read_edge_list(path)?;
    if list.edges.is_empty() {
        eprintln!("warning: {}: no edges", path.display());
    }
    let g = match mode {
        Mode::Undirected => Ingested::Undirected(WeightedGraph::from_edges(list.n, list.edges)?),
        Mode::Directed => Ingested::Directed(WeightedDigraph::from_arcs(list.n, list.edges)?),
    };
    Ok((g, list.ids))
}

pub fn read_graph(path: &Path) -> Result<(WeightedGraph, IdMap)> {
    match ingest(path, Mode::Undirected)? {
        (Ingested::Undirected(g), ids) => Ok((g, ids)),
        _ => unreachable!(),
    }
}

pub fn read_digraph(path: &Path) -> Result<(WeightedDigraph, IdMap)> {
    match ingest(path, Mode::Directed)? {
        (Ingested::Directed(g), ids) => Ok((g, ids)),
        _ => unreachable!(),
    }
}

fn write_edges(path: &Path, n: usize, edges: &[Edge]) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    let mut write = || -> std::io::Result<()> {
        writeln!(out, "# vertices {n}")?;
        for e in edges {
            writeln!(out, "{} {} {}", e.u, e.v, format_g17(e.w))?;
        }
        out.flush()
    };
    write().map_err(io_err(path))
}

pub fn write_graph(path: &Path, g: &WeightedGraph) -> Result<()> {
    write_edges(path, g.n(), g.edges())
}

pub fn write_digraph(path: &Path, g: &WeightedDigraph) -> Result<()> {
    write_edges(path, g.n(), g.arcs())
}

/// Sidecar path for the id map of `output`.
pub fn idmap_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".idmap");
    PathBuf::from(s)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(io_err(path))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|source| IoError::Json { path: path.to_path_buf(), source })
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut out, value)
        .map_err(|source| IoError::Json { path: path.to_path_buf(), source })?;
    out.write_all(b"\n").and_then(|_| out.flush()).map_err(io_err(path))
}

/// Witness file: `[{"A": [...], "B": [...]}, ...]`.
pub fn read_witnesses(path: &Path) -> Result<Vec<ClusterPair>> {
    read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g17() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(2.5), "2.5");
        assert_eq!(format_g17(1e20), "1e+20");
        assert_eq!(format_g17(1.5e-7), "1.4999999999999999e-07");
        assert_eq!(format_g17(-3.0), "-3");
        assert_eq!(format_g17(123456.0), "123456");
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 6.02214076e23, 5e-324, f64::MAX, 0.3 * 3.0] {
            assert_eq!(format_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn idmap_identity() {
        assert!(IdMap { original: vec![0, 1, 2] }.is_identity());
        let m = IdMap { original: vec![3, 10, 11] };
        assert!(!m.is_identity());
        assert_eq!(m.to_compact(10), Some(1));
        assert_eq!(m.to_compact(4), None);
    }
}
