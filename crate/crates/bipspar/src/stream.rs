//! Two-pass file sparsification: one pass to collect degrees, one pass that
//! decides every line independently and writes kept edges straight out.
//!
//! Memory is O(n), not O(m). Each input line is treated as its own edge, so
//! the file should be duplicate-free; repeated lines are sampled separately
//! (with the same uniform draw, since the key is the vertex pair) and appear
//! separately in the output.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use bipspar_core::cover::{head, tail};
use bipspar_core::dsparsify::resolve_directed_alpha;
use bipspar_core::sparsify::sample_edge;
use bipspar_core::{SparsifyConfig, WeightedDigraph};
use serde::Serialize;

use crate::io::{format_g17, idmap_path, io_err, scan, IdMap, IoError, Line, Mode, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StreamSummary {
    pub n: usize,
    pub input_edges: usize,
    pub output_edges: usize,
    pub alpha: f64,
    pub seed: u64,
}

/// Streams `input` through the sampler into `output`. Undirected mode uses
/// total degrees, directed mode out-degree of the tail and in-degree of the
/// head. An id map is written next to `output` when ids were compacted.
pub fn sparsify_file(input: &Path, output: &Path, mode: Mode, config: &SparsifyConfig) -> Result<StreamSummary> {
    // pass 1: ids and degrees (out, in); undirected uses only the first
    let mut declared: Option<usize> = None;
    let mut deg: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    let mut m = 0usize;
    scan(input, |lineno, line| {
        match line {
            Line::Header(n) if m == 0 => declared = Some(n),
            Line::Header(_) => {
                return Err(IoError::Parse {
                    path: input.to_path_buf(),
                    line: lineno,
                    msg: "vertex header must precede edges".into(),
                })
            }
            Line::Edge(u, v, w) => {
                m += 1;
                deg.entry(u).or_default().0 += w;
                let dv = deg.entry(v).or_default();
                match mode {
                    Mode::Undirected => dv.0 += w,
                    Mode::Directed => dv.1 += w,
                }
            }
            Line::Blank => {}
        }
        Ok(())
    })?;
    let ids = match declared {
        Some(n) => {
            if let Some((&bad, _)) = deg.range(n as u64..).next() {
                return Err(IoError::Graph(bipspar_core::Error::InvalidVertex { vertex: bad as usize, n }));
            }
            IdMap { original: (0..n as u64).collect() }
        }
        None => IdMap { original: deg.keys().copied().collect() },
    };
    let n = ids.original.len();
    let degree = |id: u64| deg.get(&id).copied().unwrap_or_default();
    let alpha = match mode {
        Mode::Undirected => config.resolve_alpha_for(n)?,
        // only the vertex count matters for the non-spectral modes
        Mode::Directed => resolve_directed_alpha(&WeightedDigraph::empty(n), config)?,
    };

    // pass 2
    let file = File::create(output).map_err(io_err(output))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "# vertices {n}").map_err(io_err(output))?;
    let mut kept = 0usize;
    scan(input, |_, line| {
        if let Line::Edge(u, v, w) = line {
            let (cu, cv) = (ids.to_compact(u).unwrap(), ids.to_compact(v).unwrap());
            let s = match mode {
                Mode::Undirected => sample_edge(cu, cv, w, degree(u).0, degree(v).0, alpha, config.seed)?,
                Mode::Directed => sample_edge(tail(cu), head(cv), w, degree(u).0, degree(v).1, alpha, config.seed)?,
            };
            if let Some(s) = s {
                kept += 1;
                writeln!(out, "{cu} {cv} {}", format_g17(s.reweighted)).map_err(io_err(output))?;
            }
        }
        Ok(())
    })?;
    out.flush().map_err(io_err(output))?;
    if !ids.is_identity() {
        ids.write(&idmap_path(output))?;
    }
    Ok(StreamSummary { n, input_edges: m, output_edges: kept, alpha, seed: config.seed })
}
