//! Baseline bipartite-cluster finder: power iteration for the top eigenvector
//! of `𝓛`, then a two-sided sweep over `|x_v|/√d(v)`.
//!
//! This is a global spectral heuristic used to compare the same finder on a
//! graph and on its sparsifier. It is not a local clustering algorithm.

use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::cover::{self, DropLighterDegree};
use crate::error::{Error, Result};
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::hashing::{keyed_uniform, STREAM_START};
use crate::measures::{bipartiteness_ratio, flow_ratio, ClusterPair};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct FinderParams {
    pub iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for FinderParams {
    fn default() -> Self {
        FinderParams { iters: 500, tol: 1e-7, seed: 0 }
    }
}

impl FinderParams {
    pub fn validate(&self) -> Result<()> {
        if self.iters == 0 {
            return Err(crate::error::invalid("iters", "must be at least 1"));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(crate::error::invalid("tol", "must be finite and positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIteration {
    /// Unit-norm iterate.
    pub vector: Vec<f64>,
    pub rayleigh: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepResult {
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub l: Vec<usize>,
    #[cfg_attr(feature = "serde", serde(rename = "R"))]
    pub r: Vec<usize>,
    pub beta: f64,
    /// Power-iteration steps that produced the swept vector (0 if unknown).
    pub iterations: usize,
    /// Wall-clock time, filled in by callers that have a clock.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub elapsed: Option<Duration>,
}

fn inv_sqrt_degrees(g: &WeightedGraph) -> Vec<f64> {
    g.degrees().iter().map(|&d| if d > 0.0 { 1.0 / libm::sqrt(d) } else { 0.0 }).collect()
}

/// `y = 𝓛 x`, with isolated vertices mapped to 0.
fn apply_laplacian(g: &WeightedGraph, isd: &[f64], x: &[f64], y: &mut [f64]) {
    for u in 0..g.n() {
        if isd[u] == 0.0 {
            y[u] = 0.0;
            continue;
        }
        let (nb, ws) = g.adjacency(u);
        let mut s = 0.0;
        for (&v, &w) in nb.iter().zip(ws) {
            s += w * isd[v] * x[v];
        }
        y[u] = x[u] - isd[u] * s;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = libm::sqrt(dot(x, x));
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Power iteration on `𝓛` from a seeded start vector orthogonal to `D^{1/2}·1`.
/// Converged when successive Rayleigh quotients differ by less than `tol`;
/// otherwise the last iterate is returned with `converged = false`.
pub fn top_laplacian_vector(g: &WeightedGraph, iters: usize, tol: f64, seed: u64) -> Result<PowerIteration> {
    FinderParams { iters, tol, seed }.validate()?;
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let n = g.n();
    let isd = inv_sqrt_degrees(g);
    let mut x: Vec<f64> =
        (0..n).map(|v| if isd[v] > 0.0 { keyed_uniform(seed, STREAM_START, v as u64, 0) - 0.5 } else { 0.0 }).collect();
    let trivial: Vec<f64> = g.degrees().iter().map(|&d| libm::sqrt(d)).collect();
    let proj = dot(&x, &trivial) / dot(&trivial, &trivial);
    x.iter_mut().zip(&trivial).for_each(|(v, t)| *v -= proj * t);
    if normalize(&mut x) == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut y = vec![0.0; n];
    let mut prev = f64::NAN;
    for it in 1..=iters {
        apply_laplacian(g, &isd, &x, &mut y);
        let rq = dot(&x, &y);
        if normalize(&mut y) == 0.0 {
            // x lies in the kernel; nothing better is reachable
            return Ok(PowerIteration { vector: x, rayleigh: rq, iterations: it, converged: true });
        }
        core::mem::swap(&mut x, &mut y);
        if (rq - prev).abs() < tol {
            apply_laplacian(g, &isd, &x, &mut y);
            let rayleigh = dot(&x, &y);
            return Ok(PowerIteration { vector: x, rayleigh, iterations: it, converged: true });
        }
        prev = rq;
    }
    apply_laplacian(g, &isd, &x, &mut y);
    let rayleigh = dot(&x, &y);
    Ok(PowerIteration { vector: x, rayleigh, iterations: iters, converged: false })
}

/// Two-sided sweep. Vertices are ordered by `|x_v|/√d(v)` descending (ties by
/// id); each prefix puts `x_v ≥ 0` into `L` and `x_v < 0` into `R`, and the
/// prefix with the smallest `β(L, R)` wins, ties going to the shorter prefix.
/// Prefixes of zero volume are skipped.
pub fn two_sided_sweep(g: &WeightedGraph, x: &[f64]) -> Result<SweepResult> {
    let n = g.n();
    if x.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: x.len() });
    }
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    let key = |v: usize| {
        let d = g.degree(v);
        if d > 0.0 {
            x[v].abs() / libm::sqrt(d)
        } else {
            f64::NEG_INFINITY
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| key(b).total_cmp(&key(a)).then(a.cmp(&b)));

    // side: 0 = not yet added, 1 = L, 2 = R
    let mut side = vec![0u8; n];
    let (mut cross, mut vol) = (0.0f64, 0.0f64);
    let mut best: Option<(f64, usize)> = None;
    for (i, &v) in order.iter().enumerate() {
        let s = if x[v] >= 0.0 { 1 } else { 2 };
        side[v] = s;
        vol += g.degree(v);
        for (u, w) in g.neighbors(v) {
            if side[u] != 0 && side[u] != s {
                cross += w;
            }
        }
        if vol > 0.0 {
            let beta = 1.0 - 2.0 * cross / vol;
            if best.is_none_or(|(b, _)| beta < b) {
                best = Some((beta, i + 1));
            }
        }
    }
    let (_, len) = best.ok_or(Error::UndefinedRatio("sweep"))?;
    let (mut l, mut r): (Vec<usize>, Vec<usize>) = (Vec::new(), Vec::new());
    for &v in &order[..len] {
        if x[v] >= 0.0 {
            l.push(v)
        } else {
            r.push(v)
        }
    }
    l.sort_unstable();
    r.sort_unstable();
    let pair = ClusterPair::new(l.iter().copied(), r.iter().copied())?;
    let beta = bipartiteness_ratio(g, &pair)?;
    Ok(SweepResult { l, r, beta, iterations: 0, elapsed: None })
}

/// Power iteration followed by the sweep.
pub fn find_bipartite_cluster(g: &WeightedGraph, params: &FinderParams) -> Result<SweepResult> {
    let pi = top_laplacian_vector(g, params.iters, params.tol, params.seed)?;
    let mut res = two_sided_sweep(g, &pi.vector)?;
    res.iterations = pi.iterations;
    Ok(res)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DirectedCluster {
    pub pair: ClusterPair,
    pub flow_ratio: f64,
    /// The sweep on the cover, in cover ids.
    pub sweep: SweepResult,
}

/// Runs the finder on the semi-double cover and resolves the winning set
/// with [`DropLighterDegree`].
pub fn find_directed_cluster(g: &WeightedDigraph, params: &FinderParams) -> Result<DirectedCluster> {
    if g.num_arcs() == 0 {
        return Err(Error::NoEdges);
    }
    let h = cover::semi_double_cover(g);
    let sweep = find_bipartite_cluster(h.graph(), params)?;
    let set: Vec<usize> = sweep.l.iter().chain(&sweep.r).copied().collect();
    let pair = cover::set_to_pair(&h, &set, &DropLighterDegree)?;
    let flow_ratio = flow_ratio(g, &pair)?;
    Ok(DirectedCluster { pair, flow_ratio, sweep })
}
