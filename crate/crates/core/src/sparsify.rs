//! Online degree-based edge sampling that preserves bipartite-like clusters.
//!
//! Every edge `{u, v}` of weight `w` is kept independently with probability
//!
//! ```text
//! p_u = min(w·α / d(u), 1),  p_v = min(w·α / d(v), 1),  p_e = p_u + p_v − p_u·p_v
//! ```
//!
//! and a kept edge carries weight `w / p_e`, so every pair cut `w(A, B)` is
//! preserved in expectation. The oversampling factor `α` stands in for the
//! `C·log³n / (2 − λ_{n−k})` term of the analysis; its guarantees assume the
//! input actually has strong bipartite-like clusters (`ρ̄(k) ≥ 1/log n`). The
//! sampler runs regardless and does not check that assumption.
//!
//! The keep/drop decision for an edge is a pure function of the seed and the
//! canonical key `(min(u, v), max(u, v))`, so replaying a stream in any order,
//! or splitting it across workers, gives the same output.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, WeightedGraph};
use crate::hashing::{keyed_uniform, STREAM_SAMPLE};
use crate::spectral::{self, MAX_DENSE};

/// How the oversampling factor `α` is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum AlphaMode {
    /// `α = 12·ln(n)` for the graph being sampled.
    Default,
    /// A caller-supplied `α > 0`.
    Explicit(f64),
    /// `α = c0·ln³(n) / (2 − λ_{n−k}(𝓛))`, computed by dense eigensolve.
    /// Only for graphs with at most [`MAX_DENSE`] non-isolated vertices.
    Spectral { k: usize, c0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SparsifyConfig {
    pub alpha: AlphaMode,
    pub seed: u64,
}

impl SparsifyConfig {
    pub fn new(alpha: AlphaMode, seed: u64) -> Self {
        SparsifyConfig { alpha, seed }
    }

    pub fn explicit(alpha: f64, seed: u64) -> Self {
        SparsifyConfig { alpha: AlphaMode::Explicit(alpha), seed }
    }

    pub fn validate(&self) -> Result<()> {
        match self.alpha {
            AlphaMode::Default => Ok(()),
            AlphaMode::Explicit(a) => check_alpha(a),
            AlphaMode::Spectral { k, c0 } => {
                if k == 0 {
                    return Err(invalid("k", "must be at least 1"));
                }
                if !(c0.is_finite() && c0 > 0.0) {
                    return Err(invalid("c0", "must be finite and positive"));
                }
                Ok(())
            }
        }
    }

    /// Resolves `α` for sampling `g`.
    pub fn resolve_alpha(&self, g: &WeightedGraph) -> Result<f64> {
        self.validate()?;
        match self.alpha {
            AlphaMode::Default => default_alpha(g.n()),
            AlphaMode::Explicit(a) => Ok(a),
            AlphaMode::Spectral { k, c0 } => spectral_alpha(g, k, c0),
        }
    }

    /// Resolves `α` when only the vertex count is known (streaming use).
    pub fn resolve_alpha_for(&self, n: usize) -> Result<f64> {
        self.validate()?;
        match self.alpha {
            AlphaMode::Default => default_alpha(n),
            AlphaMode::Explicit(a) => Ok(a),
            AlphaMode::Spectral { .. } => Err(invalid("alpha", "spectral mode needs the whole graph")),
        }
    }
}

/// `12·ln(n)`, the default oversampling factor.
pub fn default_alpha(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid("alpha", "default oversampling needs at least two vertices"));
    }
    Ok(12.0 * libm::log(n as f64))
}

fn spectral_alpha(g: &WeightedGraph, k: usize, c0: f64) -> Result<f64> {
    let active = spectral::active_subgraph(g);
    let n = active.n();
    if n > MAX_DENSE {
        return Err(Error::TooLarge { n, max: MAX_DENSE });
    }
    if k >= n {
        return Err(invalid("k", "must be smaller than the number of non-isolated vertices"));
    }
    let lam = spectral::eigenvalues(&spectral::normalized_laplacian(&active)?)?;
    // λ_{n−k} in 1-based ascending order
    let gap = 2.0 - lam[n - k - 1];
    if gap <= 1e-12 {
        return Err(Error::DegenerateSpectrum("2 - lambda_{n-k}"));
    }
    let ln = libm::log(n as f64);
    Ok(c0 * ln * ln * ln / gap)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(invalid("alpha", "must be finite and positive"))
    }
}

/// Per-endpoint and combined sampling probabilities of one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeProbability {
    pub p_u: f64,
    pub p_v: f64,
    pub p_e: f64,
}

/// Sampling probabilities of an edge of weight `w` between endpoints of
/// degrees `d_u` and `d_v`.
pub fn edge_probability(w: f64, d_u: f64, d_v: f64, alpha: f64) -> Result<EdgeProbability> {
    if !(w.is_finite() && w > 0.0) {
        return Err(invalid("w", "must be finite and positive"));
    }
    check_alpha(alpha)?;
    if !(d_u >= w && d_v >= w) || !d_u.is_finite() || !d_v.is_finite() {
        return Err(invalid("degree", "endpoint degrees must be at least the edge weight"));
    }
    let p_u = (w * alpha / d_u).min(1.0);
    let p_v = (w * alpha / d_v).min(1.0);
    let p_e = if p_u >= 1.0 || p_v >= 1.0 { 1.0 } else { p_u + p_v - p_u * p_v };
    Ok(EdgeProbability { p_u, p_v, p_e })
}

/// A kept edge with its sampling record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub probability: f64,
    pub reweighted: f64,
}

impl SampledEdge {
    pub fn edge(&self) -> Edge {
        Edge::new(self.u, self.v, self.reweighted)
    }
}

/// The online keep/drop decision for one edge. `d_u`, `d_v` are the final
/// degrees of the endpoints. Returns `None` when the edge is dropped.
pub fn sample_edge(
    u: usize,
    v: usize,
    w: f64,
    d_u: f64,
    d_v: f64,
    alpha: f64,
    seed: u64,
) -> Result<Option<SampledEdge>> {
    let (a, b, da, db) = if u <= v { (u, v, d_u, d_v) } else { (v, u, d_v, d_u) };
    let p = edge_probability(w, da, db, alpha)?;
    let keep = p.p_e >= 1.0 || keyed_uniform(seed, STREAM_SAMPLE, a as u64, b as u64) < p.p_e;
    Ok(keep.then(|| SampledEdge {
        u: a,
        v: b,
        weight: w,
        probability: p.p_e,
        reweighted: if p.p_e >= 1.0 { w } else { w / p.p_e },
    }))
}

const ORACLE_TOL: f64 = 1e-9;

/// Samples an edge stream on `n` vertices against a degree oracle that
/// returns each vertex's final degree `d_G(u)`.
///
/// The stream must not repeat an edge. Arrival order does not matter. The
/// oracle is checked against the incident weight seen so far, and
/// under-reporting is an [`Error::InconsistentOracle`].
pub fn sparsify_stream<I, E, D>(n: usize, edges: I, degree_oracle: D, config: &SparsifyConfig) -> Result<WeightedGraph>
where
    I: IntoIterator<Item = E>,
    E: Into<Edge>,
    D: Fn(usize) -> f64,
{
    let alpha = config.resolve_alpha_for(n)?;
    sample_stream(n, edges, degree_oracle, alpha, config.seed)
}

pub(crate) fn sample_stream<I, E, D>(
    n: usize,
    edges: I,
    degree_oracle: D,
    alpha: f64,
    seed: u64,
) -> Result<WeightedGraph>
where
    I: IntoIterator<Item = E>,
    E: Into<Edge>,
    D: Fn(usize) -> f64,
{
    let mut seen = vec![0.0f64; n];
    let mut kept: Vec<Edge> = Vec::new();
    for e in edges {
        let e: Edge = e.into();
        for x in [e.u, e.v] {
            if x >= n {
                return Err(Error::InvalidVertex { vertex: x, n });
            }
        }
        if !(e.w.is_finite() && e.w > 0.0) {
            return Err(Error::InvalidWeight { u: e.u, v: e.v, w: e.w });
        }
        if e.u == e.v {
            return Err(Error::SelfLoop(e.u));
        }
        let (du, dv) = (degree_oracle(e.u), degree_oracle(e.v));
        for (x, d) in [(e.u, du), (e.v, dv)] {
            seen[x] += e.w;
            if !(d >= seen[x] * (1.0 - ORACLE_TOL)) {
                return Err(Error::InconsistentOracle { vertex: x, reported: d, seen: seen[x] });
            }
        }
        // tolerate oracle rounding just below w
        let (du, dv) = (du.max(e.w), dv.max(e.w));
        if let Some(s) = sample_edge(e.u, e.v, e.w, du, dv, alpha, seed)? {
            kept.push(s.edge());
        }
    }
    WeightedGraph::from_edges(n, kept)
}

/// Sparsifies an in-memory graph using its own degrees as the oracle.
pub fn sparsify(g: &WeightedGraph, config: &SparsifyConfig) -> Result<WeightedGraph> {
    let alpha = config.resolve_alpha(g)?;
    sample_stream(g.n(), g.edges().iter().copied(), |u| g.degree(u), alpha, config.seed)
}

/// Kept edges of `g` with their sampling records, in canonical edge order.
pub fn sample_edges(g: &WeightedGraph, alpha: f64, seed: u64) -> Result<Vec<SampledEdge>> {
    let mut out = Vec::new();
    for e in g.edges() {
        if let Some(s) = sample_edge(e.u, e.v, e.w, g.degree(e.u), g.degree(e.v), alpha, seed)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// `Σ_e p_e`, the expected number of kept edges.
pub fn expected_edge_count(g: &WeightedGraph, alpha: f64) -> Result<f64> {
    let mut total = 0.0;
    for e in g.edges() {
        total += edge_probability(e.w, g.degree(e.u), g.degree(e.v), alpha)?.p_e;
    }
    Ok(total)
}

/// `Σ_e (p_u + p_v)`, the upper bound on [`expected_edge_count`]. Without
/// clamping this is exactly `α` times the number of non-isolated vertices.
pub fn edge_count_upper_bound(g: &WeightedGraph, alpha: f64) -> Result<f64> {
    let mut total = 0.0;
    for e in g.edges() {
        let p = edge_probability(e.w, g.degree(e.u), g.degree(e.v), alpha)?;
        total += p.p_u + p.p_v;
    }
    Ok(total)
}
