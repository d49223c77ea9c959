//! Two-block stochastic block models with a planted pair.
//!
//! Vertices `0..n1` form `L` (or `C1`) and `n1..n1+n2` form `R` (or `C2`).
//! Every pair draws its own counter-keyed uniform, so the output depends only
//! on the spec and never on generation order.

use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::graph::{Edge, WeightedDigraph, WeightedGraph};
use crate::hashing::{keyed_uniform, STREAM_DSBM, STREAM_SBM};
use crate::measures::ClusterPair;

/// Undirected SBM: cross pairs with probability `p`, intra pairs with `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UndirectedSbm {
    pub n1: usize,
    pub n2: usize,
    pub p: f64,
    pub q: f64,
    pub seed: u64,
}

/// Directed SBM: `L → R` arcs with probability `eta`, `R → L` with `1 − eta`,
/// intra arcs with `min(9/n1, 1)` inside `L` and `min(9/n2, 1)` inside `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DirectedSbm {
    pub n1: usize,
    pub n2: usize,
    pub eta: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "lowercase"))]
pub enum SbmSpec {
    Undirected(UndirectedSbm),
    Directed(DirectedSbm),
}

fn check_prob(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(invalid(name, "must lie in [0, 1]"))
    }
}

fn check_sizes(n1: usize, n2: usize) -> Result<()> {
    if n1 == 0 {
        return Err(invalid("n1", "must be at least 1"));
    }
    if n2 == 0 {
        return Err(invalid("n2", "must be at least 1"));
    }
    Ok(())
}

fn planted(n1: usize, n2: usize) -> ClusterPair {
    ClusterPair::new(0..n1, n1..n1 + n2).expect("blocks are disjoint and non-empty")
}

impl UndirectedSbm {
    pub fn validate(&self) -> Result<()> {
        check_sizes(self.n1, self.n2)?;
        check_prob("p", self.p)?;
        check_prob("q", self.q)
    }

    /// Expected planted `φ̄` up to degree fluctuations: cross weight over
    /// cross-plus-intra weight, `p·n1·n2 / (p·n1·n2 + q·(C(n1,2) + C(n2,2)))`.
    pub fn expected_planted_bipartiteness(&self) -> f64 {
        let (a, b) = (self.n1 as f64, self.n2 as f64);
        let cross = self.p * a * b;
        let intra = self.q * (a * (a - 1.0) + b * (b - 1.0)) / 2.0;
        if cross + intra == 0.0 {
            return 0.0;
        }
        cross / (cross + intra)
    }
}

impl DirectedSbm {
    pub fn validate(&self) -> Result<()> {
        check_sizes(self.n1, self.n2)?;
        check_prob("eta", self.eta)
    }

    pub fn intra_probabilities(&self) -> (f64, f64) {
        ((9.0 / self.n1 as f64).min(1.0), (9.0 / self.n2 as f64).min(1.0))
    }
}

impl SbmSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            SbmSpec::Undirected(s) => s.validate(),
            SbmSpec::Directed(s) => s.validate(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SbmSpec::Undirected(s) => s.n1 + s.n2,
            SbmSpec::Directed(s) => s.n1 + s.n2,
        }
    }
}

pub fn sbm_undirected(spec: &UndirectedSbm) -> Result<(WeightedGraph, ClusterPair)> {
    spec.validate()?;
    let (n1, n) = (spec.n1, spec.n1 + spec.n2);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if (i < n1) == (j < n1) { spec.q } else { spec.p };
            if keyed_uniform(spec.seed, STREAM_SBM, i as u64, j as u64) < p {
                edges.push(Edge::new(i, j, 1.0));
            }
        }
    }
    Ok((WeightedGraph::from_edges(n, edges)?, planted(spec.n1, spec.n2)))
}

pub fn sbm_directed(spec: &DirectedSbm) -> Result<(WeightedDigraph, ClusterPair)> {
    spec.validate()?;
    let (n1, n) = (spec.n1, spec.n1 + spec.n2);
    let (pl, pr) = spec.intra_probabilities();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = match (i < n1, j < n1) {
                (true, true) => pl,
                (false, false) => pr,
                (true, false) => spec.eta,
                (false, true) => 1.0 - spec.eta,
            };
            if keyed_uniform(spec.seed, STREAM_DSBM, i as u64, j as u64) < p {
                arcs.push(Edge::new(i, j, 1.0));
            }
        }
    }
    Ok((WeightedDigraph::from_arcs(n, arcs)?, planted(spec.n1, spec.n2)))
}
