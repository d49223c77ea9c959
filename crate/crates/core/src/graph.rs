//! Weighted undirected graphs and digraphs with cached degree oracles.
//!
//! Both representations are immutable after construction. Edges are stored
//! in a canonical order (sorted by endpoint ids, undirected edges with
//! `u < v`) and adjacency lists are sorted by neighbor id, so two graphs built
//! from the same edge multiset are identical regardless of input order.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

/// A weighted edge `(u, v, w)`. For undirected graphs `u < v`; for digraphs
/// it is the arc `u -> v`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        Edge { u, v, w }
    }
}

impl From<(usize, usize, f64)> for Edge {
    fn from((u, v, w): (usize, usize, f64)) -> Self {
        Edge { u, v, w }
    }
}

fn validate(n: usize, e: &Edge) -> Result<()> {
    for x in [e.u, e.v] {
        if x >= n {
            return Err(Error::InvalidVertex { vertex: x, n });
        }
    }
    if e.u == e.v {
        return Err(Error::SelfLoop(e.u));
    }
    if !(e.w.is_finite() && e.w > 0.0) {
        return Err(Error::InvalidWeight { u: e.u, v: e.v, w: e.w });
    }
    Ok(())
}

fn edge_order(a: &Edge, b: &Edge) -> Ordering {
    (a.u, a.v).cmp(&(b.u, b.v)).then(a.w.total_cmp(&b.w))
}

/// Sorts and merges parallel entries by summing weights in sorted order.
fn canonicalize(mut edges: Vec<Edge>) -> Vec<Edge> {
    edges.sort_unstable_by(edge_order);
    let mut out: Vec<Edge> = Vec::with_capacity(edges.len());
    for e in edges {
        match out.last_mut() {
            Some(last) if last.u == e.u && last.v == e.v => last.w += e.w,
            _ => out.push(e),
        }
    }
    out
}

/// Compressed adjacency: `targets[offsets[u]..offsets[u + 1]]` sorted by id.
#[derive(Debug, Clone, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

impl Csr {
    fn build(n: usize, entries: &mut [(usize, usize, f64)]) -> Self {
        entries.sort_unstable_by_key(|a| (a.0, a.1));
        let mut offsets = alloc::vec![0usize; n + 1];
        for &(s, _, _) in entries.iter() {
            offsets[s + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Csr { offsets, targets: entries.iter().map(|e| e.1).collect(), weights: entries.iter().map(|e| e.2).collect() }
    }

    #[inline]
    fn row(&self, u: usize) -> (&[usize], &[f64]) {
        let r = self.offsets[u]..self.offsets[u + 1];
        (&self.targets[r.clone()], &self.weights[r])
    }

    /// Row sums, accumulated in neighbor-id order.
    fn sums(&self, n: usize) -> Vec<f64> {
        (0..n).map(|u| self.row(u).1.iter().fold(0.0, |acc, &w| acc + w)).collect()
    }

    fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let (t, w) = self.row(u);
        t.binary_search(&v).ok().map(|i| w[i])
    }
}

/// Undirected weighted graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Csr,
    degrees: Vec<f64>,
}

impl WeightedGraph {
    /// Builds a graph on `n` vertices. Parallel edges are merged by summing
    /// their weights; self-loops and non-positive weights are rejected.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut list = Vec::new();
        for e in edges {
            let e = e.into();
            validate(n, &e)?;
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            list.push(Edge { u, v, w: e.w });
        }
        let edges = canonicalize(list);
        let mut entries = Vec::with_capacity(2 * edges.len());
        for e in &edges {
            entries.push((e.u, e.v, e.w));
            entries.push((e.v, e.u, e.w));
        }
        let adj = Csr::build(n, &mut entries);
        let degrees = adj.sums(n);
        Ok(WeightedGraph { n, edges, adj, degrees })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        WeightedGraph::from_edges::<_, Edge>(n, []).expect("empty graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list (`u < v`, sorted).
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `u` with edge weights, sorted by neighbor id.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (t, w) = self.adj.row(u);
        t.iter().copied().zip(w.iter().copied())
    }

    /// Neighbor ids and weights of `u` as parallel slices.
    pub fn adjacency(&self, u: usize) -> (&[usize], &[f64]) {
        self.adj.row(u)
    }

    /// `d(u)`, the total weight of edges incident to `u`.
    pub fn degree(&self, u: usize) -> f64 {
        self.degrees[u]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj.weight(u, v)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn is_isolated(&self, u: usize) -> bool {
        self.adj.offsets[u] == self.adj.offsets[u + 1]
    }
}

/// Directed weighted graph without self-loops or parallel arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Edge>,
    out_adj: Csr,
    in_adj: Csr,
    deg_out: Vec<f64>,
    deg_in: Vec<f64>,
}

impl WeightedDigraph {
    /// Builds a digraph on `n` vertices from arcs `u -> v`; parallel arcs are
    /// merged by summing weights.
    pub fn from_arcs<I, E>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut list = Vec::new();
        for e in arcs {
            let e = e.into();
            validate(n, &e)?;
            list.push(e);
        }
        let arcs = canonicalize(list);
        let mut fwd: Vec<_> = arcs.iter().map(|a| (a.u, a.v, a.w)).collect();
        let mut bwd: Vec<_> = arcs.iter().map(|a| (a.v, a.u, a.w)).collect();
        let out_adj = Csr::build(n, &mut fwd);
        let in_adj = Csr::build(n, &mut bwd);
        let deg_out = out_adj.sums(n);
        let deg_in = in_adj.sums(n);
        Ok(WeightedDigraph { n, arcs, out_adj, in_adj, deg_out, deg_in })
    }

    pub fn empty(n: usize) -> Self {
        WeightedDigraph::from_arcs::<_, Edge>(n, []).expect("empty digraph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs sorted by `(tail, head)`.
    pub fn arcs(&self) -> &[Edge] {
        &self.arcs
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (t, w) = self.out_adj.row(u);
        t.iter().copied().zip(w.iter().copied())
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (t, w) = self.in_adj.row(u);
        t.iter().copied().zip(w.iter().copied())
    }

    pub fn deg_out(&self, u: usize) -> f64 {
        self.deg_out[u]
    }

    pub fn deg_in(&self, u: usize) -> f64 {
        self.deg_in[u]
    }

    pub fn out_degrees(&self) -> &[f64] {
        &self.deg_out
    }

    pub fn in_degrees(&self) -> &[f64] {
        &self.deg_in
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.out_adj.weight(u, v)
    }

    pub fn total_weight(&self) -> f64 {
        self.arcs.iter().map(|e| e.w).sum()
    }
}
