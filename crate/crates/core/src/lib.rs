//! Online sparsification that preserves bipartite-like clusters, for
//! undirected graphs and (through the semi-double cover) digraphs.
//!
//! `no_std` with `alloc`. File formats, the CLI and experiment orchestration
//! live in the companion `bipspar` crate.

#![no_std]

extern crate alloc;

pub mod cover;
pub mod dsparsify;
mod enumerate;
pub mod error;
pub mod graph;
pub mod hashing;
pub mod localbip;
pub mod measures;
pub mod sparsify;
pub mod spectral;
pub mod synth;

pub use dsparsify::sparsify_digraph;
pub use error::{Error, Result};
pub use graph::{Edge, WeightedDigraph, WeightedGraph};
pub use localbip::{find_bipartite_cluster, find_directed_cluster, FinderParams, SweepResult};
pub use measures::ClusterPair;
pub use sparsify::{sparsify, sparsify_stream, AlphaMode, SparsifyConfig};
