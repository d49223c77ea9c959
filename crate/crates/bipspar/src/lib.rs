//! File formats, streaming ingestion and experiment orchestration on top of
//! [`bipspar_core`].

pub mod experiment;
pub mod io;
pub mod output;
pub mod stream;

pub use bipspar_core as core;
