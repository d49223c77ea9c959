//! JSON shapes printed by the CLI.

use bipspar_core::localbip::{DirectedCluster, SweepResult};
use bipspar_core::spectral::SpectralSummary;
use bipspar_core::synth::SbmSpec;
use bipspar_core::ClusterPair;
use serde::{Deserialize, Serialize};

use crate::io::IdMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub laplacian: Vec<f64>,
    pub signless: Vec<f64>,
}

impl From<&SpectralSummary> for SpectrumJson {
    fn from(s: &SpectralSummary) -> Self {
        SpectrumJson { laplacian: s.laplacian.clone(), signless: s.signless.clone() }
    }
}

/// Planted-pair sidecar written next to a generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedJson {
    pub spec: SbmSpec,
    pub planted: ClusterPair,
}

/// A sweep result in original vertex ids, with wall-clock time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepJson {
    #[serde(rename = "L")]
    pub l: Vec<u64>,
    #[serde(rename = "R")]
    pub r: Vec<u64>,
    pub beta: f64,
    pub iterations: usize,
    pub elapsed_s: f64,
}

impl SweepJson {
    pub fn new(s: &SweepResult, ids: &IdMap) -> Self {
        SweepJson {
            l: ids.map_all(&s.l),
            r: ids.map_all(&s.r),
            beta: s.beta,
            iterations: s.iterations,
            elapsed_s: s.elapsed.map_or(0.0, |d| d.as_secs_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectedJson {
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "B")]
    pub b: Vec<u64>,
    pub flow_ratio: f64,
    /// Cover-side sweep quality.
    pub cover_beta: f64,
    pub iterations: usize,
    pub elapsed_s: f64,
}

impl DirectedJson {
    pub fn new(c: &DirectedCluster, ids: &IdMap) -> Self {
        DirectedJson {
            a: ids.map_all(c.pair.a()),
            b: ids.map_all(c.pair.b()),
            flow_ratio: c.flow_ratio,
            cover_beta: c.sweep.beta,
            iterations: c.sweep.iterations,
            elapsed_s: c.sweep.elapsed.map_or(0.0, |d| d.as_secs_f64()),
        }
    }
}
