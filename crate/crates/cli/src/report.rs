//! Serializable reports. Field order is fixed and no clock values are written
//! unless timings were requested, so equal jobs give byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use novikov_core::{BundleSample, Certificate, Direction, RankResult, TorsionMethod};

use crate::job::JobSpec;

pub const TOOL: &str = "novikov";

#[derive(Clone, Debug, Serialize)]
pub struct InputSummary {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators: Option<usize>,
    /// Cell counts `n_0..n_d`.
    pub dims: Vec<usize>,
    pub euler: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassLabel {
    /// Rows as exact rationals; absent when the complex carries the class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<String>>>,
    pub display: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionCarrier {
    pub degree: usize,
    pub direction: Direction,
    pub value: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    /// `q_i` along `+xi`, `i = 0..=d`.
    pub plus: Vec<usize>,
    /// `q_i` along `-xi`.
    pub minus: Vec<usize>,
    pub method: TorsionMethod,
    /// Nonzero entries, so the direction carrying torsion is explicit.
    pub carried_by: Vec<TorsionCarrier>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SamplerReport {
    pub samples: usize,
    pub min_dims: Vec<usize>,
    pub agrees_with_betti: bool,
    /// Samples with some `h_i > b_i`.
    pub jumps: Vec<BundleSample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassResult {
    pub class: ClassLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundaries: Option<Value>,
    /// `rank d_k` for `k = 1..=d`, with modular witnesses when sampled.
    pub ranks: Vec<RankResult>,
    /// Some rank came from modular sampling without exact confirmation.
    pub probabilistic: bool,
    pub betti: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<TorsionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<SamplerReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComputeReport {
    pub tool: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub job: JobSpec,
    pub input: InputSummary,
    pub results: Vec<ClassResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScannedClass {
    pub class: ClassLabel,
    pub betti: Vec<usize>,
    pub b1: usize,
    pub probabilistic: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassStatus {
    Ok,
    NoClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub tool: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub job: JobSpec,
    pub input: InputSummary,
    pub class_status: ClassStatus,
    pub classes: Vec<ScannedClass>,
    pub certificate: Certificate,
    /// Every route witness was recomputed with exact ranks and holds.
    pub witnesses_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleResult {
    pub class: ClassLabel,
    pub betti: Vec<usize>,
    pub min_dims: Vec<usize>,
    pub agrees_with_betti: bool,
    pub samples: Vec<BundleSample>,
    /// Explicitly requested points.
    pub points: Vec<BundleSample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub tool: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub job: JobSpec,
    pub input: InputSummary,
    pub results: Vec<SampleResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}
