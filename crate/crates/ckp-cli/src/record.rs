//! Per-run report emitted by `ckp solve`.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub algorithm: String,
    /// objective or bound value, depending on the algorithm
    pub value: f64,
    /// solver wall time, file IO excluded
    pub time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_nc: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap_percent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_star_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality_gap: Option<f64>,
}

impl RunRecord {
    pub fn new(instance: &str, n: usize, algorithm: &str, value: f64, time_s: f64) -> Self {
        RunRecord {
            instance: instance.to_owned(),
            n,
            algorithm: algorithm.to_owned(),
            value,
            time_s,
            z_nc: None,
            gap_percent: None,
            delta_count: None,
            delta_star_count: None,
            delta_star: None,
            nodes: None,
            proven: None,
            lambda_star: None,
            duality_gap: None,
        }
    }
}

impl std::fmt::Display for RunRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "instance: {}", self.instance)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "algorithm: {}", self.algorithm)?;
        writeln!(f, "value = {}", self.value)?;
        if let Some(v) = self.z_nc {
            writeln!(f, "z_nc = {v}")?;
        }
        if let Some(v) = self.gap_percent {
            writeln!(f, "gap% = {v:.3}")?;
        }
        if let Some(v) = self.delta_count {
            writeln!(f, "delta_count = {v}")?;
        }
        if let Some(v) = self.delta_star_count {
            writeln!(f, "delta_star_count = {v}")?;
        }
        if let Some(v) = self.delta_star {
            writeln!(f, "delta_star = {v}")?;
        }
        if let Some(v) = self.nodes {
            writeln!(f, "nodes = {v}")?;
        }
        if let Some(v) = self.proven {
            writeln!(f, "proven = {v}")?;
        }
        if let Some(v) = self.lambda_star {
            writeln!(f, "lambda_star = {v}")?;
        }
        if let Some(v) = self.duality_gap {
            writeln!(f, "duality_gap = {v}")?;
        }
        write!(f, "time_s = {:.6}", self.time_s)
    }
}
