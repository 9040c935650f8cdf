//! Run configuration and machine-readable check records.

use crate::{DbError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Tolerance the per-check thresholds are calibrated against.
pub const NOMINAL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub a: f64,
    pub gamma: f64,
    pub window: [f64; 2],
    pub tol: f64,
    pub grid_n: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { a: PI, gamma: PI / 4.0, window: [-5.0, 5.0], tol: NOMINAL_TOL, grid_n: 41, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(DbError::invalid(format!("a must be positive and finite, got {}", self.a)));
        }
        if !self.gamma.is_finite() {
            return Err(DbError::invalid("gamma must be finite"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(DbError::invalid(format!("tol must be positive, got {}", self.tol)));
        }
        if self.grid_n < 3 {
            return Err(DbError::invalid(format!("grid_n must be at least 3, got {}", self.grid_n)));
        }
        let [lo, hi] = self.window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(DbError::invalid(format!("window [{lo}, {hi}] is not a valid interval")));
        }
        Ok(())
    }

    /// Factor applied to every nominal threshold.
    pub fn tol_scale(&self) -> f64 {
        self.tol / NOMINAL_TOL
    }

    /// `grid_n` equispaced points of the window.
    pub fn grid(&self) -> Vec<f64> {
        let [lo, hi] = self.window;
        let n = self.grid_n;
        (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Int(i64),
    Real(f64),
    Reals(Vec<f64>),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<usize> for ParamValue {
    fn from(v: usize) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<bool> for ParamValue {
    fn from(v: bool) -> Self {
        ParamValue::Bool(v)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl From<String> for ParamValue {
    fn from(v: String) -> Self {
        ParamValue::Text(v)
    }
}

impl From<Vec<f64>> for ParamValue {
    fn from(v: Vec<f64>) -> Self {
        ParamValue::Reals(v)
    }
}

pub type Params = BTreeMap<String, ParamValue>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub params: Params,
    pub max_abs_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub runtime_ms: f64,
}

impl CheckRecord {
    /// Acceptance criterion number, parsed from ids of the form `cNN.name`.
    pub fn criterion(&self) -> Option<u32> {
        self.check_id.strip_prefix('c')?.split('.').next()?.parse().ok()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failed_ids: Vec<String>,
    pub all_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// Sorts the records by id and computes the summary.
    pub fn new(config: RunConfig, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let failed_ids: Vec<String> = records.iter().filter(|r| !r.pass).map(|r| r.check_id.clone()).collect();
        let summary = Summary {
            total: records.len(),
            passed: records.len() - failed_ids.len(),
            failed: failed_ids.len(),
            all_pass: failed_ids.is_empty(),
            failed_ids,
        };
        Report { config, records, summary }
    }

    /// Copy with every runtime zeroed, for byte-level comparisons.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.runtime_ms = 0.0;
        }
        r
    }
}
