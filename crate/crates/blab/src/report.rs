//! Report containers for empirical estimates.
//!
//! Every comparability claim in this crate comes out as an [`EstimateReport`]:
//! the sampled ratio values with their min, max and spread, plus a refinement
//! history showing how the extremes move as grids get finer. Run-level output
//! keeps the deterministic body separate from the timestamp so byte-identical
//! reruns can be checked by comparing bodies.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::Write;

/// One sampled value; `xi` is present for two-point quantities.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SamplePoint {
    pub z: (f64, f64),
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub xi: Option<(f64, f64)>,
    pub value: f64,
}

impl SamplePoint {
    pub fn one(z: crate::Point, value: f64) -> SamplePoint {
        SamplePoint { z: (z.re, z.im), xi: None, value }
    }

    pub fn pair(z: crate::Point, xi: crate::Point, value: f64) -> SamplePoint {
        SamplePoint { z: (z.re, z.im), xi: Some((xi.re, xi.im)), value }
    }
}

/// Extremes after one refinement of whatever grid produced the estimate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RefinementStep {
    pub label: String,
    pub min: f64,
    pub max: f64,
}

/// Empirical two-sided bound for a ratio-type quantity.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EstimateReport {
    pub quantity: String,
    pub samples: Vec<SamplePoint>,
    pub min: f64,
    pub max: f64,
    /// `max/min`; the empirical comparability constant.
    pub spread: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refinement: Vec<RefinementStep>,
}

impl EstimateReport {
    pub fn from_samples(quantity: impl Into<String>, samples: Vec<SamplePoint>) -> Result<Self> {
        let quantity = quantity.into();
        if samples.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for s in &samples {
            if !s.value.is_finite() {
                return Err(Error::NonFinite { re: s.z.0, im: s.z.1 });
            }
            min = min.min(s.value);
            max = max.max(s.value);
        }
        let spread = if min > 0.0 { max / min } else { f64::INFINITY };
        Ok(EstimateReport { quantity, samples, min, max, spread, refinement: Vec::new() })
    }

    /// Records the extremes under one refinement step.
    pub fn push_refinement(&mut self, label: impl Into<String>, min: f64, max: f64) {
        self.refinement.push(RefinementStep { label: label.into(), min, max });
    }

    /// Largest relative movement of either extreme across the refinement
    /// history (0 when there is none).
    pub fn drift(&self) -> f64 {
        let mut d = 0.0f64;
        let (mut min, mut max) = (self.min, self.max);
        for step in &self.refinement {
            d = d.max((step.min - min).abs() / min.abs().max(f64::MIN_POSITIVE));
            d = d.max((step.max - max).abs() / max.abs().max(f64::MIN_POSITIVE));
            min = step.min;
            max = step.max;
        }
        d
    }

    /// CSV twin of the JSON report: `re,im,xi_re,xi_im,value` with blank
    /// two-point columns for one-point samples.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "re,im,xi_re,xi_im,value")?;
        for s in &self.samples {
            match s.xi {
                Some((xr, xi)) => {
                    writeln!(out, "{},{},{},{},{}", s.z.0, s.z.1, xr, xi, s.value)?
                }
                None => writeln!(out, "{},{},,,{}", s.z.0, s.z.1, s.value)?,
            }
        }
        Ok(())
    }
}

/// Pass/fail record for one named check in a run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub details: serde_json::Value,
}

/// Deterministic run payload; identical inputs, environment, and seed must
/// produce an identical serialization.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunBody {
    pub label: String,
    pub seed: u64,
    #[serde(default = "default_precision")]
    pub precision: String,
    /// echo of the effective configuration, so the report stands alone
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub config: serde_json::Value,
    pub checks: Vec<CheckOutcome>,
}

fn default_precision() -> String {
    "double".into()
}

impl RunBody {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Full run report; only `timestamp` and `timings` may differ between
/// identical reruns, so both live outside the body.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub timestamp: String,
    /// wall-clock seconds per check, in execution order
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<(String, f64)>,
    pub body: RunBody,
}

impl RunReport {
    pub fn new(body: RunBody) -> RunReport {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunReport { timestamp: format!("unix:{secs}"), timings: Vec::new(), body }
    }

    pub fn with_timings(mut self, timings: Vec<(String, f64)>) -> RunReport {
        self.timings = timings;
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Serialization of the deterministic part only.
    pub fn body_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.body)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Point;

    fn demo() -> EstimateReport {
        EstimateReport::from_samples(
            "demo-ratio",
            vec![
                SamplePoint::one(Point::new(0.1, 0.0), 2.0),
                SamplePoint::pair(Point::new(0.5, 0.0), Point::new(0.4, 0.1), 8.0),
                SamplePoint::one(Point::new(0.9, 0.0), 4.0),
            ],
        )
        .expect("valid samples")
    }

    #[test]
    fn extremes_and_spread() {
        let r = demo();
        assert_eq!(r.min, 2.0);
        assert_eq!(r.max, 8.0);
        assert_eq!(r.spread, 4.0);
    }

    #[test]
    fn empty_and_non_finite_are_rejected() {
        assert!(matches!(
            EstimateReport::from_samples("x", vec![]),
            Err(Error::EmptyRegion)
        ));
        let bad = vec![SamplePoint::one(Point::new(0.0, 0.0), f64::NAN)];
        assert!(matches!(
            EstimateReport::from_samples("x", bad),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn drift_tracks_the_refinement_history() {
        let mut r = demo();
        assert_eq!(r.drift(), 0.0);
        r.push_refinement("panels x2", 2.1, 8.0);
        r.push_refinement("panels x4", 2.1, 8.2);
        let want: f64 = (0.1f64 / 2.0).max(0.2 / 8.0);
        approx::assert_relative_eq!(r.drift(), want);
    }

    #[test]
    fn csv_shape() {
        let r = demo();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).expect("write");
        let text = String::from_utf8(buf).expect("utf8");
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "re,im,xi_re,xi_im,value");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].contains(",,,"), "one-point rows leave xi blank");
        assert!(lines[2].starts_with("0.5,0,0.4,0.1,"));
    }

    #[test]
    fn json_round_trip_keeps_samples() {
        let r = demo();
        let json = serde_json::to_string(&r).expect("serialize");
        let back: EstimateReport = serde_json::from_str(&json).expect("deserialize");
        assert_eq!(back, r);
    }

    #[test]
    fn run_body_is_deterministic_and_timestamp_lives_outside() {
        let body = RunBody {
            label: "suite".into(),
            seed: 7,
            precision: "double".into(),
            config: serde_json::json!({"seed": 7}),
            checks: vec![CheckOutcome {
                name: "mass".into(),
                passed: true,
                details: serde_json::json!({"got": 0.9801}),
            }],
        };
        let a = RunReport::new(body.clone());
        let b = RunReport::new(body);
        assert_eq!(a.body_json().expect("json"), b.body_json().expect("json"));
        assert!(a.body.all_passed());
    }

    #[test]
    fn one_failed_check_fails_the_whole_body() {
        let ok = CheckOutcome { name: "a".into(), passed: true, details: serde_json::json!({}) };
        let bad = CheckOutcome { name: "b".into(), passed: false, details: serde_json::json!({}) };
        let body = RunBody {
            label: "x".into(),
            seed: 0,
            precision: "double".into(),
            config: serde_json::Value::Null,
            checks: vec![ok, bad],
        };
        assert!(!body.all_passed());
    }
}
