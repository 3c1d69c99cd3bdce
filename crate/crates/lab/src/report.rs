//! Experiment reports, the regression store and plot-data emission.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, LabResult};

/// One evaluated case of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub suite: String,
    /// Aggregation key, e.g. `k=0/X=l2/p=2`.
    pub group: String,
    pub case: String,
    pub scale: f64,
    pub values: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct ExperimentReport {
    pub suite: String,
    pub config_hash: String,
    pub seed: u64,
    pub cases: Vec<CaseRow>,
    /// Regression-tracked constants, keyed `suite/group/name`.
    pub constants: BTreeMap<String, f64>,
    pub trajectories: Vec<Trajectory>,
    pub gates: Vec<Gate>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(suite: &str, config_hash: String, seed: u64) -> Self {
        ExperimentReport {
            suite: suite.into(),
            config_hash,
            seed,
            ..Default::default()
        }
    }

    pub fn gate(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.gates.push(Gate {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.gates.iter().all(|g| g.passed)
    }

    pub fn gate_named(&self, name: &str) -> Option<&Gate> {
        self.gates.iter().find(|g| g.name == name)
    }

    pub fn constant(&mut self, key: impl Into<String>, value: f64) {
        self.constants
            .insert(format!("{}/{}", self.suite, key.into()), value);
    }

    pub fn to_json(&self) -> LabResult<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn load(path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> LabResult<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| LabError::io(path, e))
    }

    /// Concatenates cases, trajectories, gates and notes; constants are
    /// merged by key.
    pub fn merge(reports: &[ExperimentReport]) -> ExperimentReport {
        let mut out = ExperimentReport {
            suite: reports
                .iter()
                .map(|r| r.suite.as_str())
                .collect::<Vec<_>>()
                .join("+"),
            config_hash: reports
                .iter()
                .map(|r| r.config_hash.as_str())
                .collect::<Vec<_>>()
                .join("+"),
            seed: reports.first().map_or(0, |r| r.seed),
            ..Default::default()
        };
        for r in reports {
            out.cases.extend(r.cases.iter().cloned());
            out.constants
                .extend(r.constants.iter().map(|(k, v)| (k.clone(), *v)));
            out.trajectories.extend(r.trajectories.iter().cloned());
            out.gates.extend(r.gates.iter().cloned());
            out.notes.extend(r.notes.iter().cloned());
        }
        out
    }

    /// Long-format plot data: `suite,group,case,scale,quantity,value`.
    pub fn write_cases_csv(&self, out: impl Write) -> LabResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| LabError::Config(format!("csv output: {e}"));
        w.write_record(["suite", "group", "case", "scale", "quantity", "value"])
            .map_err(err)?;
        for c in &self.cases {
            for (q, v) in &c.values {
                w.write_record([
                    c.suite.as_str(),
                    c.group.as_str(),
                    c.case.as_str(),
                    &c.scale.to_string(),
                    q.as_str(),
                    &v.to_string(),
                ])
                .map_err(err)?;
            }
        }
        w.flush().map_err(|e| LabError::io("<output>", e))?;
        Ok(())
    }

    /// `trajectory,x,y` rows.
    pub fn write_trajectories_csv(&self, out: impl Write) -> LabResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| LabError::Config(format!("csv output: {e}"));
        w.write_record(["trajectory", "x", "y"]).map_err(err)?;
        for t in &self.trajectories {
            for (x, y) in &t.points {
                w.write_record([t.name.as_str(), &x.to_string(), &y.to_string()])
                    .map_err(err)?;
            }
        }
        w.flush().map_err(|e| LabError::io("<output>", e))?;
        Ok(())
    }
}

/// Stored empirical constants, compared with a relative tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionStore {
    pub tolerance: f64,
    pub entries: BTreeMap<String, f64>,
}

impl Default for RegressionStore {
    fn default() -> Self {
        RegressionStore {
            tolerance: 0.1,
            entries: BTreeMap::new(),
        }
    }
}

/// Outcome of comparing one constant with the store.
#[derive(Debug, Clone, PartialEq)]
pub enum RegressionCheck {
    Within { stored: f64, value: f64 },
    Drifted { stored: f64, value: f64 },
    Missing { value: f64 },
}

impl RegressionCheck {
    pub fn passed(&self) -> bool {
        matches!(self, RegressionCheck::Within { .. })
    }
}

impl RegressionStore {
    pub fn load(path: &Path) -> LabResult<Self> {
        if !path.exists() {
            return Ok(Self::default());
        }
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> LabResult<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|e| LabError::io(path, e))
    }

    pub fn check(&self, key: &str, value: f64) -> RegressionCheck {
        match self.entries.get(key) {
            None => RegressionCheck::Missing { value },
            Some(&stored) => {
                let rel = (value - stored).abs() / stored.abs().max(f64::MIN_POSITIVE);
                if rel <= self.tolerance || value == stored {
                    RegressionCheck::Within { stored, value }
                } else {
                    RegressionCheck::Drifted { stored, value }
                }
            }
        }
    }

    pub fn record(&mut self, report: &ExperimentReport) {
        self.entries
            .extend(report.constants.iter().map(|(k, v)| (k.clone(), *v)));
    }

    /// Adds one gate per stored constant of the report; constants without a
    /// stored value are listed in the notes.
    pub fn gate_report(&self, report: &mut ExperimentReport) {
        let checks: Vec<(String, RegressionCheck)> = report
            .constants
            .iter()
            .map(|(k, &v)| (k.clone(), self.check(k, v)))
            .collect();
        for (key, check) in checks {
            let detail = match &check {
                RegressionCheck::Within { stored, value } => {
                    format!("{value:.6e} vs stored {stored:.6e}")
                }
                RegressionCheck::Drifted { stored, value } => {
                    format!("{value:.6e} drifted from stored {stored:.6e}")
                }
                RegressionCheck::Missing { value } => {
                    report
                        .notes
                        .push(format!("regression:{key}: {value:.6e} has no stored value"));
                    continue;
                }
            };
            report.gate(format!("regression:{key}"), check.passed(), detail);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_counts_rows() {
        let mut a = ExperimentReport::new("a", "h1".into(), 0);
        let mut b = ExperimentReport::new("b", "h2".into(), 0);
        for (r, n) in [(&mut a, 3), (&mut b, 5)] {
            for i in 0..n {
                r.cases.push(CaseRow {
                    suite: r.suite.clone(),
                    group: "g".into(),
                    case: format!("{i}"),
                    scale: 1.0,
                    values: BTreeMap::new(),
                });
            }
        }
        assert_eq!(ExperimentReport::merge(&[a, b]).cases.len(), 8);
    }

    #[test]
    fn regression_tolerance() {
        let mut s = RegressionStore::default();
        s.entries.insert("x".into(), 1.0);
        assert!(s.check("x", 1.09).passed());
        assert!(!s.check("x", 1.11).passed());
        assert!(!s.check("y", 1.0).passed());
    }
}
