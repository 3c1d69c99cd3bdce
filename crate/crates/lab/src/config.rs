//! Experiment configuration, read from JSON or TOML.

use std::path::Path;

use hormander_core::{BallFamily, Grid};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{LabError, LabResult};
use crate::specs::{GeneratorSpec, SeqNormSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_len: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn grid(&self) -> LabResult<Grid> {
        Ok(Grid::new(self.half_len, self.n)?)
    }
}

/// A weight of the battery.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    /// `|x|^a`
    Power { a: f64 },
    /// `offset + sin x`
    Oscillating { offset: f64 },
}

impl WeightSpec {
    pub fn generator(&self) -> GeneratorSpec {
        match *self {
            WeightSpec::Power { a } => GeneratorSpec::Power {
                exponent: a,
                center: 0.0,
            },
            WeightSpec::Oscillating { offset } => GeneratorSpec::Oscillating { offset },
        }
    }

    pub fn label(&self) -> String {
        match self {
            WeightSpec::Power { a } => format!("|x|^{a}"),
            WeightSpec::Oscillating { offset } => format!("{offset}+sin"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Sweep {
    /// Geometric points from `min` to `max`.
    pub fn points(&self) -> Vec<f64> {
        if self.count <= 1 {
            return vec![self.min];
        }
        let ratio = (self.max / self.min).ln() / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| self.min * (ratio * i as f64).exp())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FractionalConfig {
    pub grid: GridSpec,
    pub levels: (i32, i32),
    pub alphas: Vec<f64>,
    pub k: Vec<u32>,
    pub p: Vec<f64>,
    /// `p` of the `(p, q)` surrogate; `q` follows from `1/q = 1/p − α`.
    pub pq_p: f64,
    pub pq_weights: Vec<f64>,
    pub dilations: Vec<i32>,
    /// Radii `s = 2^j` for the size condition.
    pub size_doublings: (i32, i32),
    pub size_levels: (i32, i32),
    /// Small order used for the `α → 0` comparison.
    pub alpha_small: f64,
}

impl Default for FractionalConfig {
    fn default() -> Self {
        FractionalConfig {
            grid: GridSpec {
                half_len: 128.0,
                n: 4096,
            },
            levels: (-3, 6),
            alphas: vec![0.25, 0.5],
            k: vec![0, 1],
            p: vec![1.0, 2.0],
            pq_p: 1.5,
            pq_weights: vec![-0.1, 0.0, 0.2],
            dilations: vec![-1, 0, 1, 2],
            size_doublings: (0, 10),
            size_levels: (-6, 60),
            alpha_small: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GapConfig {
    pub k: Vec<u32>,
    pub x: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub windows: Vec<(i32, i32)>,
    pub m_max: u32,
    /// `m_max` at which the Cauchy tail of the dagger trajectory starts.
    pub cauchy_from: u32,
    /// `ε` of the comparison class `A_ε`.
    pub epsilon: f64,
    /// Doubling windows on which `A_ε` is followed.
    pub eps_windows: Vec<(i32, i32)>,
}

impl Default for GapConfig {
    fn default() -> Self {
        GapConfig {
            k: vec![0, 1, 2],
            x: 0.8,
            r: 4.0,
            windows: vec![(-5, 5), (-10, 10), (-15, 15), (-20, 20)],
            m_max: 80,
            cauchy_from: 60,
            epsilon: 0.5,
            eps_windows: vec![(-10, 10), (-20, 20), (-40, 40), (-80, 80)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub grid: GridSpec,
    pub levels: (i32, i32),
    /// Radii per octave of the ball ladder.
    pub per_octave: u32,
    pub battery: Vec<GeneratorSpec>,
    /// Dilation exponents `j` for scales `2^j`.
    pub dilations: Vec<i32>,
    /// Base scale of the battery on the main grid; the sweep runs over
    /// `battery_scale · 2^j`.
    pub battery_scale: f64,
    /// Smaller grid for the pointwise, weak-type and comparison suites.
    pub aux_grid: GridSpec,
    pub aux_levels: (i32, i32),
    pub aux_dilations: Vec<i32>,
    pub weights: Vec<WeightSpec>,
    /// Largest admissible `A_2` surrogate constant for a weight.
    pub weight_gate: f64,
    pub p: Vec<f64>,
    pub k: Vec<u32>,
    pub x_norms: Vec<SeqNormSpec>,
    pub symbol: GeneratorSpec,
    pub delta: f64,
    pub epsilon: f64,
    /// `λ` sweep relative to `‖f‖_∞`.
    pub lambda: Sweep,
    pub fractional: FractionalConfig,
    pub gap: GapConfig,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            grid: GridSpec {
                half_len: 1024.0,
                n: 1 << 16,
            },
            levels: (-4, 14),
            per_octave: 4,
            battery: vec![
                GeneratorSpec::Bump {
                    center: 0.3,
                    radius: 1.0,
                },
                GeneratorSpec::Step { lo: 0.0, hi: 1.0 },
                GeneratorSpec::DyadicChirp {
                    radius: 2.0,
                    bands: 3,
                },
            ],
            dilations: vec![-3, -2, -1, 0, 1, 2, 3],
            battery_scale: 1.0,
            aux_grid: GridSpec {
                half_len: 256.0,
                n: 1 << 14,
            },
            aux_levels: (-4, 10),
            aux_dilations: vec![-2, -1, 0, 1, 2],
            weights: vec![
                WeightSpec::Power { a: -0.5 },
                WeightSpec::Power { a: 0.0 },
                WeightSpec::Power { a: 0.5 },
                WeightSpec::Oscillating { offset: 1.5 },
            ],
            weight_gate: 100.0,
            p: vec![0.5, 1.0, 2.0],
            k: vec![0, 1],
            x_norms: vec![SeqNormSpec::l2(), SeqNormSpec::orlicz_log(2.0, 1.0)],
            symbol: GeneratorSpec::LogAbs { center: 0.0 },
            delta: 1.0 / 3.0,
            epsilon: 0.5,
            lambda: Sweep {
                min: 1e-3,
                max: 1e3,
                count: 25,
            },
            fractional: FractionalConfig::default(),
            gap: GapConfig::default(),
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        let cfg: ExperimentConfig = match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text)?,
            _ => serde_json::from_str(&text)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> LabResult<()> {
        let bad = |m: String| Err(LabError::Config(m));
        if !(0.0 < self.delta && self.delta < self.epsilon && self.epsilon < 1.0) {
            return bad(format!(
                "need 0 < δ < ε < 1, got δ = {}, ε = {}",
                self.delta, self.epsilon
            ));
        }
        if !(self.battery_scale.is_finite() && self.battery_scale > 0.0) {
            return bad(format!(
                "battery_scale must be positive, got {}",
                self.battery_scale
            ));
        }
        if self.battery.is_empty() {
            return bad("the function battery is empty".into());
        }
        if self.weights.is_empty() {
            return bad("the weight battery is empty".into());
        }
        if self.p.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            return bad("exponents p must be positive and finite".into());
        }
        if self.levels.0 > self.levels.1 {
            return bad("empty level window".into());
        }
        if self.x_norms.is_empty() {
            return bad("no sequence norm given".into());
        }
        if !(self.lambda.min > 0.0 && self.lambda.max >= self.lambda.min && self.lambda.count >= 1)
        {
            return bad("invalid λ sweep".into());
        }
        let f = &self.fractional;
        if f.alphas.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
            return bad("fractional orders must lie in (0, 1)".into());
        }
        if f.alphas.iter().any(|&a| 1.0 / f.pq_p - a <= 0.0) {
            return bad("1/p − α must be positive for the (p, q) surrogate".into());
        }
        self.grid.grid()?;
        self.aux_grid.grid()?;
        f.grid.grid()?;
        Ok(())
    }

    pub fn family(&self) -> BallFamily {
        BallFamily::ladder(self.per_octave)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).unwrap_or_default();
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_hash_is_stable() {
        let c = ExperimentConfig::default();
        c.validate().unwrap();
        assert_eq!(c.hash(), ExperimentConfig::default().hash());
        let mut d = c.clone();
        d.seed = 1;
        assert_ne!(c.hash(), d.hash());
    }

    #[test]
    fn toml_partial_config() {
        let c: ExperimentConfig =
            toml::from_str("per_octave = 8\ndelta = 0.25\n[grid]\nhalf_len = 64.0\nn = 2048\n")
                .unwrap();
        assert_eq!(c.per_octave, 8);
        assert_eq!(c.grid.n, 2048);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_exponents() {
        let c = ExperimentConfig {
            delta: 0.6,
            ..ExperimentConfig::default()
        };
        assert!(c.validate().is_err());
    }
}
