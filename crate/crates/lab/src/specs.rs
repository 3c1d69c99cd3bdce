//! Serializable descriptions of core values.

use hormander_core::grid::Generator;
use hormander_core::kernel::Flavor;
use hormander_core::young::LogForm;
use hormander_core::{Grid, GridFunction, HormanderQuery, SeqNorm, YoungFunction};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LogFormSpec {
    #[default]
    OnePlusLogPlus,
    LogOnePlus,
}

impl From<LogFormSpec> for LogForm {
    fn from(f: LogFormSpec) -> Self {
        match f {
            LogFormSpec::OnePlusLogPlus => LogForm::OnePlusLogPlus,
            LogFormSpec::LogOnePlus => LogForm::LogOnePlus,
        }
    }
}

/// `{"variant": "power", "r": 2}` and friends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum YoungSpec {
    Linear,
    Power {
        r: f64,
    },
    #[serde(alias = "powerlog")]
    PowerLog {
        r: f64,
        beta: f64,
        #[serde(default)]
        form: LogFormSpec,
    },
    #[serde(alias = "exppower")]
    ExpPower {
        gamma: f64,
        offset: f64,
    },
    /// `exp(t^{1/(1+k)}) − 1`.
    ExpLogClass {
        k: u32,
    },
    EssSup,
    Table {
        points: Vec<(f64, f64)>,
    },
}

impl YoungSpec {
    pub fn build(&self) -> LabResult<YoungFunction> {
        Ok(match self {
            YoungSpec::Linear => YoungFunction::Linear,
            YoungSpec::Power { r } => YoungFunction::power(*r)?,
            YoungSpec::PowerLog { r, beta, form } => {
                YoungFunction::power_log_with(*r, *beta, (*form).into())?
            }
            YoungSpec::ExpPower { gamma, offset } => YoungFunction::exp_power(*gamma, *offset)?,
            YoungSpec::ExpLogClass { k } => YoungFunction::exp_log_class(*k),
            YoungSpec::EssSup => YoungFunction::EssSup,
            YoungSpec::Table { points } => YoungFunction::table(points)?,
        })
    }
}

/// `ℓ^p` exponent; `"inf"` selects `ℓ^∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Finite(f64),
    Named(InfName),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfName {
    Inf,
}

impl Exponent {
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Named(InfName::Inf) => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SeqNormSpec {
    Lp {
        p: Exponent,
    },
    /// Luxemburg sequence norm; `E` defaults to `t^r log(1+t)^β`.
    Orlicz {
        #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
        e: Option<YoungSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<f64>,
    },
    Counterexample,
}

impl SeqNormSpec {
    pub fn l2() -> Self {
        SeqNormSpec::Lp {
            p: Exponent::Finite(2.0),
        }
    }

    pub fn orlicz_log(r: f64, beta: f64) -> Self {
        SeqNormSpec::Orlicz {
            e: None,
            r: Some(r),
            beta: Some(beta),
        }
    }

    pub fn build(&self) -> LabResult<SeqNorm> {
        Ok(match self {
            SeqNormSpec::Lp { p } => SeqNorm::lp(p.value())?,
            SeqNormSpec::Orlicz { e: Some(e), .. } => SeqNorm::Orlicz(e.build()?),
            SeqNormSpec::Orlicz { e: None, r, beta } => {
                SeqNorm::orlicz_log(r.unwrap_or(2.0), beta.unwrap_or(1.0))?
            }
            SeqNormSpec::Counterexample => SeqNorm::CounterexampleQuadratic,
        })
    }

    /// Short label for case identifiers.
    pub fn label(&self) -> String {
        match self {
            SeqNormSpec::Lp { p } => match p {
                Exponent::Finite(p) => format!("l{p}"),
                Exponent::Named(_) => "linf".into(),
            },
            SeqNormSpec::Orlicz { e: Some(_), .. } => "orlicz".into(),
            SeqNormSpec::Orlicz { r, beta, .. } => {
                format!("orlicz({},{})", r.unwrap_or(2.0), beta.unwrap_or(1.0))
            }
            SeqNormSpec::Counterexample => "counterexample".into(),
        }
    }
}

/// Test-function generators, mirroring [`Generator`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Bump { center: f64, radius: f64 },
    Step { lo: f64, hi: f64 },
    DyadicChirp { radius: f64, bands: u32 },
    Power { exponent: f64, center: f64 },
    LogAbs { center: f64 },
    Oscillating { offset: f64 },
    Constant { value: f64 },
}

impl GeneratorSpec {
    pub fn generator(&self) -> Generator {
        match *self {
            GeneratorSpec::Bump { center, radius } => Generator::Bump { center, radius },
            GeneratorSpec::Step { lo, hi } => Generator::Step { lo, hi },
            GeneratorSpec::DyadicChirp { radius, bands } => {
                Generator::DyadicChirp { radius, bands }
            }
            GeneratorSpec::Power { exponent, center } => Generator::Power { exponent, center },
            GeneratorSpec::LogAbs { center } => Generator::LogAbs { center },
            GeneratorSpec::Oscillating { offset } => Generator::Oscillating { offset },
            GeneratorSpec::Constant { value } => Generator::Constant { value },
        }
    }

    pub fn sample(&self, grid: Grid) -> GridFunction {
        self.generator().sample(grid)
    }

    /// `x ↦ g(x / scale)`.
    pub fn sample_dilated(&self, grid: Grid, scale: f64) -> GridFunction {
        let g = self.generator();
        GridFunction::from_fn(grid, |x| g.value(x / scale))
    }

    pub fn label(&self) -> String {
        match self {
            GeneratorSpec::Bump { center, radius } => format!("bump({center},{radius})"),
            GeneratorSpec::Step { lo, hi } => format!("step({lo},{hi})"),
            GeneratorSpec::DyadicChirp { radius, bands } => format!("chirp({radius},{bands})"),
            GeneratorSpec::Power { exponent, center } => format!("power({exponent},{center})"),
            GeneratorSpec::LogAbs { center } => format!("logabs({center})"),
            GeneratorSpec::Oscillating { offset } => format!("osc({offset})"),
            GeneratorSpec::Constant { value } => format!("const({value})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryKind {
    Plain,
    Dagger,
    FractionalDagger,
    Prop3,
    SAlpha,
}

/// A Hörmander-type query as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    pub flavor: QueryKind,
    pub phi: YoungSpec,
    #[serde(default)]
    pub k: u32,
    #[serde(rename = "X", default = "SeqNormSpec::l2")]
    pub x_norm: SeqNormSpec,
    #[serde(default)]
    pub x: f64,
    #[serde(rename = "R", default = "one")]
    pub r: f64,
    #[serde(default = "default_m_max")]
    pub m_max: u32,
    #[serde(default = "default_c_a")]
    pub c_a: f64,
    #[serde(default)]
    pub alpha: f64,
    /// Level window; defaults to one wide enough for every annulus.
    #[serde(default)]
    pub levels: Option<(i32, i32)>,
    /// Annulus radii for `s_alpha`.
    #[serde(default)]
    pub s: Vec<f64>,
}

fn one() -> f64 {
    1.0
}

fn default_m_max() -> u32 {
    80
}

fn default_c_a() -> f64 {
    HormanderQuery::DEFAULT_C_A
}

impl QuerySpec {
    pub fn query(&self) -> LabResult<HormanderQuery> {
        let flavor = match self.flavor {
            QueryKind::Plain => Flavor::Plain,
            QueryKind::Dagger => Flavor::Dagger,
            QueryKind::FractionalDagger => Flavor::FractionalDagger,
            other => {
                return Err(LabError::Config(format!(
                    "{other:?} is not an annulus query"
                )))
            }
        };
        Ok(HormanderQuery::new(
            self.phi.build()?,
            self.k,
            self.x_norm.build()?,
            self.x,
            self.r,
            self.m_max,
            flavor,
        )
        .with_c_a(self.c_a))
    }

    /// Window covering every level that meets an annulus `m ≤ m_max`.
    pub fn window(&self) -> (i32, i32) {
        self.levels.unwrap_or_else(|| {
            let i = self.r.log2().floor() as i32;
            (i - 4, i + self.m_max as i32 + 4)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn young_json_round_trip() {
        let s: YoungSpec =
            serde_json::from_str(r#"{"variant":"powerlog","r":1,"beta":2}"#).unwrap();
        assert_eq!(
            s,
            YoungSpec::PowerLog {
                r: 1.0,
                beta: 2.0,
                form: LogFormSpec::OnePlusLogPlus
            }
        );
        let back: YoungSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(
            serde_json::from_str::<YoungSpec>(r#"{"variant":"power","r":0.5}"#)
                .unwrap()
                .build()
                .is_err()
        );
    }

    #[test]
    fn seqnorm_json() {
        let s: SeqNormSpec = serde_json::from_str(r#"{"variant":"lp","p":"inf"}"#).unwrap();
        assert_eq!(s.build().unwrap(), SeqNorm::Lp(f64::INFINITY));
        let o: SeqNormSpec =
            serde_json::from_str(r#"{"variant":"orlicz","E":{"variant":"power","r":2}}"#).unwrap();
        assert!(matches!(o.build().unwrap(), SeqNorm::Orlicz(_)));
    }

    #[test]
    fn query_defaults() {
        let q: QuerySpec = serde_json::from_str(
            r#"{"flavor":"dagger","phi":{"variant":"exp_log_class","k":0},"x":0.5,"R":4}"#,
        )
        .unwrap();
        assert_eq!(q.m_max, 80);
        assert_eq!(q.window(), (-2, 86));
        assert!(q.query().is_ok());
    }
}
