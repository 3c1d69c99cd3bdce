//! Experiment suites. Each returns an [`ExperimentReport`] with per-case
//! rows, regression constants and pass/fail gates.

use std::collections::BTreeMap;

use hormander_core::weights::{ap_constant, BmoFunction, Weight};
use hormander_core::{BallFamily, Grid, GridFunction, SeqNorm};

use crate::config::ExperimentConfig;
use crate::error::{LabError, LabResult};
use crate::report::{CaseRow, ExperimentReport};

pub mod coifman;
pub mod comparability;
pub mod fractional;
pub mod gap;
pub mod kolmogorov;
pub mod sharp;
pub mod weak_type;

pub const SUITES: [&str; 7] = [
    "coifman",
    "sharp",
    "weak_type",
    "gap",
    "fractional",
    "comparability",
    "kolmogorov",
];

/// Largest tolerated max/min ratio of a quantity across a dilation sweep.
pub const DRIFT_LIMIT: f64 = 2.0;
/// Relative tolerance of the homogeneity checks.
pub const HOMOGENEITY_TOL: f64 = 1e-10;
/// Multiplier used by the homogeneity checks.
pub const TRANSLATION_TOL: f64 = 1e-12;
pub const HOMOGENEITY_FACTOR: f64 = 3.7;

pub fn run(name: &str, cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    match name {
        "coifman" => coifman::coifman_suite(cfg),
        "sharp" => sharp::sharp_suite(cfg),
        "weak_type" | "weak" => weak_type::weak_type_suite(cfg),
        "gap" => gap::gap_probe(cfg),
        "fractional" => fractional::fractional_suite(cfg),
        "comparability" => comparability::comparability_suite(cfg),
        "kolmogorov" => kolmogorov::kolmogorov_suite(cfg),
        other => Err(LabError::Config(format!(
            "unknown suite `{other}` (expected one of {})",
            SUITES.join(", ")
        ))),
    }
}

/// `h Σ g^p w`.
pub(crate) fn weighted_power(g: &[f64], w: &[f64], p: f64, h: f64) -> f64 {
    h * g.iter().zip(w).map(|(a, b)| a.powf(p) * b).sum::<f64>()
}

/// Weights of the battery that pass the `A_2` surrogate gate, as
/// `(label, samples)`. Rejected weights are noted in the report.
pub(crate) fn admitted_weights(
    cfg: &ExperimentConfig,
    grid: Grid,
    report: &mut ExperimentReport,
) -> LabResult<Vec<(String, Vec<f64>)>> {
    let mut out = Vec::new();
    for spec in &cfg.weights {
        let w = spec.generator().sample(grid);
        let weight = Weight::new(w.clone())?;
        let c = ap_constant(&weight, 2.0, &BallFamily::coarse())?.constant;
        if c.is_finite() && c <= cfg.weight_gate {
            out.push((spec.label(), w.into_samples()));
        } else {
            report.notes.push(format!(
                "weight {} rejected: A_2 surrogate {c:.3e}",
                spec.label()
            ));
        }
    }
    let admitted = out.len();
    report.gate(
        "weights_admitted",
        admitted > 0,
        format!(
            "{admitted} of {} weights pass the A_2 surrogate gate",
            cfg.weights.len()
        ),
    );
    Ok(out)
}

pub(crate) fn x_norms(cfg: &ExperimentConfig) -> LabResult<Vec<(String, SeqNorm)>> {
    cfg.x_norms
        .iter()
        .map(|x| Ok((x.label(), x.build()?)))
        .collect()
}

pub(crate) fn symbol(cfg: &ExperimentConfig, grid: Grid) -> BmoFunction {
    BmoFunction::new(cfg.symbol.sample(grid), &BallFamily::coarse())
}

pub(crate) fn scale_of(j: i32) -> f64 {
    2f64.powi(j)
}

pub(crate) fn row(
    suite: &str,
    group: String,
    case: String,
    scale: f64,
    values: &[(&str, f64)],
) -> CaseRow {
    CaseRow {
        suite: suite.into(),
        group,
        case,
        scale,
        values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

/// Per group: the sup of `key` over cases at each scale.
pub(crate) fn sup_by_group_and_scale(
    rows: &[CaseRow],
    key: &str,
) -> BTreeMap<String, BTreeMap<u64, f64>> {
    let mut out: BTreeMap<String, BTreeMap<u64, f64>> = BTreeMap::new();
    for r in rows {
        if let Some(&v) = r.values.get(key) {
            let slot = out
                .entry(r.group.clone())
                .or_default()
                .entry(r.scale.to_bits())
                .or_insert(f64::NEG_INFINITY);
            *slot = slot.max(v);
        }
    }
    out
}

/// `max/min` of positive values; infinite if some value is not positive.
pub(crate) fn spread(values: impl IntoIterator<Item = f64>) -> f64 {
    let (lo, hi) = values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if lo > 0.0 && hi.is_finite() {
        hi / lo
    } else if hi == lo {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Records `group/sup_<key>` constants and adds one finiteness gate per
/// group, plus a dilation-drift gate when a limit is given.
pub(crate) fn summarize_groups(report: &mut ExperimentReport, key: &str, drift_limit: Option<f64>) {
    let table = sup_by_group_and_scale(&report.cases, key);
    for (group, by_scale) in table {
        let sup = by_scale.values().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
        let drift = spread(by_scale.values().copied());
        report.constant(format!("{group}/sup_{key}"), sup);
        report.gate(
            format!("finite:{group}"),
            sup.is_finite() && sup >= 0.0,
            format!("sup {key} = {sup:.6e}"),
        );
        if let Some(limit) = drift_limit {
            report.gate(
                format!("drift:{group}"),
                drift <= limit,
                format!("max/min of sup {key} over scales = {drift:.4} (limit {limit})"),
            );
        }
    }
}

pub(crate) fn relative_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Cells `[first, last]` holding nonzero samples.
pub(crate) fn support_cells(f: &GridFunction) -> Option<(usize, usize)> {
    let s = f.samples();
    let first = s.iter().position(|&v| v != 0.0)?;
    let last = s.iter().rposition(|&v| v != 0.0)?;
    Some((first, last))
}
