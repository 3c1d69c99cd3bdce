//! Two-sided pointwise comparison of `M_{L(log L)^k}` with `M^{k+1}`.

use hormander_core::maximal::{iterated_maximal, orlicz_maximal};
use hormander_core::YoungFunction;

use super::*;

const SUITE: &str = "comparability";

pub const ORDERS: [u32; 2] = [1, 2];

/// `(min, max)` over the core cells of `M_{L(log L)^k} f / M^{k+1} f`.
pub fn comparison_range(f: &GridFunction, k: u32, family: &BallFamily) -> LabResult<(f64, f64)> {
    let orlicz = orlicz_maximal(f, &YoungFunction::power_log(1.0, f64::from(k))?, family);
    let iterated = iterated_maximal(f, k + 1, family)?;
    let top = iterated.max_abs();
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for c in f.grid().core_cells() {
        let d = iterated.samples()[c];
        if d > 1e-12 * top {
            let r = orlicz.samples()[c] / d;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    Ok((lo, hi))
}

pub fn comparability_suite(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let grid = cfg.aux_grid.grid()?;
    let family = cfg.family();
    for k in ORDERS {
        let group = format!("k={k}");
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for gen in &cfg.battery {
            for &j in &cfg.aux_dilations {
                let scale = scale_of(j);
                let f = gen.sample_dilated(grid, scale);
                if f.max_abs() == 0.0 {
                    continue;
                }
                let (a, b) = comparison_range(&f, k, &family)?;
                lo = lo.min(a);
                hi = hi.max(b);
                report.cases.push(row(
                    SUITE,
                    group.clone(),
                    gen.label(),
                    scale,
                    &[("lower", a), ("upper", b)],
                ));
            }
        }
        report.constant(format!("{group}/lower"), lo);
        report.constant(format!("{group}/upper"), hi);
        report.gate(
            format!("two_sided:{group}"),
            lo > 0.0 && hi.is_finite(),
            format!("{lo:.4} ≤ M_(L log^{k} L) f / M^{} f ≤ {hi:.4}", k + 1),
        );
    }
    Ok(report)
}
