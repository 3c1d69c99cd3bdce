//! Kolmogorov-type ratios of the square operator on compactly supported
//! inputs.

use hormander_core::operator::kolmogorov_check;
use hormander_core::{Interval, OperatorSpec};

use super::*;

const SUITE: &str = "kolmogorov";

/// Radius of the outer ball relative to the support ball.
pub const OUTER_FACTOR: f64 = 2.0;

pub fn kolmogorov_suite(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let grid = cfg.aux_grid.grid()?;
    let h = grid.step();
    let base = OperatorSpec::square(cfg.aux_levels.0, cfg.aux_levels.1)?;
    for (xl, x) in x_norms(cfg)? {
        let spec = base.with_x_norm(x)?;
        let group = format!("X={xl}");
        for gen in &cfg.battery {
            for &j in &cfg.aux_dilations {
                let scale = scale_of(j);
                let f = gen.sample_dilated(grid, scale);
                let Some((first, last)) = support_cells(&f) else {
                    report
                        .notes
                        .push(format!("{} at scale {scale}: f ≡ 0, skipped", gen.label()));
                    continue;
                };
                let lo = grid.x(first) - 0.5 * h;
                let hi = grid.x(last) + 0.5 * h;
                let inner = Interval::from_endpoints(lo, hi)?;
                let outer = inner.dilate(OUTER_FACTOR);
                let rep = kolmogorov_check(&spec, &f, &outer, &inner, cfg.epsilon)?;
                report.cases.push(row(
                    SUITE,
                    group.clone(),
                    gen.label(),
                    scale,
                    &[("ratio", rep.ratio)],
                ));
            }
        }
    }
    summarize_groups(&mut report, "ratio", Some(DRIFT_LIMIT));
    Ok(report)
}
