//! Pointwise control of `M^#_δ(‖T_b^k f‖_X)`.

use hormander_core::maximal::{maximal_delta, orlicz_maximal, sharp_maximal_delta};
use hormander_core::operator::{apply_commutator, pointwise_norm};
use hormander_core::weights::BmoFunction;
use hormander_core::{
    BallFamily, DyadicKernel, GridFunction, OperatorSpec, SeqNorm, YoungFunction,
};

use super::*;

const SUITE: &str = "sharp";

/// Sup over the core cells of `M^#_δ(‖T_b^k f‖_X) / RHS` where
/// `RHS = Σ_{j<k} ‖b‖^{k−j} M_ε(‖T_b^j f‖_X) + ‖b‖^k M_Ā f`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn sharp_ratio(
    f: &GridFunction,
    k: u32,
    b: &BmoFunction,
    levels: (i32, i32),
    x: &SeqNorm,
    delta: f64,
    eps: f64,
    family: &BallFamily,
) -> LabResult<f64> {
    let kernel = DyadicKernel::square(levels.0, levels.1)?;
    let norm_of = |j: u32| -> LabResult<GridFunction> {
        let spec = OperatorSpec::new(kernel, x.clone(), j, (j > 0).then(|| b.clone()))?;
        Ok(pointwise_norm(&apply_commutator(&spec, f)?, x))
    };
    let lhs = sharp_maximal_delta(&norm_of(k)?, delta, family)?;
    let bn = b.norm();
    let abar = YoungFunction::power_log(1.0, f64::from(k + 1))?;
    let mut rhs = orlicz_maximal(f, &abar, family).scale(bn.powi(k as i32));
    for j in 0..k {
        let term = maximal_delta(&norm_of(j)?, eps, family)?;
        rhs = rhs.zip_with(&term, |a, t| a + bn.powi((k - j) as i32) * t)?;
    }
    let top = rhs.max_abs();
    let mut sup = 0.0f64;
    for c in f.grid().core_cells() {
        let r = rhs.samples()[c];
        if r > 1e-300 && r > 1e-14 * top {
            sup = sup.max(lhs.samples()[c] / r);
        }
    }
    Ok(sup)
}

pub fn sharp_suite(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let grid = cfg.aux_grid.grid()?;
    let family = cfg.family();
    let norms = x_norms(cfg)?;
    let b = symbol(cfg, grid);
    let mut homogeneity = 0.0f64;
    for &k in &cfg.k {
        for (xl, x) in &norms {
            let group = format!("k={k}/X={xl}");
            for (gi, gen) in cfg.battery.iter().enumerate() {
                for &j in &cfg.aux_dilations {
                    let s = scale_of(j);
                    let f = gen.sample_dilated(grid, s);
                    if f.max_abs() == 0.0 {
                        report
                            .notes
                            .push(format!("{} at scale {s}: f ≡ 0, skipped", gen.label()));
                        continue;
                    }
                    let r = sharp_ratio(
                        &f,
                        k,
                        &b,
                        cfg.aux_levels,
                        x,
                        cfg.delta,
                        cfg.epsilon,
                        &family,
                    )?;
                    report
                        .cases
                        .push(row(SUITE, group.clone(), gen.label(), s, &[("ratio", r)]));
                    if gi == 0 && j == 0 {
                        let scaled = f.scale(HOMOGENEITY_FACTOR);
                        let rs = sharp_ratio(
                            &scaled,
                            k,
                            &b,
                            cfg.aux_levels,
                            x,
                            cfg.delta,
                            cfg.epsilon,
                            &family,
                        )?;
                        homogeneity = homogeneity.max(relative_gap(r, rs));
                    }
                }
            }
        }
    }
    summarize_groups(&mut report, "ratio", Some(DRIFT_LIMIT));
    report.gate(
        "homogeneity",
        homogeneity <= HOMOGENEITY_TOL,
        format!("largest relative change under f ↦ {HOMOGENEITY_FACTOR}f: {homogeneity:.3e}"),
    );
    Ok(report)
}
