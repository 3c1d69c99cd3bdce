//! Modular weak-type endpoint:
//! `w{‖T_b^k f‖_X > λ} ≤ C ∫ Ā(‖b‖^k |f| / λ) Mw`.

use hormander_core::maximal::hl_maximal;
use hormander_core::operator::{apply_commutator, pointwise_norm};
use hormander_core::{DyadicKernel, GridFunction, OperatorSpec, YoungFunction};

use super::*;
use crate::report::Trajectory;

const SUITE: &str = "weak_type";

/// `(λ, LHS, RHS)` over the sweep.
pub(crate) fn weak_profile(
    s: &[f64],
    f: &GridFunction,
    w: &[f64],
    mw: &[f64],
    abar: &YoungFunction,
    bk: f64,
    lambdas: &[f64],
) -> Vec<(f64, f64, f64)> {
    let h = f.grid().step();
    lambdas
        .iter()
        .map(|&lambda| {
            let lhs = h * s
                .iter()
                .zip(w)
                .filter(|(v, _)| **v > lambda)
                .map(|(_, wv)| *wv)
                .sum::<f64>();
            let rhs = h * f
                .samples()
                .iter()
                .zip(mw)
                .map(|(v, m)| abar.value(bk * v.abs() / lambda) * m)
                .sum::<f64>();
            (lambda, lhs, rhs)
        })
        .collect()
}

fn sup_ratio(profile: &[(f64, f64, f64)]) -> f64 {
    profile
        .iter()
        .map(|&(_, l, r)| if l == 0.0 { 0.0 } else { l / r })
        .fold(0.0, f64::max)
}

pub fn weak_type_suite(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let grid = cfg.aux_grid.grid()?;
    let family = cfg.family();
    let norms = x_norms(cfg)?;
    let b = symbol(cfg, grid);
    let weights: Vec<(String, Vec<f64>, Vec<f64>)> = cfg
        .weights
        .iter()
        .map(|ws| {
            let w = ws.generator().sample(grid);
            let mw = hl_maximal(&w, &family).into_samples();
            (ws.label(), w.into_samples(), mw)
        })
        .collect();
    let sweep = cfg.lambda.points();
    let kernel = DyadicKernel::square(cfg.aux_levels.0, cfg.aux_levels.1)?;
    let mut monotone = true;
    let mut homogeneity = 0.0f64;
    for &k in &cfg.k {
        let abar = YoungFunction::power_log(1.0, f64::from(k + 1))?;
        let bk = b.norm().powi(k as i32);
        let spec = OperatorSpec::new(
            kernel,
            hormander_core::SeqNorm::Lp(2.0),
            k,
            (k > 0).then(|| b.clone()),
        )?;
        for (xl, x) in &norms {
            let group = format!("k={k}/X={xl}");
            for (gi, gen) in cfg.battery.iter().enumerate() {
                for &j in &cfg.aux_dilations {
                    let scale = cfg.battery_scale * scale_of(j);
                    let f = gen.sample_dilated(grid, scale);
                    let top = f.max_abs();
                    if top == 0.0 {
                        report
                            .notes
                            .push(format!("{} at scale {scale}: f ≡ 0, skipped", gen.label()));
                        continue;
                    }
                    let s = pointwise_norm(&apply_commutator(&spec, &f)?, x).into_samples();
                    let lambdas: Vec<f64> = sweep.iter().map(|t| t * top).collect();
                    for (wi, (wl, w, mw)) in weights.iter().enumerate() {
                        let profile = weak_profile(&s, &f, w, mw, &abar, bk, &lambdas);
                        monotone &= profile.windows(2).all(|p| p[1].1 <= p[0].1);
                        let r = sup_ratio(&profile);
                        report.cases.push(row(
                            SUITE,
                            group.clone(),
                            format!("{}/{wl}", gen.label()),
                            scale,
                            &[("ratio", r)],
                        ));
                        if gi == 0 && j == 0 && wi == 0 {
                            report.trajectories.push(Trajectory {
                                name: format!("{group}/{}/{wl}/lhs_over_rhs", gen.label()),
                                points: profile
                                    .iter()
                                    .map(|&(l, a, b)| (l / top, if a == 0.0 { 0.0 } else { a / b }))
                                    .collect(),
                            });
                            let scaled = f.scale(HOMOGENEITY_FACTOR);
                            let ss = pointwise_norm(&apply_commutator(&spec, &scaled)?, x)
                                .into_samples();
                            let sl: Vec<f64> =
                                lambdas.iter().map(|l| l * HOMOGENEITY_FACTOR).collect();
                            let rs = sup_ratio(&weak_profile(&ss, &scaled, w, mw, &abar, bk, &sl));
                            homogeneity = homogeneity.max(relative_gap(r, rs));
                        }
                    }
                }
            }
        }
    }
    summarize_groups(&mut report, "ratio", None);
    report.gate(
        "lhs_monotone",
        monotone,
        "the weighted measure of the superlevel sets is nonincreasing in λ on every case",
    );
    report.gate(
        "homogeneity",
        homogeneity <= HOMOGENEITY_TOL,
        format!(
            "largest relative change under (f, λ) ↦ {HOMOGENEITY_FACTOR}(f, λ): {homogeneity:.3e}"
        ),
    );
    Ok(report)
}
