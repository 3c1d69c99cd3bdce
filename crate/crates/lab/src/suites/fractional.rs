//! Fractional square operators: Coifman-type ratios against
//! `M_{α, L(log L)^{k+1}}`, the `(p, q)` surrogate, the `α → 0` limit and
//! the size condition of the fractional kernel.

use hormander_core::maximal::{fractional_orlicz_maximal, orlicz_maximal};
use hormander_core::operator::{apply_commutator, pointwise_norm};
use hormander_core::weights::{apq_constant, BmoFunction, Weight};
use hormander_core::{
    BallFamily, DyadicKernel, GridFunction, OperatorSpec, SeqNorm, YoungFunction,
};

use super::*;
use crate::report::Trajectory;

const SUITE: &str = "fractional";

pub const ALPHA_LIMIT_TOL: f64 = 0.1;
/// Largest tolerated max/min of the size ratio over the radii.
pub const SIZE_BAND_MAX: f64 = 2.0;

fn s_alpha(
    f: &GridFunction,
    levels: (i32, i32),
    alpha: f64,
    k: u32,
    b: &BmoFunction,
    x: &SeqNorm,
) -> LabResult<Vec<f64>> {
    let kernel = DyadicKernel::new(levels.0, levels.1, alpha)?;
    let spec = OperatorSpec::new(kernel, x.clone(), k, (k > 0).then(|| b.clone()))?;
    Ok(pointwise_norm(&apply_commutator(&spec, f)?, x).into_samples())
}

fn maximal(f: &GridFunction, k: u32, alpha: f64, family: &BallFamily) -> LabResult<Vec<f64>> {
    let abar = YoungFunction::power_log(1.0, f64::from(k + 1))?;
    Ok(if alpha == 0.0 {
        orlicz_maximal(f, &abar, family)
    } else {
        fractional_orlicz_maximal(f, &abar, alpha, family)?
    }
    .into_samples())
}

pub fn fractional_suite(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let fc = &cfg.fractional;
    let grid = fc.grid.grid()?;
    let h = grid.step();
    let family = cfg.family();
    let weights = admitted_weights(cfg, grid, &mut report)?;
    let norms = x_norms(cfg)?;
    let b = symbol(cfg, grid);
    let mut homogeneity = 0.0f64;

    for &alpha in &fc.alphas {
        for &k in &fc.k {
            for (gi, gen) in cfg.battery.iter().enumerate() {
                for &j in &fc.dilations {
                    let scale = scale_of(j);
                    let f = gen.sample_dilated(grid, scale);
                    if f.max_abs() == 0.0 {
                        report
                            .notes
                            .push(format!("{} at scale {scale}: f ≡ 0, skipped", gen.label()));
                        continue;
                    }
                    let m = maximal(&f, k, alpha, &family)?;
                    for (xi, (xl, x)) in norms.iter().enumerate() {
                        let s = s_alpha(&f, fc.levels, alpha, k, &b, x)?;
                        for (wl, w) in &weights {
                            for &p in &fc.p {
                                let den = weighted_power(&m, w, p, h);
                                if den == 0.0 {
                                    continue;
                                }
                                let r = weighted_power(&s, w, p, h) / den;
                                report.cases.push(row(
                                    SUITE,
                                    format!("alpha={alpha}/k={k}/X={xl}/p={p}"),
                                    format!("{}/{wl}", gen.label()),
                                    scale,
                                    &[("ratio", r)],
                                ));
                            }
                        }
                        if gi == 0 && j == 0 && xi == 0 {
                            let c = HOMOGENEITY_FACTOR;
                            let fs = f.scale(c);
                            let (ss, ms) = (
                                s_alpha(&fs, fc.levels, alpha, k, &b, x)?,
                                maximal(&fs, k, alpha, &family)?,
                            );
                            for &p in &fc.p {
                                let ones = vec![1.0; ss.len()];
                                let a = weighted_power(&s, &ones, p, h)
                                    / weighted_power(&m, &ones, p, h);
                                let bb = weighted_power(&ss, &ones, p, h)
                                    / weighted_power(&ms, &ones, p, h);
                                homogeneity = homogeneity.max(relative_gap(a, bb));
                            }
                        }
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

    pq_surrogate(cfg, grid, &b, &mut report)?;
    alpha_limit(cfg, grid, &b, &mut report)?;
    size_band(cfg, &mut report)?;
    Ok(report)
}

/// `‖S_α f‖_{L^q(w^q)} / ‖f‖_{L^p(w^p)}` with `1/q = 1/p − α` and
/// `w = |x|^a`, over the battery and the dilations.
fn pq_surrogate(
    cfg: &ExperimentConfig,
    grid: hormander_core::Grid,
    b: &BmoFunction,
    report: &mut ExperimentReport,
) -> LabResult<()> {
    let fc = &cfg.fractional;
    let h = grid.step();
    let p = fc.pq_p;
    let x = SeqNorm::Lp(2.0);
    for &alpha in &fc.alphas {
        let q = 1.0 / (1.0 / p - alpha);
        for &a in &fc.pq_weights {
            let weight = Weight::power(grid, a);
            let c = apq_constant(&weight, p, q, &BallFamily::coarse())?.constant;
            let label = format!("pq/alpha={alpha}/q={q:.4}/a={a}");
            if !(c.is_finite() && c <= cfg.weight_gate) {
                report.notes.push(format!(
                    "{label}: weight rejected, A_(p,q) surrogate {c:.3e}"
                ));
                continue;
            }
            report.constant(format!("{label}/apq_constant"), c);
            let w = weight.get().samples().to_vec();
            let wq: Vec<f64> = w.iter().map(|v| v.powf(q)).collect();
            let wp: Vec<f64> = w.iter().map(|v| v.powf(p)).collect();
            for gen in &cfg.battery {
                for &j in &fc.dilations {
                    let scale = scale_of(j);
                    let f = gen.sample_dilated(grid, scale);
                    let abs: Vec<f64> = f.samples().iter().map(|v| v.abs()).collect();
                    let den = weighted_power(&abs, &wp, p, h).powf(1.0 / p);
                    if den == 0.0 {
                        continue;
                    }
                    let s = s_alpha(&f, fc.levels, alpha, 0, b, &x)?;
                    let num = weighted_power(&s, &wq, q, h).powf(1.0 / q);
                    report.cases.push(row(
                        SUITE,
                        label.clone(),
                        gen.label(),
                        scale,
                        &[("pq_ratio", num / den)],
                    ));
                }
            }
        }
    }
    summarize_groups(report, "pq_ratio", Some(DRIFT_LIMIT));
    Ok(())
}

/// Fractional ratios at a tiny order against the order-zero ratios.
fn alpha_limit(
    cfg: &ExperimentConfig,
    grid: hormander_core::Grid,
    b: &BmoFunction,
    report: &mut ExperimentReport,
) -> LabResult<()> {
    let fc = &cfg.fractional;
    let h = grid.step();
    let family = cfg.family();
    let x = SeqNorm::Lp(2.0);
    let ones = vec![1.0; grid.len()];
    let mut worst = 0.0f64;
    for &k in &fc.k {
        for gen in &cfg.battery {
            let f = gen.sample(grid);
            let tiny = (
                s_alpha(&f, fc.levels, fc.alpha_small, k, b, &x)?,
                maximal(&f, k, fc.alpha_small, &family)?,
            );
            let zero = (
                s_alpha(&f, fc.levels, 0.0, k, b, &x)?,
                maximal(&f, k, 0.0, &family)?,
            );
            for &p in &fc.p {
                let rt =
                    weighted_power(&tiny.0, &ones, p, h) / weighted_power(&tiny.1, &ones, p, h);
                let rz =
                    weighted_power(&zero.0, &ones, p, h) / weighted_power(&zero.1, &ones, p, h);
                let gap = relative_gap(rt, rz);
                worst = worst.max(gap);
                report.cases.push(row(
                    SUITE,
                    format!("alpha_limit/k={k}/p={p}"),
                    gen.label(),
                    1.0,
                    &[
                        ("ratio_small_alpha", rt),
                        ("ratio_zero", rz),
                        ("relative_gap", gap),
                    ],
                ));
            }
        }
    }
    report.gate(
        "alpha_limit",
        worst <= ALPHA_LIMIT_TOL,
        format!(
            "largest relative gap between α = {} and α = 0 ratios: {worst:.3e}",
            fc.alpha_small
        ),
    );
    Ok(())
}

/// `s^{1−α} ‖{‖K_{α,l}‖_{A,|z|∼s}}_l‖_{ℓ²}` over `s = 2^j`.
fn size_band(cfg: &ExperimentConfig, report: &mut ExperimentReport) -> LabResult<()> {
    let fc = &cfg.fractional;
    let s_values: Vec<f64> = (fc.size_doublings.0..=fc.size_doublings.1)
        .map(scale_of)
        .collect();
    for &alpha in &fc.alphas {
        let kernel = DyadicKernel::new(fc.size_levels.0, fc.size_levels.1, alpha)?;
        for &k in &fc.k {
            let phi = YoungFunction::exp_log_class(k);
            let rep = kernel.s_alpha_check(&phi, &SeqNorm::Lp(2.0), &s_values)?;
            let band = spread(rep.ratios.iter().map(|r| r.1));
            let group = format!("size/alpha={alpha}/k={k}");
            report.constant(format!("{group}/sup"), rep.sup);
            report.gate(
                format!("size_band:{group}"),
                band <= SIZE_BAND_MAX,
                format!("max/min over {} doublings = {band:.4}", s_values.len() - 1),
            );
            report.trajectories.push(Trajectory {
                name: group,
                points: rep.ratios,
            });
        }
    }
    Ok(())
}
