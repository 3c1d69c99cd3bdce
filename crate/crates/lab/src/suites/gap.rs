//! Plain and dagger sums of the dyadic kernel across growing level windows.

use hormander_core::kernel::Flavor;
use hormander_core::{DyadicKernel, HormanderQuery, SeqNorm, YoungFunction};

use super::*;
use crate::report::Trajectory;

const SUITE: &str = "gap";

pub const PLAIN_GROWTH_MIN: f64 = 1.5;
pub const DAGGER_CHANGE_MAX: f64 = 0.01;
pub const CAUCHY_MAX: f64 = 1e-6;

/// `2 (1/ln 2)^{k+1} (2 Σ_{m ≤ M} m^{-2})^{1/2}`.
pub fn dagger_bound(k: u32, m_max: u32) -> f64 {
    let tail: f64 = (1..=m_max)
        .map(|m| 1.0 / (f64::from(m) * f64::from(m)))
        .sum();
    2.0 * (1.0 / std::f64::consts::LN_2).powi(k as i32 + 1) * (2.0 * tail).sqrt()
}

/// Dagger values for `m_max = 1..=m_max` on a fixed window.
pub fn dagger_trajectory(
    kernel: &DyadicKernel,
    base: &HormanderQuery,
    m_max: u32,
) -> LabResult<Vec<(f64, f64)>> {
    (1..=m_max)
        .map(|m| {
            let mut q = base.clone();
            q.m_max = m;
            Ok((f64::from(m), kernel.dagger_sum(&q)?.value))
        })
        .collect()
}

/// Largest `|v_m − v_{m−1}|` with `m > from`.
pub fn cauchy_tail(traj: &[(f64, f64)], from: u32) -> f64 {
    traj.windows(2)
        .filter(|w| w[1].0 > f64::from(from))
        .map(|w| (w[1].1 - w[0].1).abs())
        .fold(0.0, f64::max)
}

/// Last increment of a trajectory divided by the previous one; values
/// below 1 mean the increments shrink.
pub fn contraction(traj: &[(f64, f64)]) -> f64 {
    match traj {
        [.., a, b, c] => {
            let (d1, d2) = ((b.1 - a.1).abs(), (c.1 - b.1).abs());
            if d2 == 0.0 {
                0.0
            } else {
                d2 / d1
            }
        }
        _ => f64::INFINITY,
    }
}

pub fn gap_probe(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let g = &cfg.gap;
    let x2 = SeqNorm::Lp(2.0);
    let query = |phi: &YoungFunction, k: u32, flavor: Flavor| {
        HormanderQuery::new(phi.clone(), k, x2.clone(), g.x, g.r, g.m_max, flavor)
    };
    for &k in &g.k {
        let a0 = YoungFunction::exp_power(1.0 / f64::from(1 + k), 1.0)?;
        let a_eps = YoungFunction::exp_power(1.0 / (f64::from(1 + k) + g.epsilon), 1.0)?;
        for (class, phi) in [("A0", &a0), ("Aeps", &a_eps)] {
            let group = format!("k={k}/{class}");
            let mut plain = Vec::new();
            let mut dagger = Vec::new();
            let windows = if class == "A0" {
                &g.windows
            } else {
                &g.eps_windows
            };
            for &(lo, hi) in windows {
                let kernel = DyadicKernel::square(lo, hi)?;
                let p = kernel.plain_sum(&query(phi, k, Flavor::Plain))?.value;
                let d = kernel.dagger_sum(&query(phi, k, Flavor::Dagger))?.value;
                report.cases.push(row(
                    SUITE,
                    group.clone(),
                    format!("window=[{lo},{hi}]"),
                    f64::from(hi - lo),
                    &[("plain", p), ("dagger", d)],
                ));
                plain.push((f64::from(hi - lo), p));
                dagger.push((f64::from(hi - lo), d));
            }
            let find = |v: &[(f64, f64)], width: f64| v.iter().find(|p| p.0 == width).map(|p| p.1);
            if class == "A0" {
                match (
                    find(&plain, 20.0),
                    find(&plain, 40.0),
                    find(&dagger, 20.0),
                    find(&dagger, 40.0),
                ) {
                    (Some(p10), Some(p20), Some(d10), Some(d20)) => {
                        let growth = p20 / p10;
                        let change = (d20 / d10 - 1.0).abs();
                        report.constant(format!("{group}/plain_growth"), growth);
                        report.gate(
                            format!("plain_growth:{group}"),
                            growth >= PLAIN_GROWTH_MIN,
                            format!("plain [−20,20] / [−10,10] = {growth:.4} (need ≥ {PLAIN_GROWTH_MIN})"),
                        );
                        report.gate(
                            format!("dagger_stable:{group}"),
                            change < DAGGER_CHANGE_MAX,
                            format!("dagger relative change [−10,10] → [−20,20] = {change:.4} (need < {DAGGER_CHANGE_MAX})"),
                        );
                    }
                    _ => report.notes.push(format!(
                        "{group}: windows of width 20 and 40 are needed for the gap gates"
                    )),
                }
            } else {
                let (rp, rd) = (contraction(&plain), contraction(&dagger));
                report.gate(
                    format!("stabilizes:{group}"),
                    rp < 1.0 && rd < 1.0,
                    format!("last increment over the previous one: plain {rp:.4}, dagger {rd:.4}"),
                );
            }
            report.trajectories.push(Trajectory {
                name: format!("{group}/plain_vs_window"),
                points: plain,
            });
            report.trajectories.push(Trajectory {
                name: format!("{group}/dagger_vs_window"),
                points: dagger,
            });
        }

        let base = query(&a0, k, Flavor::Dagger);
        if let Some(&(lo, hi)) = g.windows.last() {
            let traj = dagger_trajectory(&DyadicKernel::square(lo, hi)?, &base, g.m_max)?;
            let tail = cauchy_tail(&traj, g.cauchy_from);
            report.gate(
                format!("cauchy:k={k}"),
                tail < CAUCHY_MAX,
                format!(
                    "largest dagger increment beyond m_max = {} on [{lo},{hi}]: {tail:.3e}",
                    g.cauchy_from
                ),
            );
            report.trajectories.push(Trajectory {
                name: format!("k={k}/A0/dagger_vs_m_max/window=[{lo},{hi}]"),
                points: traj,
            });
        }
        let i = g.r.log2().floor() as i32;
        let wide = DyadicKernel::square(i - 4, i + g.m_max as i32 + 4)?;
        let traj = dagger_trajectory(&wide, &base, g.m_max)?;
        let tail = cauchy_tail(&traj, g.cauchy_from);
        let value = traj.last().map_or(0.0, |p| p.1);
        let bound = dagger_bound(k, g.m_max);
        report.notes.push(format!(
            "k={k}: on the full window [{}, {}] the largest dagger increment beyond m_max = {} is {tail:.3e}",
            i - 4,
            i + g.m_max as i32 + 4,
            g.cauchy_from
        ));
        report.constant(format!("k={k}/A0/dagger_full"), value);
        report.gate(
            format!("dagger_bound:k={k}"),
            value <= bound,
            format!("dagger on the full window = {value:.6} ≤ {bound:.6}"),
        );
        report.trajectories.push(Trajectory {
            name: format!("k={k}/A0/dagger_vs_m_max/full"),
            points: traj,
        });
    }
    Ok(report)
}
