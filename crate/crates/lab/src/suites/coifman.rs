//! Weighted `L^p` control of `‖T_b^k f‖_X` by `M_Ā f` and `M^{k+2} f`.

use hormander_core::maximal::{iterated_maximal, orlicz_maximal};
use hormander_core::operator::{apply_commutator, pointwise_norm};
use hormander_core::weights::BmoFunction;
use hormander_core::{
    BallFamily, DyadicKernel, GridFunction, OperatorSpec, SeqNorm, YoungFunction,
};

use super::*;

const SUITE: &str = "coifman";

/// Everything a case needs that does not depend on the weight or `p`.
pub(crate) struct Evaluated {
    /// Pointwise X-norms of the commutator, one per sequence norm.
    pub s: Vec<(String, Vec<f64>)>,
    pub orlicz: Vec<f64>,
    pub iterated: Vec<f64>,
}

pub(crate) struct Pipeline {
    pub spec: OperatorSpec,
    pub abar: YoungFunction,
    pub k: u32,
    pub family: BallFamily,
}

impl Pipeline {
    pub fn new(
        cfg: &ExperimentConfig,
        levels: (i32, i32),
        k: u32,
        b: &BmoFunction,
    ) -> LabResult<Self> {
        let kernel = DyadicKernel::square(levels.0, levels.1)?;
        let symbol = (k > 0).then(|| b.clone());
        Ok(Pipeline {
            spec: OperatorSpec::new(kernel, SeqNorm::Lp(2.0), k, symbol)?,
            abar: YoungFunction::power_log(1.0, f64::from(k + 1))?,
            k,
            family: cfg.family(),
        })
    }

    pub fn evaluate(&self, f: &GridFunction, norms: &[(String, SeqNorm)]) -> LabResult<Evaluated> {
        let t = apply_commutator(&self.spec, f)?;
        let s = norms
            .iter()
            .map(|(label, x)| (label.clone(), pointwise_norm(&t, x).into_samples()))
            .collect();
        Ok(Evaluated {
            s,
            orlicz: orlicz_maximal(f, &self.abar, &self.family).into_samples(),
            iterated: iterated_maximal(f, self.k + 2, &self.family)?.into_samples(),
        })
    }
}

/// `(group, case, ratio, ratio_iterated, denominator_order, num, den)` for
/// every norm, weight and exponent; cases with a zero denominator are
/// returned as `None`.
type Ratios = Vec<(String, String, Option<[f64; 5]>)>;

fn ratios(ev: &Evaluated, k: u32, weights: &[(String, Vec<f64>)], ps: &[f64], h: f64) -> Ratios {
    let mut out = Vec::new();
    for (xl, sx) in &ev.s {
        for (wl, w) in weights {
            for &p in ps {
                let num = weighted_power(sx, w, p, h);
                let den = weighted_power(&ev.orlicz, w, p, h);
                let den2 = weighted_power(&ev.iterated, w, p, h);
                let vals = (den > 0.0 && den2 > 0.0)
                    .then(|| [num / den, num / den2, den / den2, num, den]);
                out.push((format!("k={k}/X={xl}/p={p}"), wl.clone(), vals));
            }
        }
    }
    out
}

pub fn coifman_suite(cfg: &ExperimentConfig) -> LabResult<ExperimentReport> {
    let mut report = ExperimentReport::new(SUITE, cfg.hash(), cfg.seed);
    let grid = cfg.grid.grid()?;
    let h = grid.step();
    let weights = admitted_weights(cfg, grid, &mut report)?;
    let norms = x_norms(cfg)?;
    let b = symbol(cfg, grid);
    report.constant("symbol_bmo_norm", b.norm());
    let mut homogeneity = 0.0f64;
    let mut translation = 0.0f64;
    for &k in &cfg.k {
        let pipe = Pipeline::new(cfg, cfg.levels, k, &b)?;
        for (gi, gen) in cfg.battery.iter().enumerate() {
            for &j in &cfg.dilations {
                let s = cfg.battery_scale * scale_of(j);
                let f = gen.sample_dilated(grid, s);
                if f.max_abs() == 0.0 {
                    report
                        .notes
                        .push(format!("{} at scale {s}: f ≡ 0, skipped", gen.label()));
                    continue;
                }
                let ev = pipe.evaluate(&f, &norms)?;
                let rs = ratios(&ev, k, &weights, &cfg.p, h);
                for (group, wl, vals) in &rs {
                    let case = format!("{}/{wl}", gen.label());
                    match vals {
                        Some([r, ri, order, num, den]) => report.cases.push(row(
                            SUITE,
                            group.clone(),
                            case,
                            s,
                            &[
                                ("ratio", *r),
                                ("ratio_iterated", *ri),
                                ("denominator_order", *order),
                                ("numerator", *num),
                                ("denominator", *den),
                            ],
                        )),
                        None => report.notes.push(format!(
                            "{group} {case} at scale {s}: zero denominator, skipped"
                        )),
                    }
                }
                if gi == 0 && j == 0 {
                    let scaled = pipe.evaluate(&f.scale(HOMOGENEITY_FACTOR), &norms)?;
                    for ((_, _, a), (_, _, b)) in
                        rs.iter().zip(ratios(&scaled, k, &weights, &cfg.p, h))
                    {
                        if let (Some(a), Some(b)) = (a, b) {
                            homogeneity = homogeneity.max(relative_gap(a[0], b[0]));
                        }
                    }
                    if k == 0 {
                        translation =
                            translation.max(translation_gap(&pipe, &f, &norms, &cfg.p, cfg.seed)?);
                    }
                }
            }
        }
    }
    summarize_groups(&mut report, "ratio", Some(DRIFT_LIMIT));
    for (group, by_scale) in sup_by_group_and_scale(&report.cases, "denominator_order") {
        let sup = by_scale.values().fold(0.0f64, |m, &v| m.max(v));
        report.constant(format!("{group}/sup_denominator_order"), sup);
        report.gate(
            format!("denominators_ordered:{group}"),
            sup.is_finite(),
            format!("sup ∫(M_Ā f)^p w / ∫(M^(k+2) f)^p w = {sup:.6e}"),
        );
    }
    report.gate(
        "homogeneity",
        homogeneity <= HOMOGENEITY_TOL,
        format!(
            "largest relative change of a ratio under f ↦ {HOMOGENEITY_FACTOR}f: {homogeneity:.3e}"
        ),
    );
    report.gate(
        "translation",
        translation <= TRANSLATION_TOL,
        format!("largest relative change under whole-cell translation: {translation:.3e}"),
    );
    Ok(report)
}

/// Relative change of the unweighted core-window ratios when `f` is moved
/// by a whole number of cells; the window moves along with `f`.
fn translation_gap(
    pipe: &Pipeline,
    f: &GridFunction,
    norms: &[(String, SeqNorm)],
    ps: &[f64],
    seed: u64,
) -> LabResult<f64> {
    let n = f.grid().len();
    let shift = 1 + (seed % 61) as usize + n / 64;
    let core = f.grid().core_cells();
    let moved = f.translate_cells(shift as isize);
    let a = pipe.evaluate(f, norms)?;
    let b = pipe.evaluate(&moved, norms)?;
    let h = f.grid().step();
    let ones = vec![1.0; core.len()];
    let window = |v: &[f64], off: usize| v[core.start + off..core.end + off].to_vec();
    let mut gap = 0.0f64;
    for ((_, sa), (_, sb)) in a.s.iter().zip(&b.s) {
        for &p in ps {
            let ra = weighted_power(&window(sa, 0), &ones, p, h)
                / weighted_power(&window(&a.orlicz, 0), &ones, p, h);
            let rb = weighted_power(&window(sb, shift), &ones, p, h)
                / weighted_power(&window(&b.orlicz, shift), &ones, p, h);
            gap = gap.max(relative_gap(ra, rb));
        }
    }
    Ok(gap)
}
