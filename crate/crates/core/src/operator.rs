//! The vector-valued operator `T f = {K_l ∗ f}_l`, its commutators, the
//! fractional variant and the square operators built from them.
//!
//! Level `l` of `T f` is the difference of the sliding averages of
//! half-widths `2^l` and `2^{l−1}`. The fractional kernel `|z|^α K_l(z)` is
//! applied through an exact per-level table of cell integrals.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::grid::{GridFunction, VectorGridFunction};
use crate::kernel::DyadicKernel;
use crate::math::{binomial, ceil, pow2, pow_k, powf};
use crate::seqnorm::{MonotoneCheck, SeqNorm};
use crate::weights::BmoFunction;
use crate::young::Interval;

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    kernel: DyadicKernel,
    x_norm: SeqNorm,
    k: u32,
    symbol: Option<BmoFunction>,
}

impl OperatorSpec {
    /// Trials used to confirm that `X` is monotone.
    pub const MONOTONE_TRIALS: usize = 256;

    pub fn new(
        kernel: DyadicKernel,
        x_norm: SeqNorm,
        k: u32,
        symbol: Option<BmoFunction>,
    ) -> Result<Self> {
        if !x_norm.is_monotone() {
            bail!(Config, "the sequence norm must be monotone");
        }
        if let MonotoneCheck::Violation { trial, .. } =
            x_norm.check_monotone(Self::MONOTONE_TRIALS, 0)
        {
            bail!(
                Config,
                "the sequence norm failed the monotonicity check at trial {trial}"
            );
        }
        match (k, &symbol) {
            (0, Some(_)) => bail!(
                Config,
                "a symbol is only meaningful for commutator order k ≥ 1"
            ),
            (1.., None) => bail!(Config, "commutator order {k} needs a BMO symbol"),
            _ => {}
        }
        Ok(OperatorSpec {
            kernel,
            x_norm,
            k,
            symbol,
        })
    }

    /// `T` with `X = ℓ²` on the given window.
    pub fn square(l_min: i32, l_max: i32) -> Result<Self> {
        Self::new(
            DyadicKernel::square(l_min, l_max)?,
            SeqNorm::Lp(2.0),
            0,
            None,
        )
    }

    pub fn kernel(&self) -> &DyadicKernel {
        &self.kernel
    }

    pub fn x_norm(&self) -> &SeqNorm {
        &self.x_norm
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn symbol(&self) -> Option<&BmoFunction> {
        self.symbol.as_ref()
    }

    pub fn with_x_norm(&self, x_norm: SeqNorm) -> Result<Self> {
        Self::new(self.kernel, x_norm, self.k, self.symbol.clone())
    }

    fn check_resolution(&self, f: &GridFunction) -> Result<()> {
        let h = f.grid().step();
        if pow2(self.kernel.l_min() - 1) < 0.5 * h {
            bail!(
                Config,
                "level {} is finer than the grid: 2^{} < h/2 = {}",
                self.kernel.l_min(),
                self.kernel.l_min() - 1,
                0.5 * h
            );
        }
        Ok(())
    }
}

/// `{K_{α,l} ∗ f}_l` over the kernel window, ignoring any commutator order.
pub fn apply(spec: &OperatorSpec, f: &GridFunction) -> Result<VectorGridFunction> {
    spec.check_resolution(f)?;
    if spec.kernel.alpha() != 0.0 {
        return fractional_levels(&spec.kernel, f);
    }
    let mut prev = f.window_samples(pow2(spec.kernel.l_min() - 1))?;
    let mut levels = Vec::with_capacity((spec.kernel.l_max() - spec.kernel.l_min() + 1) as usize);
    for l in spec.kernel.levels() {
        let cur = f.window_samples(pow2(l))?;
        levels.push(cur.iter().zip(&prev).map(|(a, b)| a - b).collect());
        prev = cur;
    }
    VectorGridFunction::new(*f.grid(), spec.kernel.l_min(), levels)
}

/// `T_b^k f = Σ_j C(k,j) b^{k−j} (−1)^j T[b^j f]`.
pub fn apply_commutator(spec: &OperatorSpec, f: &GridFunction) -> Result<VectorGridFunction> {
    let Some(symbol) = spec.symbol.as_ref() else {
        return apply(spec, f);
    };
    let b = symbol.get();
    if b.grid() != f.grid() {
        bail!(Input, "symbol and input live on different grids");
    }
    let k = spec.k;
    let mut acc: Option<VectorGridFunction> = None;
    let mut weighted = f.clone();
    for j in 0..=k {
        if j > 0 {
            weighted = weighted.zip_with(b, |v, bv| v * bv)?;
        }
        let t = apply(spec, &weighted)?;
        let coeff = binomial(k, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
        let bs = b.samples();
        let e = k - j;
        let levels: Vec<Vec<f64>> = t
            .levels()
            .map(|(_, v)| {
                v.iter()
                    .zip(bs)
                    .map(|(&tv, &bv)| coeff * pow_k(bv, e) * tv)
                    .collect()
            })
            .collect();
        let term = VectorGridFunction::new(*f.grid(), t.l_min(), levels)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.zip_with(&term, |x, y| x + y)?,
        });
    }
    acc.ok_or_else(|| crate::Error::Config("empty commutator expansion".into()))
}

/// `T_α f` for a kernel with `α > 0`.
pub fn fractional_apply(spec: &OperatorSpec, f: &GridFunction) -> Result<VectorGridFunction> {
    if spec.kernel.alpha() == 0.0 {
        bail!(Config, "fractional_apply needs α > 0");
    }
    apply(spec, f)
}

/// `∫_{(d−½)h}^{(d+½)h} |z|^α K_l(z) dz` for `d = −D..=D`.
fn cell_table(l: i32, alpha: f64, h: f64) -> Vec<f64> {
    let a = pow2(l - 1);
    let b = pow2(l);
    let c = pow2(-(l + 1));
    let p = |z: f64| powf(z, alpha + 1.0) / (alpha + 1.0);
    let primitive = |z: f64| {
        let t = z.abs();
        let v = -c * p(t.min(a)) + if t > a { c * (p(t.min(b)) - p(a)) } else { 0.0 };
        if z < 0.0 {
            -v
        } else {
            v
        }
    };
    let reach = ceil(b / h + 0.5) as i64;
    (-reach..=reach)
        .map(|d| primitive((d as f64 + 0.5) * h) - primitive((d as f64 - 0.5) * h))
        .collect()
}

fn fractional_levels(kernel: &DyadicKernel, f: &GridFunction) -> Result<VectorGridFunction> {
    let grid = *f.grid();
    let n = grid.len() as i64;
    let h = grid.step();
    let samples = f.samples();
    let support: Vec<usize> = (0..samples.len()).filter(|&c| samples[c] != 0.0).collect();
    let mut levels = Vec::new();
    for l in kernel.levels() {
        let table = cell_table(l, kernel.alpha(), h);
        let reach = (table.len() as i64 - 1) / 2;
        let mut out = alloc::vec![0.0; grid.len()];
        for &src in &support {
            let v = samples[src];
            let lo = (src as i64 - reach).max(0);
            let hi = (src as i64 + reach).min(n - 1);
            for c in lo..=hi {
                out[c as usize] += v * table[(c - src as i64 + reach) as usize];
            }
        }
        levels.push(out);
    }
    VectorGridFunction::new(grid, kernel.l_min(), levels)
}

/// Pointwise `X`-norm of a vector grid function.
pub fn pointwise_norm(values: &VectorGridFunction, x_norm: &SeqNorm) -> GridFunction {
    let n = values.grid().len();
    let samples = (0..n)
        .map(|c| x_norm.norm_values(values.column(c).map(|(_, v)| v)))
        .collect();
    GridFunction::from_vec_unchecked(*values.grid(), samples)
}

/// `S_{X,b}^k f = ‖T_b^k f‖_X` pointwise.
pub fn s_norm(spec: &OperatorSpec, f: &GridFunction) -> Result<GridFunction> {
    let t = apply_commutator(spec, f)?;
    Ok(pointwise_norm(&t, &spec.x_norm))
}

/// `(∫ ‖F(x)‖_X^p dx)^{1/p}`.
pub fn bochner_norm(values: &VectorGridFunction, x_norm: &SeqNorm, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        bail!(Domain, "exponent must be positive, got {p}");
    }
    let g = pointwise_norm(values, x_norm);
    if p.is_infinite() {
        return Ok(g.max_abs());
    }
    let sum: f64 = g.samples().iter().map(|&v| powf(v, p)).sum();
    Ok(powf(values.grid().step() * sum, 1.0 / p))
}

/// Kolmogorov-type ratio for one input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KolmogorovReport {
    /// `((1/|B|) ∫_B ‖T f‖_X^ε)^{1/ε}`
    pub lhs: f64,
    /// `(1/|B̂|) ∫_{B̂} |f|`
    pub rhs: f64,
    /// `lhs / rhs`, with `0/0` reported as 0.
    pub ratio: f64,
}

pub fn kolmogorov_check(
    spec: &OperatorSpec,
    f: &GridFunction,
    outer: &Interval,
    inner: &Interval,
    eps: f64,
) -> Result<KolmogorovReport> {
    if !(eps > 0.0 && eps < 1.0) {
        bail!(Domain, "ε must lie in (0, 1), got {eps}");
    }
    if !outer.contains(inner) {
        bail!(Input, "the inner ball must lie inside the outer ball");
    }
    let grid = f.grid();
    let support_ok = f.samples().iter().enumerate().all(|(c, &v)| {
        v == 0.0 || {
            let x = grid.x(c);
            let half = 0.5 * grid.step();
            x - half >= inner.lo() - 1e-12 && x + half <= inner.hi() + 1e-12
        }
    });
    if !support_ok {
        bail!(Input, "f must be supported in the inner ball");
    }
    let s = s_norm(spec, f)?;
    let lhs = powf(s.map(|v| powf(v, eps)).average(outer)?, 1.0 / eps);
    let rhs = f.abs().average(inner)?;
    let ratio = if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    };
    Ok(KolmogorovReport { lhs, rhs, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Generator, Grid};
    use crate::maximal::BallFamily;

    fn small_grid() -> Grid {
        Grid::new(64.0, 4096).unwrap()
    }

    fn bump(grid: Grid) -> GridFunction {
        Generator::Bump {
            center: 0.3,
            radius: 2.0,
        }
        .sample(grid)
    }

    #[test]
    fn constant_input_gives_zero_away_from_edges() {
        let g = small_grid();
        let spec = OperatorSpec::square(-4, 3).unwrap();
        let t = apply(&spec, &GridFunction::constant(g, 2.5)).unwrap();
        for (_, v) in t.levels() {
            for c in g.core_cells() {
                assert!(v[c].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_level_matches_quadrature() {
        let g = small_grid();
        let f = bump(g);
        let spec = OperatorSpec::square(-4, 4).unwrap();
        let t = apply(&spec, &f).unwrap();
        let kernel = spec.kernel();
        let h = g.step();
        for &l in &[-3, 0, 2, 4] {
            for c in (1500..2600).step_by(37) {
                let x = g.x(c);
                // Cell-wise exact integration of the box kernel.
                let mut direct = 0.0;
                for j in 0..g.len() {
                    let (lo, hi) = (g.x(j) - 0.5 * h, g.x(j) + 0.5 * h);
                    let mut cuts = alloc::vec![lo, hi];
                    for p in [pow2(l - 1), pow2(l)] {
                        for q in [x - p, x + p] {
                            if q > lo && q < hi {
                                cuts.push(q);
                            }
                        }
                    }
                    cuts.sort_by(f64::total_cmp);
                    for w in cuts.windows(2) {
                        let mid = 0.5 * (w[0] + w[1]);
                        direct +=
                            kernel.eval_level(l, x - mid).unwrap() * f.samples()[j] * (w[1] - w[0]);
                    }
                }
                let got = t.level(l).unwrap()[c];
                assert!(
                    (got - direct).abs() <= 1e-8 * f.max_abs().max(direct.abs()),
                    "{l} {c} {got} {direct}"
                );
            }
        }
    }

    #[test]
    fn resolution_guard() {
        let g = small_grid();
        let spec = OperatorSpec::square(-6, 2).unwrap();
        assert!(apply(&spec, &bump(g)).is_err());
    }

    #[test]
    fn commutator_with_constant_symbol_vanishes() {
        let g = small_grid();
        let b = BmoFunction::new(GridFunction::constant(g, 3.0), &BallFamily::coarse());
        let spec = OperatorSpec::new(
            DyadicKernel::square(-4, 3).unwrap(),
            SeqNorm::Lp(2.0),
            2,
            Some(b),
        )
        .unwrap();
        let t = apply_commutator(&spec, &bump(g)).unwrap();
        assert!(t.max_abs() < 1e-12);
    }

    #[test]
    fn commutator_recursion() {
        let g = small_grid();
        let b = Generator::LogAbs { center: 0.0 }.sample(g);
        let sym = BmoFunction::new(b.clone(), &BallFamily::coarse());
        let f = bump(g);
        let kernel = DyadicKernel::square(-4, 3).unwrap();
        let spec2 = OperatorSpec::new(kernel, SeqNorm::Lp(2.0), 2, Some(sym.clone())).unwrap();
        let spec1 = OperatorSpec::new(kernel, SeqNorm::Lp(2.0), 1, Some(sym)).unwrap();
        let lhs = apply_commutator(&spec2, &f).unwrap();
        let a = apply_commutator(&spec1, &f).unwrap();
        let bf = f.zip_with(&b, |x, y| x * y).unwrap();
        let c = apply_commutator(&spec1, &bf).unwrap();
        for (l, v) in lhs.levels() {
            let av = a.level(l).unwrap();
            let cv = c.level(l).unwrap();
            for i in 0..g.len() {
                let rhs = b.samples()[i] * av[i] - cv[i];
                assert!((v[i] - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
            }
        }
    }

    #[test]
    fn fractional_small_alpha_matches_box() {
        let g = Grid::new(16.0, 1024).unwrap();
        let f = bump(g);
        let box_spec = OperatorSpec::square(-3, 2).unwrap();
        let frac_spec = OperatorSpec::new(
            DyadicKernel::new(-3, 2, 1e-9).unwrap(),
            SeqNorm::Lp(2.0),
            0,
            None,
        )
        .unwrap();
        let a = apply(&box_spec, &f).unwrap();
        let b = fractional_apply(&frac_spec, &f).unwrap();
        let diff = a.zip_with(&b, |x, y| x - y).unwrap().max_abs();
        assert!(diff < 1e-7 * a.max_abs(), "{diff}");
    }

    #[test]
    fn bochner_single_level() {
        let g = small_grid();
        let f = bump(g);
        let v = VectorGridFunction::new(g, 0, alloc::vec![f.samples().to_vec()]).unwrap();
        let direct = powf(
            f.samples().iter().map(|x| x * x * x).sum::<f64>() * g.step(),
            1.0 / 3.0,
        );
        assert!(
            (bochner_norm(&v, &SeqNorm::Lp(2.0), 3.0).unwrap() - direct).abs() < 1e-12 * direct
        );
    }

    #[test]
    fn spec_validation() {
        let k = DyadicKernel::square(-4, 3).unwrap();
        assert!(OperatorSpec::new(k, SeqNorm::CounterexampleQuadratic, 0, None).is_err());
        assert!(OperatorSpec::new(k, SeqNorm::Lp(2.0), 1, None).is_err());
    }
}
