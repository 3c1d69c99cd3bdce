//! Muckenhoupt constants, BMO norms and John–Nirenberg checks.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::grid::{Generator, Grid, GridFunction};
use crate::math::powf;
use crate::maximal::{hl_maximal, sharp_maximal, BallFamily};
use crate::young::{luxemburg_average, Interval, YoungFunction};

/// A strictly positive, finite grid function.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight(GridFunction);

impl Weight {
    pub fn new(w: GridFunction) -> Result<Self> {
        if let Some(c) = w.samples().iter().position(|&v| !(v > 0.0)) {
            bail!(Input, "weight is not positive at cell {c}");
        }
        Ok(Weight(w))
    }

    /// `|x|^a`, sampled at cell centres.
    pub fn power(grid: Grid, a: f64) -> Self {
        Weight(
            Generator::Power {
                exponent: a,
                center: 0.0,
            }
            .sample(grid),
        )
    }

    pub fn get(&self) -> &GridFunction {
        &self.0
    }

    /// `w^s`.
    pub fn pow(&self, s: f64) -> Weight {
        Weight(self.0.map(|v| powf(v, s)))
    }
}

/// A Muckenhoupt-type constant with the interval attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantReport {
    pub constant: f64,
    /// `(lo, hi)` in `x` coordinates.
    pub argmax: (f64, f64),
}

fn sup_over_family(
    grid: &Grid,
    family: &BallFamily,
    mut product: impl FnMut(f64, f64) -> f64,
) -> ConstantReport {
    let mut best = f64::NEG_INFINITY;
    let mut arg = (0.0, 0.0);
    family.for_each_interval(grid.len(), |lo, hi| {
        if hi > lo {
            let v = product(lo, hi);
            if v > best {
                best = v;
                arg = (lo, hi);
            }
        }
    });
    let h = grid.step();
    let l = grid.half_len();
    ConstantReport {
        constant: best,
        argmax: (-l + arg.0 * h, -l + arg.1 * h),
    }
}

fn avg(f: &GridFunction, lo: f64, hi: f64) -> f64 {
    (f.antiderivative_cells(hi) - f.antiderivative_cells(lo)) / (hi - lo)
}

/// `sup_B (avg_B w)(avg_B w^{−1/(p−1)})^{p−1}`, `p > 1`.
pub fn ap_constant(w: &Weight, p: f64, family: &BallFamily) -> Result<ConstantReport> {
    if !(p > 1.0 && p.is_finite()) {
        bail!(Domain, "A_p needs 1 < p < ∞, got {p}");
    }
    let dual = w.pow(-1.0 / (p - 1.0));
    let w = w.get();
    let dual = dual.get();
    Ok(sup_over_family(w.grid(), family, |lo, hi| {
        avg(w, lo, hi) * powf(avg(dual, lo, hi), p - 1.0)
    }))
}

/// `sup_x Mw(x)/w(x)`.
pub fn a1_constant(w: &Weight, family: &BallFamily) -> ConstantReport {
    let m = hl_maximal(w.get(), family);
    let grid = *w.get().grid();
    let mut best = f64::NEG_INFINITY;
    let mut at = 0;
    for (c, (mv, wv)) in m.samples().iter().zip(w.get().samples()).enumerate() {
        if family.core_only && !grid.core_cells().contains(&c) {
            continue;
        }
        let r = mv / wv;
        if r > best {
            best = r;
            at = c;
        }
    }
    let h = grid.step();
    ConstantReport {
        constant: best,
        argmax: (grid.x(at) - 0.5 * h, grid.x(at) + 0.5 * h),
    }
}

/// `A_{p,q}` constant through `w^q ∈ A_{1+q/p′}`; for `p = 1` through
/// `w^q ∈ A_1`.
pub fn apq_constant(w: &Weight, p: f64, q: f64, family: &BallFamily) -> Result<ConstantReport> {
    if !(p >= 1.0 && q >= 1.0 && p.is_finite() && q.is_finite()) {
        bail!(Domain, "A_(p,q) needs 1 ≤ p, q < ∞");
    }
    let wq = w.pow(q);
    if p == 1.0 {
        return Ok(a1_constant(&wq, family));
    }
    let p_dual = p / (p - 1.0);
    ap_constant(&wq, 1.0 + q / p_dual, family)
}

/// `[sup_B (avg_B w^q)^{1/q} (avg_B w^{−p′})^{1/p′}]^q`, computed directly;
/// `p > 1`. Agrees with [`apq_constant`].
pub fn apq_constant_direct(
    w: &Weight,
    p: f64,
    q: f64,
    family: &BallFamily,
) -> Result<ConstantReport> {
    if !(p > 1.0 && q >= 1.0 && p.is_finite() && q.is_finite()) {
        bail!(Domain, "direct A_(p,q) needs 1 < p < ∞ and 1 ≤ q < ∞");
    }
    let p_dual = p / (p - 1.0);
    let wq = w.pow(q);
    let wd = w.pow(-p_dual);
    let (wq, wd) = (wq.get(), wd.get());
    let mut rep = sup_over_family(wq.grid(), family, |lo, hi| {
        powf(avg(wq, lo, hi), 1.0 / q) * powf(avg(wd, lo, hi), 1.0 / p_dual)
    });
    rep.constant = powf(rep.constant, q);
    Ok(rep)
}

/// `‖b‖_BMO = sup M^# b`.
pub fn bmo_norm(b: &GridFunction, family: &BallFamily) -> f64 {
    sharp_maximal(b, family)
        .samples()
        .iter()
        .fold(0.0, |m, &v| m.max(v))
}

/// A symbol together with its estimated BMO norm.
#[derive(Debug, Clone, PartialEq)]
pub struct BmoFunction {
    b: GridFunction,
    norm: f64,
}

impl BmoFunction {
    pub fn new(b: GridFunction, family: &BallFamily) -> Self {
        let norm = bmo_norm(&b, family);
        BmoFunction { b, norm }
    }

    pub fn get(&self) -> &GridFunction {
        &self.b
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }
}

/// One John–Nirenberg exponential chain on a ball.
#[derive(Debug, Clone, PartialEq)]
pub struct JnExpReport {
    /// `‖(b − b_B)^k‖_{L^q, B}`
    pub lq: f64,
    /// `‖(b − b_B)^k‖_{A, B}` with `A(t) = exp(t^{1/k}) − 1`
    pub orlicz_power: f64,
    /// `‖b − b_B‖^k_{exp L, B}` with `exp L` given by `exp(t) − 1`
    pub exp_power: f64,
    pub bmo: f64,
    /// `exp_power / bmo^k` (0 when both vanish).
    pub constant: f64,
    /// `lq ≤ orlicz_power` (up to solver precision).
    pub left_le_middle: bool,
}

/// Evaluates the chain `‖(b−b_B)^k‖_{L^q,B} ≤ ‖(b−b_B)^k‖_{A,B} =
/// ‖b−b_B‖^k_{exp L,B} ≤ C‖b‖^k_BMO`, `k ≥ 1`.
pub fn jn_exp_check(b: &BmoFunction, ball: &Interval, k: u32, q: f64) -> Result<JnExpReport> {
    if k == 0 {
        bail!(Domain, "the exponential chain needs k ≥ 1");
    }
    if !(q > 0.0) {
        bail!(Domain, "q must be positive, got {q}");
    }
    let mean = b.get().average(ball)?;
    let dev = b.get().map(|v| (v - mean).abs());
    let dev_k = dev.map(|v| powf(v, k as f64));
    let lq_phi = YoungFunction::Power { r: q };
    let lq = if q >= 1.0 {
        luxemburg_average(&dev_k, ball, &lq_phi)?
    } else {
        let pairs = dev_k.overlap_pairs(ball)?;
        let s: f64 = pairs.iter().map(|(v, w)| powf(*v, q) * w).sum();
        powf(s / ball.len(), 1.0 / q)
    };
    let a_k = YoungFunction::exp_power(1.0 / k as f64, 1.0)?;
    let orlicz_power = luxemburg_average(&dev_k, ball, &a_k)?;
    let exp_l = YoungFunction::exp_power(1.0, 1.0)?;
    let exp_power = powf(luxemburg_average(&dev, ball, &exp_l)?, k as f64);
    let bmo_k = powf(b.norm(), k as f64);
    let constant = if exp_power == 0.0 {
        0.0
    } else {
        exp_power / bmo_k
    };
    Ok(JnExpReport {
        lq,
        orlicz_power,
        exp_power,
        bmo: b.norm(),
        constant,
        left_le_middle: lq <= orlicz_power * (1.0 + 1e-10),
    })
}

/// One row of the telescoping check `|b_B − b_{2^j B}| ≤ 2j‖b‖_BMO`.
#[derive(Debug, Clone, PartialEq)]
pub struct JnTelescopeRow {
    pub j: u32,
    pub difference: f64,
    pub bound: f64,
    pub slack: f64,
}

/// Rows for `j = 1..=j_max`, stopping when `2^j B` leaves the domain.
pub fn jn_telescope_check(
    b: &BmoFunction,
    ball: &Interval,
    j_max: u32,
) -> Result<Vec<JnTelescopeRow>> {
    let base = b.get().average(ball)?;
    let mut rows = Vec::new();
    for j in 1..=j_max {
        let big = ball.dilate(powf(2.0, j as f64));
        let Ok(mean) = b.get().average(&big) else {
            break;
        };
        let difference = (base - mean).abs();
        let bound = 2.0 * j as f64 * b.norm();
        rows.push(JnTelescopeRow {
            j,
            difference,
            bound,
            slack: bound - difference,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(16.0, 512).unwrap()
    }

    #[test]
    fn unit_weight_constants() {
        let w = Weight::new(GridFunction::constant(grid(), 1.0)).unwrap();
        let fam = BallFamily::coarse();
        for p in [1.5, 2.0, 4.0] {
            assert_eq!(ap_constant(&w, p, &fam).unwrap().constant, 1.0);
        }
        assert_eq!(a1_constant(&w, &fam).constant, 1.0);
        assert_eq!(apq_constant(&w, 1.5, 3.0, &fam).unwrap().constant, 1.0);
        assert!(Weight::new(GridFunction::zeros(grid())).is_err());
    }

    #[test]
    fn jensen_and_monotone_in_p() {
        let w = Weight::new(GridFunction::from_fn(grid(), |x| (0.3 * x.sin()).exp())).unwrap();
        let fam = BallFamily::ladder(2);
        let mut last = f64::INFINITY;
        for p in [1.5, 2.0, 3.0, 6.0] {
            let c = ap_constant(&w, p, &fam).unwrap().constant;
            assert!(c >= 1.0);
            assert!(c <= last * (1.0 + 1e-12));
            last = c;
        }
    }

    #[test]
    fn apq_two_routes_agree() {
        let w = Weight::power(grid(), 0.2);
        let fam = BallFamily::ladder(2);
        let a = apq_constant(&w, 1.5, 3.0, &fam).unwrap().constant;
        let b = apq_constant_direct(&w, 1.5, 3.0, &fam).unwrap().constant;
        assert!((a - b).abs() <= 1e-10 * a);
    }

    #[test]
    fn bmo_invariances_and_bound() {
        let fam = BallFamily::coarse();
        let b = Generator::LogAbs { center: 0.0 }.sample(grid());
        let n = bmo_norm(&b, &fam);
        assert!(n > 0.0);
        assert!((bmo_norm(&b.map(|v| v - 3.0), &fam) - n).abs() < 1e-11);
        assert!((bmo_norm(&b.scale(-2.5), &fam) - 2.5 * n).abs() < 1e-11);
        let bounded = Generator::DyadicChirp {
            radius: 4.0,
            bands: 3,
        }
        .sample(grid());
        assert!(bmo_norm(&bounded, &fam) <= 2.0 * bounded.max_abs());
        assert_eq!(bmo_norm(&GridFunction::constant(grid(), 4.0), &fam), 0.0);
    }

    #[test]
    fn john_nirenberg_chains() {
        let fam = BallFamily::coarse();
        let b = BmoFunction::new(Generator::LogAbs { center: 0.0 }.sample(grid()), &fam);
        let ball = Interval::from_endpoints(1.0, 3.0).unwrap();
        for k in [1, 2] {
            let r = jn_exp_check(&b, &ball, k, 1.0).unwrap();
            assert!(r.left_le_middle);
            assert!((r.orlicz_power - r.exp_power).abs() <= 1e-9 * r.exp_power);
            assert!(r.constant.is_finite() && r.constant > 0.0);
        }
        let rows = jn_telescope_check(&b, &Interval::from_endpoints(1.0, 2.0).unwrap(), 8).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.slack >= 0.0));
        let c = BmoFunction::new(GridFunction::constant(grid(), 2.0), &fam);
        let r = jn_exp_check(&c, &ball, 1, 1.0).unwrap();
        assert_eq!((r.lq, r.orlicz_power, r.exp_power), (0.0, 0.0, 0.0));
    }
}
