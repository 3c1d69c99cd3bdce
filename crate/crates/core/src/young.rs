//! Young functions and Luxemburg averages.
//!
//! A Young function `A: [0, ∞) → [0, ∞)` is continuous, convex,
//! nondecreasing, vanishes at 0 and tends to ∞. The Luxemburg average of
//! `f` over an interval `I` is
//!
//! ```text
//! ‖f‖_{A,I} = inf{ λ > 0 : (1/|I|) ∫_I A(|f|/λ) ≤ 1 }
//! ```
//!
//! The exponential variants `exp(t^γ) − 1` with `γ < 1` are only convex for
//! large `t`; they are kept in their literal form because every use of them
//! goes through their closed-form inverse. [`YoungFunction::convex_from`]
//! reports where convexity starts.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::grid::GridFunction;
use crate::math::{exp, expm1, ln, ln1p, powf};
use crate::solve;

/// Which logarithm a [`YoungFunction::PowerLog`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogForm {
    /// `t^r (1 + log⁺ t)^β`
    OnePlusLogPlus,
    /// `t^r log(1 + t)^β`
    LogOnePlus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum YoungFunction {
    /// `t`
    Linear,
    /// `t^r`, `r ≥ 1`
    Power {
        r: f64,
    },
    /// `c·t^r`; produced as the complement of a power.
    ScaledPower {
        coeff: f64,
        r: f64,
    },
    PowerLog {
        r: f64,
        beta: f64,
        form: LogForm,
    },
    /// `exp(t^γ) − offset`. With `offset = 0` the function is `exp(t^γ)` for
    /// `t ≥ 1` and the chord `e·t` below 1, so that it vanishes at the origin.
    ExpPower {
        gamma: f64,
        offset: f64,
    },
    /// Piecewise-linear monotone convex table through the origin.
    Table(Arc<Tabulated>),
    /// Numerical Legendre complement of another Young function.
    Conjugate(Arc<Conjugate>),
    /// The degenerate complement of `t`: 0 on `[0, 1]`, ∞ beyond. Its
    /// Luxemburg average is the essential supremum.
    EssSup,
}

impl YoungFunction {
    pub fn power(r: f64) -> Result<Self> {
        if !(r >= 1.0 && r.is_finite()) {
            bail!(Domain, "power exponent must be ≥ 1, got {r}");
        }
        Ok(if r == 1.0 {
            YoungFunction::Linear
        } else {
            YoungFunction::Power { r }
        })
    }

    /// `t^r (1 + log⁺ t)^β`.
    pub fn power_log(r: f64, beta: f64) -> Result<Self> {
        Self::power_log_with(r, beta, LogForm::OnePlusLogPlus)
    }

    /// `t^r log(1 + t)^β`.
    pub fn power_log1p(r: f64, beta: f64) -> Result<Self> {
        Self::power_log_with(r, beta, LogForm::LogOnePlus)
    }

    pub fn power_log_with(r: f64, beta: f64, form: LogForm) -> Result<Self> {
        if !(r >= 1.0 && r.is_finite()) {
            bail!(Domain, "power exponent must be ≥ 1, got {r}");
        }
        if !(beta >= 0.0 && beta.is_finite()) {
            bail!(Domain, "log exponent must be ≥ 0, got {beta}");
        }
        Ok(YoungFunction::PowerLog { r, beta, form })
    }

    pub fn exp_power(gamma: f64, offset: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            bail!(Domain, "exp-power exponent must be positive, got {gamma}");
        }
        if offset != 0.0 && offset != 1.0 {
            bail!(Domain, "exp-power offset must be 0 or 1, got {offset}");
        }
        Ok(YoungFunction::ExpPower { gamma, offset })
    }

    /// `exp(t^{1/(1+k)}) − 1`, the Young function of the dagger condition
    /// for the square kernel with commutator order `k`.
    pub fn exp_log_class(k: u32) -> Self {
        YoungFunction::ExpPower {
            gamma: 1.0 / (1.0 + k as f64),
            offset: 1.0,
        }
    }

    /// `exp(t^{1/k})` (for `t ≥ 1`), `k ≥ 1`; for `k = 0` the degenerate
    /// function whose inverse is identically 1.
    pub fn exp_class_complement(k: u32) -> Self {
        if k == 0 {
            YoungFunction::EssSup
        } else {
            YoungFunction::ExpPower {
                gamma: 1.0 / k as f64,
                offset: 0.0,
            }
        }
    }

    /// Custom Young function from a table of `(t, A(t))` with `t > 0`
    /// strictly increasing. The table must be nondecreasing and convex once
    /// the origin is prepended.
    pub fn table(points: &[(f64, f64)]) -> Result<Self> {
        Ok(YoungFunction::Table(Arc::new(Tabulated::new(points)?)))
    }

    /// Value at `t ≥ 0`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            bail!(Domain, "Young functions are defined on [0, ∞), got {t}");
        }
        Ok(self.value(t))
    }

    /// Unchecked evaluation; `t` must be nonnegative.
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        match self {
            YoungFunction::Linear => t,
            YoungFunction::Power { r } => powf(t, *r),
            YoungFunction::ScaledPower { coeff, r } => coeff * powf(t, *r),
            YoungFunction::PowerLog { r, beta, form } => {
                if t == 0.0 {
                    return 0.0;
                }
                let log_part = match form {
                    LogForm::OnePlusLogPlus => {
                        if t > 1.0 {
                            1.0 + ln(t)
                        } else {
                            1.0
                        }
                    }
                    LogForm::LogOnePlus => ln1p(t),
                };
                let p = if *r == 1.0 { t } else { powf(t, *r) };
                if *beta == 0.0 {
                    p
                } else if *beta == 1.0 {
                    p * log_part
                } else {
                    p * powf(log_part, *beta)
                }
            }
            YoungFunction::ExpPower { gamma, offset } => {
                let tg = if *gamma == 1.0 { t } else { powf(t, *gamma) };
                if *offset == 1.0 {
                    expm1(tg)
                } else if t >= 1.0 {
                    exp(tg)
                } else {
                    core::f64::consts::E * t
                }
            }
            YoungFunction::Table(tab) => tab.value(t),
            YoungFunction::Conjugate(conj) => conj.value(t),
            YoungFunction::EssSup => {
                if t <= 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// `t` with `A(t) = s`; closed form where available, otherwise bisection
    /// to relative tolerance 1e-13. `inverse(0) = 0`, and the degenerate
    /// [`YoungFunction::EssSup`] has inverse identically 1 on `(0, ∞)`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if s.is_nan() || s < 0.0 {
            bail!(Domain, "inverse needs s ≥ 0, got {s}");
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        Ok(match self {
            YoungFunction::Linear => s,
            YoungFunction::Power { r } => powf(s, 1.0 / r),
            YoungFunction::ScaledPower { coeff, r } => powf(s / coeff, 1.0 / r),
            YoungFunction::ExpPower { gamma, offset } => {
                if *offset == 1.0 {
                    powf(ln1p(s), 1.0 / gamma)
                } else if s >= core::f64::consts::E {
                    powf(ln(s), 1.0 / gamma)
                } else {
                    s / core::f64::consts::E
                }
            }
            YoungFunction::EssSup => 1.0,
            _ => solve::increasing_inverse(|t| self.value(t), s, 1e-13),
        })
    }

    /// The complementary function `Ā(s) = sup_{t ≥ 0} (s t − A(t))`.
    ///
    /// Powers have closed forms; `t` and the degenerate function are each
    /// other's complements; everything else gets a numerical sup over a
    /// log-spaced grid of 4096 points per decade on `[1e-8, 1e8]`.
    pub fn complementary(&self) -> YoungFunction {
        match self {
            YoungFunction::Linear => YoungFunction::EssSup,
            YoungFunction::EssSup => YoungFunction::Linear,
            YoungFunction::Power { r } => scaled_power_conjugate(1.0, *r),
            YoungFunction::ScaledPower { coeff, r } => scaled_power_conjugate(*coeff, *r),
            other => YoungFunction::Conjugate(Arc::new(Conjugate::new(other))),
        }
    }

    /// Smallest `t` from which the function is convex.
    pub fn convex_from(&self) -> f64 {
        match self {
            YoungFunction::ExpPower { gamma, offset } if *gamma < 1.0 => {
                let t = powf((1.0 - gamma) / gamma, 1.0 / gamma);
                if *offset == 0.0 {
                    t.max(1.0)
                } else {
                    t
                }
            }
            YoungFunction::ExpPower { offset, .. } if *offset == 0.0 => 1.0,
            _ => 0.0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, YoungFunction::EssSup)
    }
}

fn scaled_power_conjugate(coeff: f64, r: f64) -> YoungFunction {
    if r == 1.0 {
        // sup_t (s − c) t is 0 for s ≤ c and ∞ beyond: a rescaled ess-sup.
        if coeff == 1.0 {
            return YoungFunction::EssSup;
        }
        return YoungFunction::Conjugate(Arc::new(Conjugate::new(&YoungFunction::ScaledPower {
            coeff,
            r,
        })));
    }
    let dual = r / (r - 1.0);
    YoungFunction::ScaledPower {
        coeff: (r - 1.0) * coeff * powf(coeff * r, -dual),
        r: dual,
    }
}

/// A custom Young function given by a monotone convex table.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    t: Vec<f64>,
    v: Vec<f64>,
}

impl Tabulated {
    fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            bail!(Input, "a Young table needs at least one point");
        }
        let mut t = Vec::with_capacity(points.len() + 1);
        let mut v = Vec::with_capacity(points.len() + 1);
        t.push(0.0);
        v.push(0.0);
        for &(ti, vi) in points {
            if !(ti.is_finite() && vi.is_finite()) {
                bail!(Input, "non-finite Young table entry ({ti}, {vi})");
            }
            t.push(ti);
            v.push(vi);
        }
        let mut last_slope = 0.0;
        for i in 1..t.len() {
            if t[i] <= t[i - 1] {
                bail!(Input, "Young table abscissae must increase strictly");
            }
            let slope = (v[i] - v[i - 1]) / (t[i] - t[i - 1]);
            if slope < 0.0 {
                bail!(Input, "Young table must be nondecreasing");
            }
            if slope < last_slope * (1.0 - 1e-12) {
                bail!(Input, "Young table must be convex");
            }
            last_slope = slope;
        }
        if last_slope <= 0.0 {
            bail!(Input, "Young table must grow without bound");
        }
        Ok(Tabulated { t, v })
    }

    fn value(&self, s: f64) -> f64 {
        let n = self.t.len();
        let i = match self.t.binary_search_by(|x| x.total_cmp(&s)) {
            Ok(i) => return self.v[i],
            Err(i) => i,
        };
        let (a, b) = if i >= n { (n - 2, n - 1) } else { (i - 1, i) };
        let slope = (self.v[b] - self.v[a]) / (self.t[b] - self.t[a]);
        self.v[a] + slope * (s - self.t[a])
    }
}

/// Discrete Legendre complement over the lower convex hull of a sampled
/// Young function.
#[derive(Debug, Clone, PartialEq)]
pub struct Conjugate {
    t: Vec<f64>,
    v: Vec<f64>,
}

impl Conjugate {
    const PER_DECADE: usize = 4096;
    const LOG10_MIN: i32 = -8;
    const LOG10_MAX: i32 = 8;

    fn new(of: &YoungFunction) -> Self {
        let decades = (Self::LOG10_MAX - Self::LOG10_MIN) as usize;
        let n = decades * Self::PER_DECADE + 1;
        let mut hull_t: Vec<f64> = Vec::with_capacity(1024);
        let mut hull_v: Vec<f64> = Vec::with_capacity(1024);
        hull_t.push(0.0);
        hull_v.push(0.0);
        for i in 0..n {
            let t = powf(
                10.0,
                Self::LOG10_MIN as f64 + i as f64 / Self::PER_DECADE as f64,
            );
            let v = of.value(t);
            if !v.is_finite() {
                break;
            }
            // Monotone-chain lower hull: pop while the last point lies on or
            // above the chord from its predecessor to the new point.
            while hull_t.len() >= 2 {
                let k = hull_t.len();
                let (t0, v0) = (hull_t[k - 2], hull_v[k - 2]);
                let (t1, v1) = (hull_t[k - 1], hull_v[k - 1]);
                let cross = (t1 - t0) * (v - v0) - (v1 - v0) * (t - t0);
                if cross <= 0.0 {
                    hull_t.pop();
                    hull_v.pop();
                } else {
                    break;
                }
            }
            hull_t.push(t);
            hull_v.push(v);
        }
        Conjugate {
            t: hull_t,
            v: hull_v,
        }
    }

    fn value(&self, s: f64) -> f64 {
        // Hull slopes increase, so s·t − A(t) is unimodal along the hull:
        // the maximiser is the first vertex whose outgoing slope exceeds s.
        let n = self.t.len();
        let (mut lo, mut hi) = (0usize, n - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let slope = (self.v[mid + 1] - self.v[mid]) / (self.t[mid + 1] - self.t[mid]);
            if slope < s {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        (s * self.t[lo] - self.v[lo]).max(0.0)
    }
}

/// Luxemburg average for a function given as `(|value|, measure)` pairs
/// inside a set of total measure `measure`.
///
/// Pairs may cover only part of the set; the rest is taken as zero.
pub fn luxemburg_pairs(pairs: &[(f64, f64)], measure: f64, phi: &YoungFunction) -> f64 {
    let mut vmax: f64 = 0.0;
    let mut mass = 0.0;
    for &(v, w) in pairs {
        if w > 0.0 {
            vmax = vmax.max(v.abs());
            mass += v.abs() * w;
        }
    }
    if vmax == 0.0 {
        return 0.0;
    }
    if phi.is_degenerate() {
        return vmax;
    }
    let guess = (mass / measure).max(vmax * 1e-3);
    luxemburg_pairs_bracketed(pairs, measure, phi, guess * 0.5, guess * 2.0)
}

/// [`luxemburg_pairs`] with a caller-supplied initial bracket; the bracket
/// is widened if it does not contain the answer.
pub(crate) fn luxemburg_pairs_bracketed(
    pairs: &[(f64, f64)],
    measure: f64,
    phi: &YoungFunction,
    lo: f64,
    hi: f64,
) -> f64 {
    if phi.is_degenerate() {
        return pairs
            .iter()
            .filter(|p| p.1 > 0.0)
            .fold(0.0, |m, p| m.max(p.0.abs()));
    }
    if pairs.iter().all(|p| p.0 == 0.0 || p.1 <= 0.0) {
        return 0.0;
    }
    solve::decreasing_crossing(
        |lambda| {
            let mut acc = 0.0;
            for &(v, w) in pairs {
                if w > 0.0 && v != 0.0 {
                    acc += w * phi.value(v.abs() / lambda);
                }
            }
            acc / measure
        },
        lo,
        hi,
    )
}

/// `‖c·χ_E‖_{A,I} = c / A⁻¹(|I|/|E|)`.
pub fn indicator_average(
    c: f64,
    set_measure: f64,
    measure: f64,
    phi: &YoungFunction,
) -> Result<f64> {
    if set_measure <= 0.0 || c == 0.0 {
        return Ok(0.0);
    }
    if set_measure > measure * (1.0 + 1e-12) {
        bail!(Domain, "the set is larger than the ambient interval");
    }
    Ok(c.abs() / phi.inverse(measure / set_measure)?)
}

/// Luxemburg average of a grid function over an interval, using exact
/// cell overlaps.
pub fn luxemburg_average(
    f: &GridFunction,
    interval: &Interval,
    phi: &YoungFunction,
) -> Result<f64> {
    let pairs = f.overlap_pairs(interval)?;
    if pairs.iter().any(|(v, _)| !v.is_finite()) {
        bail!(Input, "non-finite samples inside the interval");
    }
    Ok(luxemburg_pairs(&pairs, interval.len(), phi))
}

/// A ball in ℝ: `(center − radius, center + radius)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub center: f64,
    pub radius: f64,
}

impl Interval {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            bail!(Domain, "interval needs a finite center and positive radius");
        }
        Ok(Interval { center, radius })
    }

    pub fn from_endpoints(lo: f64, hi: f64) -> Result<Self> {
        Self::new(0.5 * (lo + hi), 0.5 * (hi - lo))
    }

    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }

    /// `|B| = 2·radius`.
    pub fn len(&self) -> f64 {
        2.0 * self.radius
    }

    /// Same center, radius multiplied by `factor`.
    pub fn dilate(&self, factor: f64) -> Interval {
        Interval {
            center: self.center,
            radius: self.radius * factor,
        }
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo() <= other.lo() && other.hi() <= self.hi()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_variants() -> Vec<YoungFunction> {
        vec![
            YoungFunction::Linear,
            YoungFunction::power(2.0).unwrap(),
            YoungFunction::power(1.5).unwrap(),
            YoungFunction::power_log(1.0, 1.0).unwrap(),
            YoungFunction::power_log(1.0, 2.0).unwrap(),
            YoungFunction::power_log1p(2.0, 1.0).unwrap(),
            YoungFunction::exp_log_class(0),
            YoungFunction::exp_log_class(1),
            YoungFunction::exp_power(1.0, 0.0).unwrap(),
            YoungFunction::table(&[(1.0, 1.0), (2.0, 3.0), (4.0, 10.0)]).unwrap(),
        ]
    }

    #[test]
    fn direct_values() {
        assert_eq!(YoungFunction::power(2.0).unwrap().eval(2.0).unwrap(), 4.0);
        let e = YoungFunction::exp_power(1.0, 1.0).unwrap();
        assert!((e.eval(core::f64::consts::LN_2).unwrap() - 1.0).abs() < 1e-15);
        for phi in all_variants() {
            assert_eq!(phi.eval(0.0).unwrap(), 0.0, "{phi:?}");
        }
        assert!(YoungFunction::Linear.eval(-1.0).is_err());
    }

    #[test]
    fn closed_form_inverses() {
        assert_eq!(
            YoungFunction::power(2.0).unwrap().inverse(4.0).unwrap(),
            2.0
        );
        let a0 = YoungFunction::exp_log_class(0);
        assert!((a0.inverse(1.0).unwrap() - core::f64::consts::LN_2).abs() < 1e-15);
        let a2 = YoungFunction::exp_log_class(2);
        let s: f64 = 7.5;
        assert!((a2.inverse(s).unwrap() - s.ln_1p().powi(3)).abs() < 1e-12);
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for phi in all_variants() {
            for _ in 0..100 {
                let t: f64 = rng.gen_range(1e-3..50.0);
                let s = phi.value(t);
                if !s.is_finite() {
                    continue;
                }
                let back = phi.inverse(s).unwrap();
                assert!(
                    (back - t).abs() <= 1e-10 * t.max(1.0),
                    "{phi:?} t={t} back={back}"
                );
            }
        }
    }

    #[test]
    fn monotone_and_convex_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for phi in all_variants() {
            let start = phi.convex_from();
            for _ in 0..500 {
                let a: f64 = start + rng.gen_range(0.0..20.0);
                let b: f64 = a + rng.gen_range(0.0..20.0);
                let th: f64 = rng.gen_range(0.0..1.0);
                let (fa, fb) = (phi.value(a), phi.value(b));
                assert!(fa <= fb, "{phi:?} not monotone");
                let mid = phi.value(th * a + (1.0 - th) * b);
                if fb.is_finite() {
                    assert!(
                        mid <= th * fa + (1.0 - th) * fb + 1e-9 * fb.max(1.0),
                        "{phi:?}"
                    );
                }
            }
            assert!(phi.value(1e6) > 1e5, "{phi:?} does not blow up");
        }
    }

    #[test]
    fn linear_complement_is_ess_sup() {
        let d = YoungFunction::Linear.complementary();
        assert_eq!(d, YoungFunction::EssSup);
        assert_eq!(d.inverse(123.0).unwrap(), 1.0);
        assert_eq!(d.value(0.5), 0.0);
        assert!(d.value(1.5).is_infinite());
    }

    #[test]
    fn power_complement_closed_form() {
        let c = YoungFunction::power(2.0).unwrap().complementary();
        // sup_t (st − t²) = s²/4
        assert!((c.value(3.0) - 2.25).abs() < 1e-14);
    }

    #[test]
    fn young_inequality_for_complements() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for phi in all_variants() {
            let comp = phi.complementary();
            for _ in 0..10_000 {
                let s: f64 = powf(10.0, rng.gen_range(-3.0..3.0));
                let t: f64 = powf(10.0, rng.gen_range(-3.0..1.5));
                let rhs = phi.value(t) + comp.value(s);
                assert!(s * t <= rhs * (1.0 + 1e-6) + 1e-12, "{phi:?} s={s} t={t}");
            }
        }
    }

    #[test]
    fn inverse_product_bracket() {
        // t ≤ A⁻¹(t)·Ā⁻¹(t) ≤ 2t for t ≥ 1.
        for phi in all_variants() {
            if matches!(phi, YoungFunction::Table(_)) {
                continue;
            }
            let comp = phi.complementary();
            let mut t: f64 = phi.value(phi.convex_from()).max(1.0);
            while t < 1e6 {
                let p = phi.inverse(t).unwrap() * comp.inverse(t).unwrap();
                assert!(
                    p >= t * (1.0 - 1e-6) && p <= 2.0 * t * (1.0 + 1e-6),
                    "{phi:?} t={t} p={p}"
                );
                t *= 1.7;
            }
        }
    }

    #[test]
    fn luxemburg_power_closed_form() {
        let grid = Grid::new(8.0, 256).unwrap();
        let f = GridFunction::from_fn(grid, |x| libm::sin(3.0 * x) + 0.3 * x);
        let i = Interval::new(0.7, 2.3).unwrap();
        for r in [1.0, 1.5, 2.0, 3.0] {
            let phi = YoungFunction::power(r).unwrap();
            let lux = luxemburg_average(&f, &i, &phi).unwrap();
            let pairs = f.overlap_pairs(&i).unwrap();
            let direct: f64 =
                pairs.iter().map(|(v, w)| w * powf(v.abs(), r)).sum::<f64>() / i.len();
            let expected = powf(direct, 1.0 / r);
            assert!((lux - expected).abs() <= 1e-10 * expected);
        }
    }

    #[test]
    fn luxemburg_of_constant_and_indicator() {
        let grid = Grid::new(4.0, 64).unwrap();
        let c = GridFunction::from_fn(grid, |_| 3.0);
        let i = Interval::new(0.0, 1.0).unwrap();
        for phi in [
            YoungFunction::Linear,
            YoungFunction::power(2.0).unwrap(),
            YoungFunction::power_log(1.0, 2.0).unwrap(),
        ] {
            assert!((luxemburg_average(&c, &i, &phi).unwrap() - 3.0).abs() < 1e-11);
        }
        // χ_[0,1] on [-1, 1]: 1 / A⁻¹(2).
        let chi = GridFunction::from_fn(grid, |x| if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 });
        for phi in all_variants() {
            let lux = luxemburg_average(&chi, &i, &phi).unwrap();
            let expected = 1.0 / phi.inverse(2.0).unwrap();
            assert!((lux - expected).abs() <= 1e-10 * expected, "{phi:?}");
        }
        let zero = GridFunction::zeros(Grid::new(4.0, 64).unwrap());
        assert_eq!(
            luxemburg_average(&zero, &i, &YoungFunction::Linear).unwrap(),
            0.0
        );
    }

    #[test]
    fn ess_sup_average() {
        let grid = Grid::new(4.0, 64).unwrap();
        let f = GridFunction::from_fn(grid, |x| x);
        let i = Interval::new(0.0, 1.0).unwrap();
        let v = luxemburg_average(&f, &i, &YoungFunction::EssSup).unwrap();
        assert!((v - 0.9375).abs() < 1e-15);
    }

    #[test]
    fn table_variant_interpolates() {
        let t = YoungFunction::table(&[(1.0, 1.0), (2.0, 3.0)]).unwrap();
        assert_eq!(t.value(0.5), 0.5);
        assert_eq!(t.value(1.5), 2.0);
        assert_eq!(t.value(3.0), 5.0);
        assert!(YoungFunction::table(&[(1.0, 3.0), (2.0, 4.0)]).is_err());
    }
}
