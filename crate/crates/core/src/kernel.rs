//! The dyadic square-operator kernel and the Hörmander-type evaluators.
//!
//! `K_l(z) = 2^{-(l+1)} χ_{(−2^l, 2^l)}(z) − 2^{-l} χ_{(−2^{l−1}, 2^{l−1})}(z)`,
//! so `K_l = −2^{-(l+1)}` on `|z| < 2^{l−1}`, `+2^{-(l+1)}` on
//! `2^{l−1} ≤ |z| < 2^l` and 0 beyond. The fractional variant is
//! `K_{α,l}(z) = |z|^α K_l(z)`.
//!
//! Annulus norms are computed from the exact piecewise structure of the
//! kernel differences. Breakpoints are kept as `big + small` pairs, where
//! `big` is a dyadic scale and `small` is 0 or a multiple of the
//! displacement, so pieces of length `|x|` next to points of size `2^80|x|`
//! keep their exact length.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{bail, Result};
use crate::math::{expm1, ln1p, pow2, pow_k, powf};
use crate::quad::GaussLegendre;
use crate::seqnorm::SeqNorm;
use crate::young::{luxemburg_pairs, YoungFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicKernel {
    l_min: i32,
    l_max: i32,
    alpha: f64,
}

impl DyadicKernel {
    pub fn new(l_min: i32, l_max: i32, alpha: f64) -> Result<Self> {
        if l_min > l_max {
            bail!(Config, "empty level window [{l_min}, {l_max}]");
        }
        if !(0.0..1.0).contains(&alpha) {
            bail!(Domain, "fractional order must lie in [0, 1), got {alpha}");
        }
        Ok(DyadicKernel {
            l_min,
            l_max,
            alpha,
        })
    }

    /// The square kernel on `[l_min, l_max]`.
    pub fn square(l_min: i32, l_max: i32) -> Result<Self> {
        Self::new(l_min, l_max, 0.0)
    }

    pub fn l_min(&self) -> i32 {
        self.l_min
    }

    pub fn l_max(&self) -> i32 {
        self.l_max
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn levels(&self) -> core::ops::RangeInclusive<i32> {
        self.l_min..=self.l_max
    }

    pub fn with_window(&self, l_min: i32, l_max: i32) -> Result<Self> {
        Self::new(l_min, l_max, self.alpha)
    }

    /// `K_{α,l}(z)`; open intervals, so the value at `|z| = 2^l` is 0.
    pub fn eval_level(&self, l: i32, z: f64) -> Result<f64> {
        if l < self.l_min || l > self.l_max {
            bail!(
                Domain,
                "level {l} outside the window [{}, {}]",
                self.l_min,
                self.l_max
            );
        }
        let h = box_height(l, z.abs());
        Ok(if self.alpha == 0.0 || h == 0.0 {
            h
        } else {
            h * powf(z.abs(), self.alpha)
        })
    }
}

/// `K_l` at a point with `|z| = a`.
#[inline]
fn box_height(l: i32, a: f64) -> f64 {
    if a < pow2(l - 1) {
        -pow2(-(l + 1))
    } else if a < pow2(l) {
        pow2(-(l + 1))
    } else {
        0.0
    }
}

/// `|K_l(y − x) − K_l(y − x₀)|` from the closed-form table, valid for
/// `i < j`, `|x − x₀| < 2^i` and `2^j < |y − x₀| < 2^{j+1}`.
///
/// The table describes its sets as open intervals between `x ± 2^p` and
/// `x₀ ± 2^p`; membership is tested through `y − x` and `y − x₀`.
pub fn diff_table(i: i32, j: i32, x: f64, x0: f64, l: i32, y: f64) -> Result<f64> {
    if i >= j {
        bail!(Precondition, "the table needs i < j, got i = {i}, j = {j}");
    }
    if !((x - x0).abs() < pow2(i)) {
        bail!(Precondition, "|x − x₀| must be below 2^{i}");
    }
    let d = y - x;
    let d0 = y - x0;
    if !(d0.abs() > pow2(j) && d0.abs() < pow2(j + 1)) {
        bail!(
            Precondition,
            "y must lie in the open annulus 2^{j} < |y − x₀| < 2^{}",
            j + 1
        );
    }
    let between = |rho: f64| -> bool {
        let left = (d > -rho && d0 < -rho) || (d0 > -rho && d < -rho);
        let right = (d0 > rho && d < rho) || (d > rho && d0 < rho);
        left || right
    };
    let near = if between(pow2(j)) {
        pow2(-(j + 1))
    } else {
        0.0
    };
    let far = if between(pow2(j + 1)) {
        pow2(-(j + 2))
    } else {
        0.0
    };
    Ok(match l - j {
        0 => near,
        1 => far + near,
        2 => far,
        _ => 0.0,
    })
}

/// A point `big + small` kept unsummed.
#[derive(Debug, Clone, Copy)]
struct Pt {
    big: f64,
    small: f64,
}

impl Pt {
    fn new(big: f64, small: f64) -> Self {
        Pt { big, small }
    }

    fn cmp(&self, other: &Pt) -> Ordering {
        let (s, e) = two_sum(self.big - other.big, self.small - other.small);
        let v = if s != 0.0 { s } else { e };
        v.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    fn minus(&self, x: f64) -> (f64, f64) {
        two_sum(self.big, self.small - x)
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `|hi + lo| < rho` for an exact unevaluated sum.
fn abs_below(hi: f64, lo: f64, rho: f64) -> bool {
    let below = hi < rho || (hi == rho && lo < 0.0);
    let above = hi > -rho || (hi == -rho && lo > 0.0);
    below && above
}

fn height_split(l: i32, (hi, lo): (f64, f64)) -> f64 {
    if abs_below(hi, lo, pow2(l - 1)) {
        -pow2(-(l + 1))
    } else if abs_below(hi, lo, pow2(l)) {
        pow2(-(l + 1))
    } else {
        0.0
    }
}

/// Which Hörmander-type quantity a query evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Norm over levels inside the annulus average.
    Plain,
    /// Norm over levels of per-level annulus sums.
    Dagger,
    /// The dagger quantity with weights `(2^m R)^{1−α}`.
    FractionalDagger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HormanderQuery {
    pub phi: YoungFunction,
    pub k: u32,
    pub x_norm: SeqNorm,
    /// Displacement `x`.
    pub x: f64,
    /// Scale `R`.
    pub r: f64,
    /// Gate constant: `R > c_A·|x|` is required.
    pub c_a: f64,
    pub m_max: u32,
    pub flavor: Flavor,
}

impl HormanderQuery {
    pub const DEFAULT_C_A: f64 = 4.0;

    pub fn new(
        phi: YoungFunction,
        k: u32,
        x_norm: SeqNorm,
        x: f64,
        r: f64,
        m_max: u32,
        flavor: Flavor,
    ) -> Self {
        HormanderQuery {
            phi,
            k,
            x_norm,
            x,
            r,
            c_a: Self::DEFAULT_C_A,
            m_max,
            flavor,
        }
    }

    pub fn with_c_a(mut self, c_a: f64) -> Self {
        self.c_a = c_a;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c_a > 1.0) {
            bail!(Config, "c_A must exceed 1, got {}", self.c_a);
        }
        if !(self.r > 0.0 && self.r.is_finite() && self.x.is_finite()) {
            bail!(Config, "R must be positive and x finite");
        }
        if !(self.r > self.c_a * self.x.abs()) {
            bail!(
                Config,
                "the gate R > c_A·|x| fails: R = {}, c_A·|x| = {}",
                self.r,
                self.c_a * self.x.abs()
            );
        }
        if self.m_max < 1 {
            bail!(Config, "m_max must be at least 1");
        }
        Ok(())
    }
}

/// Value of a dagger-type query with its per-level sums.
#[derive(Debug, Clone, PartialEq)]
pub struct DaggerReport {
    pub value: f64,
    pub per_level: Vec<(i32, f64)>,
}

/// Value of a plain query with its per-annulus terms.
#[derive(Debug, Clone, PartialEq)]
pub struct PlainReport {
    pub value: f64,
    pub per_annulus: Vec<(u32, f64)>,
}

const GAUSS_NODES: usize = 8;
const GAUSS_PANELS: usize = 2;

impl DyadicKernel {
    /// Piece boundaries of `K_l(· − x) − K_l(·)` inside `s < y ≤ 2s`
    /// (`side = 1`) or `−2s ≤ y < −s` (`side = −1`), for the given levels.
    fn pieces(levels: &[i32], x: f64, s: f64, side: f64, out: &mut Vec<Pt>) {
        out.clear();
        let lo = Pt::new(side * s, 0.0);
        let hi = Pt::new(side * 2.0 * s, 0.0);
        let (lo, hi) = if side > 0.0 { (lo, hi) } else { (hi, lo) };
        out.push(lo);
        out.push(hi);
        for &l in levels {
            for p in [pow2(l - 1), pow2(l)] {
                for sign in [1.0, -1.0] {
                    for small in [0.0, x] {
                        let pt = Pt::new(sign * p, small);
                        if pt.cmp(&lo) == Ordering::Greater && pt.cmp(&hi) == Ordering::Less {
                            out.push(pt);
                        }
                    }
                }
            }
        }
        out.sort_by(|a, b| a.cmp(b));
        out.dedup_by(|a, b| a.cmp(b) == Ordering::Equal);
    }

    /// `(|K_{α,l}(y − x) − K_{α,l}(y)|, weight)` pairs over the annulus
    /// `s < |y| ≤ 2s`.
    fn level_pairs(
        &self,
        l: i32,
        x: f64,
        s: f64,
        rule: &GaussLegendre,
        buf: &mut Vec<Pt>,
        out: &mut Vec<(f64, f64)>,
    ) {
        out.clear();
        for side in [1.0, -1.0] {
            Self::pieces(&[l], x, s, side, buf);
            for w in buf.windows(2) {
                let (a, b) = (w[0], w[1]);
                let len = (b.big - a.big) + (b.small - a.small);
                if !(len > 0.0) {
                    continue;
                }
                let mid = Pt::new(0.5 * (a.big + b.big), 0.5 * (a.small + b.small));
                if self.alpha == 0.0 {
                    let v = height_split(l, mid.minus(x)) - height_split(l, mid.minus(0.0));
                    if v != 0.0 {
                        out.push((v.abs(), len));
                    }
                } else {
                    let mut nodes = Vec::with_capacity(GAUSS_NODES * GAUSS_PANELS);
                    rule.push_nodes(-0.5 * len, 0.5 * len, GAUSS_PANELS, &mut nodes);
                    for (t, wt) in nodes {
                        let y = Pt::new(mid.big, mid.small + t);
                        let v = self.fractional_difference(l, x, y);
                        if v != 0.0 {
                            out.push((v.abs(), wt));
                        }
                    }
                }
            }
        }
    }

    /// `K_{α,l}(y − x) − K_{α,l}(y)` with the power difference evaluated
    /// without cancellation when both points share a kernel zone.
    fn fractional_difference(&self, l: i32, x: f64, y: Pt) -> f64 {
        let shifted = y.minus(x);
        let plain = y.minus(0.0);
        let h1 = height_split(l, shifted);
        let h0 = height_split(l, plain);
        let yv = plain.0 + plain.1;
        let a = self.alpha;
        if h1 == h0 {
            if h0 == 0.0 {
                return 0.0;
            }
            // |y − x|^α − |y|^α = |y|^α ((1 − x/y)^α − 1)
            let u = x / yv;
            h0 * powf(yv.abs(), a) * expm1(a * ln1p(-u))
        } else {
            let zv = shifted.0 + shifted.1;
            h1 * powf(zv.abs(), a) - h0 * powf(yv.abs(), a)
        }
    }

    /// Luxemburg average over `B(0, 2s)` of the given pairs; a single
    /// height uses `c / A⁻¹(|B|/|E|)` directly.
    fn annulus_average(pairs: &[(f64, f64)], s: f64, phi: &YoungFunction) -> Result<f64> {
        if pairs.is_empty() {
            return Ok(0.0);
        }
        let measure = 4.0 * s;
        let c = pairs[0].0;
        if pairs.iter().all(|p| p.0 == c) {
            let e: f64 = pairs.iter().map(|p| p.1).sum();
            return Ok(c / phi.inverse(measure / e)?);
        }
        Ok(luxemburg_pairs(pairs, measure, phi))
    }

    /// Per-level annulus sums and their `X`-norm.
    pub fn dagger_sum(&self, q: &HormanderQuery) -> Result<DaggerReport> {
        q.validate()?;
        if q.flavor == Flavor::Plain {
            bail!(
                Config,
                "dagger_sum needs the dagger or fractional-dagger flavour"
            );
        }
        if q.flavor == Flavor::Dagger && self.alpha != 0.0 {
            bail!(
                Config,
                "the dagger flavour needs α = 0; use the fractional flavour"
            );
        }
        let exponent = 1.0
            - if q.flavor == Flavor::FractionalDagger {
                self.alpha
            } else {
                0.0
            };
        let rule = GaussLegendre::new(GAUSS_NODES);
        let mut buf = Vec::new();
        let mut pairs = Vec::new();
        let mut per_level = Vec::with_capacity((self.l_max - self.l_min + 1) as usize);
        for l in self.levels() {
            let mut sum = 0.0;
            if q.x != 0.0 {
                for m in 1..=q.m_max {
                    let s = pow2(m as i32) * q.r;
                    // Differences live within |x| of the kernel breakpoints.
                    if self.alpha == 0.0
                        && (pow2(l) + q.x.abs() <= s || pow2(l - 1) - q.x.abs() >= 2.0 * s)
                    {
                        continue;
                    }
                    if self.alpha != 0.0 && pow2(l) + q.x.abs() <= s {
                        continue;
                    }
                    self.level_pairs(l, q.x, s, &rule, &mut buf, &mut pairs);
                    let avg = Self::annulus_average(&pairs, s, &q.phi)?;
                    if avg != 0.0 {
                        sum += powf(s, exponent) * pow_k(m as f64, q.k) * avg;
                    }
                }
            }
            per_level.push((l, sum));
        }
        let entries: Vec<(i64, f64)> = per_level.iter().map(|&(l, v)| (l as i64, v)).collect();
        Ok(DaggerReport {
            value: q.x_norm.norm_indexed(&entries),
            per_level,
        })
    }

    /// `Σ_m 2^m R · m^k · ‖ ‖{K_l(· − x) − K_l(·)}_l‖_X ‖_{A, |y| ∼ 2^m R}`
    /// over the window's levels; `α = 0` only.
    pub fn plain_sum(&self, q: &HormanderQuery) -> Result<PlainReport> {
        q.validate()?;
        if q.flavor != Flavor::Plain {
            bail!(Config, "plain_sum needs the plain flavour");
        }
        if self.alpha != 0.0 {
            bail!(Config, "plain_sum is defined for α = 0 only");
        }
        let levels: Vec<i32> = self.levels().collect();
        let mut buf = Vec::new();
        let mut pairs: Vec<(f64, f64)> = Vec::new();
        let mut coords: Vec<(i64, f64)> = Vec::new();
        let mut per_annulus = Vec::with_capacity(q.m_max as usize);
        let mut total = 0.0;
        for m in 1..=q.m_max {
            let s = pow2(m as i32) * q.r;
            pairs.clear();
            if q.x != 0.0 {
                let active: Vec<i32> = levels
                    .iter()
                    .copied()
                    .filter(|&l| pow2(l) + q.x.abs() > s && pow2(l - 1) - q.x.abs() < 2.0 * s)
                    .collect();
                if !active.is_empty() {
                    for side in [1.0, -1.0] {
                        Self::pieces(&active, q.x, s, side, &mut buf);
                        for w in buf.windows(2) {
                            let (a, b) = (w[0], w[1]);
                            let len = (b.big - a.big) + (b.small - a.small);
                            if !(len > 0.0) {
                                continue;
                            }
                            let mid = Pt::new(0.5 * (a.big + b.big), 0.5 * (a.small + b.small));
                            coords.clear();
                            for &l in &active {
                                let v = height_split(l, mid.minus(q.x))
                                    - height_split(l, mid.minus(0.0));
                                if v != 0.0 {
                                    coords.push((l as i64, v));
                                }
                            }
                            if !coords.is_empty() {
                                let g = q.x_norm.norm_indexed(&coords);
                                if g != 0.0 {
                                    pairs.push((g, len));
                                }
                            }
                        }
                    }
                }
            }
            let avg = Self::annulus_average(&pairs, s, &q.phi)?;
            let term = s * pow_k(m as f64, q.k) * avg;
            per_annulus.push((m, term));
            total += term;
        }
        Ok(PlainReport {
            value: total,
            per_annulus,
        })
    }

    /// `‖K_{α,l}‖_{A, |z| ∼ s}`.
    pub fn size_norm(&self, l: i32, phi: &YoungFunction, s: f64) -> Result<f64> {
        if pow2(l) <= s {
            return Ok(0.0);
        }
        let rule = GaussLegendre::new(GAUSS_NODES);
        let mut pairs = Vec::new();
        for _ in 0..2 {
            let mut cuts = alloc::vec![s, 2.0 * s];
            for p in [pow2(l - 1), pow2(l)] {
                if p > s && p < 2.0 * s {
                    cuts.push(p);
                }
            }
            cuts.sort_by(f64::total_cmp);
            for w in cuts.windows(2) {
                let mut nodes = Vec::new();
                if self.alpha == 0.0 {
                    nodes.push((0.5 * (w[0] + w[1]), w[1] - w[0]));
                } else {
                    rule.push_nodes(w[0], w[1], GAUSS_PANELS, &mut nodes);
                }
                for (z, wt) in nodes {
                    let v = box_height(l, z)
                        * if self.alpha == 0.0 {
                            1.0
                        } else {
                            powf(z, self.alpha)
                        };
                    if v != 0.0 {
                        pairs.push((v.abs(), wt));
                    }
                }
            }
        }
        Self::annulus_average(&pairs, s, phi)
    }

    /// `sup_s ‖{‖K_{α,l}‖_{A,|z|∼s}}_l‖_X / s^{α−1}` over the given `s`,
    /// with the individual ratios.
    pub fn s_alpha_check(
        &self,
        phi: &YoungFunction,
        x_norm: &SeqNorm,
        s_values: &[f64],
    ) -> Result<SizeReport> {
        let mut ratios = Vec::with_capacity(s_values.len());
        for &s in s_values {
            if !(s > 0.0 && s.is_finite()) {
                bail!(Domain, "annulus radius must be positive, got {s}");
            }
            let entries: Vec<(i64, f64)> = self
                .levels()
                .map(|l| self.size_norm(l, phi, s).map(|v| (l as i64, v)))
                .collect::<Result<_>>()?;
            let norm = x_norm.norm_indexed(&entries);
            ratios.push((s, norm / powf(s, self.alpha - 1.0)));
        }
        let sup = ratios.iter().fold(0.0f64, |m, r| m.max(r.1));
        Ok(SizeReport { ratios, sup })
    }
}

/// Output of [`DyadicKernel::s_alpha_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct SizeReport {
    pub ratios: Vec<(f64, f64)>,
    pub sup: f64,
}

/// `‖{m^k / A⁻¹(2^m·8)}_{m=1..M}‖_X` at `M = m_max/4, m_max/2, m_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormReport {
    pub value: f64,
    pub partials: Vec<(u32, f64)>,
    /// Change between the last two partials below 1e-6.
    pub stabilized: bool,
}

pub fn prop3_closed_form(
    phi: &YoungFunction,
    k: u32,
    x_norm: &SeqNorm,
    m_max: u32,
) -> Result<ClosedFormReport> {
    if m_max < 2 {
        bail!(Domain, "m_max must be at least 2");
    }
    let mut terms = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let inv = phi.inverse(pow2(m as i32) * 8.0)?;
        terms.push((m as i64, pow_k(m as f64, k) / inv));
    }
    let cuts = [(m_max / 4).max(1), (m_max / 2).max(1), m_max];
    let partials: Vec<(u32, f64)> = cuts
        .iter()
        .map(|&c| (c, x_norm.norm_indexed(&terms[..c as usize])))
        .collect();
    let value = partials[2].1;
    let stabilized = (partials[2].1 - partials[1].1).abs() < 1e-6;
    Ok(ClosedFormReport {
        value,
        partials,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn kernel() -> DyadicKernel {
        DyadicKernel::square(-30, 100).unwrap()
    }

    #[test]
    fn level_values() {
        let k = kernel();
        assert_eq!(k.eval_level(0, 0.25).unwrap(), -0.5);
        assert_eq!(k.eval_level(0, 0.75).unwrap(), 0.5);
        assert_eq!(k.eval_level(3, 8.0).unwrap(), 0.0);
        assert_eq!(k.eval_level(3, -9.0).unwrap(), 0.0);
        assert!(k.eval_level(101, 0.0).is_err());
    }

    #[test]
    fn kernel_mean_zero_and_bounded() {
        let k = kernel();
        for l in -3..6 {
            let n = 4096;
            let h = pow2(l + 1) / n as f64;
            let mut integral = 0.0;
            for c in 0..n {
                let z = -pow2(l) + (c as f64 + 0.5) * h;
                let v = k.eval_level(l, z).unwrap();
                assert!(v.abs() <= pow2(-l));
                integral += v * h;
            }
            assert!(integral.abs() < 1e-12);
        }
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let k = kernel();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..5000 {
            let i: i32 = rng.gen_range(-5..5);
            let j: i32 = i + rng.gen_range(1..5);
            let x0: f64 = rng.gen_range(-10.0..10.0);
            let x = x0 + rng.gen_range(-0.999..0.999) * pow2(i);
            let side = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let y = x0 + side * rng.gen_range(1.0001..1.9999) * pow2(j);
            let l = j + rng.gen_range(-2..5);
            let direct = (k.eval_level(l, y - x).unwrap() - k.eval_level(l, y - x0).unwrap()).abs();
            assert_eq!(diff_table(i, j, x, x0, l, y).unwrap(), direct);
        }
        assert!(diff_table(2, 2, 0.0, 0.0, 2, 5.0).is_err());
        assert!(diff_table(0, 2, 1.5, 0.0, 2, 5.0).is_err());
        assert!(diff_table(0, 2, 0.5, 0.0, 2, 9.0).is_err());
    }

    #[test]
    fn dagger_zero_at_origin_and_even() {
        let k = DyadicKernel::square(-10, 30).unwrap();
        let phi = YoungFunction::exp_log_class(0);
        let mut q = HormanderQuery::new(phi, 0, SeqNorm::Lp(2.0), 0.0, 8.0, 20, Flavor::Dagger);
        assert_eq!(k.dagger_sum(&q).unwrap().value, 0.0);
        q.x = 0.7;
        let a = k.dagger_sum(&q).unwrap().value;
        q.x = -0.7;
        let b = k.dagger_sum(&q).unwrap().value;
        assert!(a > 0.0);
        assert!((a - b).abs() <= 1e-12 * a);
        q.x = 3.0;
        assert!(k.dagger_sum(&q).is_err());
    }

    #[test]
    fn single_annulus_matches_indicator_identity() {
        // Level 5, x = 0.5, R = 4: annuli m = 1, 2, 3 see the level.
        let k = DyadicKernel::square(5, 5).unwrap();
        let phi = YoungFunction::exp_log_class(0);
        let q = HormanderQuery::new(
            phi.clone(),
            0,
            SeqNorm::Lp(2.0),
            0.5,
            4.0,
            10,
            Flavor::Dagger,
        );
        let rep = k.dagger_sum(&q).unwrap();
        // m = 1 (s = 8): (−16, −15.5) at height 1/32.
        // m = 2 (s = 16): (16, 16.5) at height 1/32 and (−32, −31.5) at
        // height 1/64. m = 3 (s = 32): (32, 32.5) at height 1/64.
        let (mut lo, mut hi) = (1e-12, 1.0);
        for _ in 0..200 {
            let lam = 0.5 * (lo + hi);
            let mass = 0.5 * phi.value(1.0 / (32.0 * lam)) + 0.5 * phi.value(1.0 / (64.0 * lam));
            if mass > 64.0 {
                lo = lam;
            } else {
                hi = lam;
            }
        }
        let t2 = 16.0 * hi;
        let t3 = 32.0 * (1.0 / 64.0) / phi.inverse(128.0 / 0.5).unwrap();
        let t1 = 8.0 * (1.0 / 32.0) / phi.inverse(32.0 / 0.5).unwrap();
        let expected = t1 + t2 + t3;
        assert!(
            (rep.value - expected).abs() <= 1e-10 * expected,
            "{} {}",
            rep.value,
            expected
        );
    }

    #[test]
    fn closed_form_linear_case() {
        let r = prop3_closed_form(&YoungFunction::Linear, 0, &SeqNorm::Lp(2.0), 80).unwrap();
        let expected = 1.0 / (8.0 * 3f64.sqrt());
        assert!((r.value - expected).abs() < 1e-15);
        assert!(r.stabilized);
    }

    #[test]
    fn plain_zero_at_origin() {
        let k = DyadicKernel::square(-10, 10).unwrap();
        let q = HormanderQuery::new(
            YoungFunction::exp_log_class(0),
            0,
            SeqNorm::Lp(2.0),
            0.0,
            4.0,
            20,
            Flavor::Plain,
        );
        assert_eq!(k.plain_sum(&q).unwrap().value, 0.0);
    }

    #[test]
    fn size_norm_support_geometry() {
        let k = DyadicKernel::new(-5, 20, 0.5).unwrap();
        let phi = YoungFunction::exp_log_class(0);
        assert_eq!(k.size_norm(3, &phi, 8.0).unwrap(), 0.0);
        assert!(k.size_norm(4, &phi, 8.0).unwrap() > 0.0);
    }

    #[test]
    fn fractional_dagger_small_alpha_close_to_dagger() {
        let phi = YoungFunction::exp_log_class(0);
        let k0 = DyadicKernel::square(-5, 40).unwrap();
        let ka = DyadicKernel::new(-5, 40, 1e-4).unwrap();
        let q = HormanderQuery::new(phi, 0, SeqNorm::Lp(2.0), 0.3, 2.0, 30, Flavor::Dagger);
        let a = k0.dagger_sum(&q).unwrap().value;
        let mut qf = q.clone();
        qf.flavor = Flavor::FractionalDagger;
        let b = ka.dagger_sum(&qf).unwrap().value;
        assert!((a - b).abs() <= 0.02 * a, "{a} {b}");
    }
}
