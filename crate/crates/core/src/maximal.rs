//! Maximal operators over a discrete family of intervals.
//!
//! Every operator here is uncentred: the value at a cell is the maximum over
//! the candidate intervals containing its centre. Intervals are handled in
//! cell units (`u = (x + L)/h`), so averages are independent of `h`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::grid::GridFunction;
use crate::math::{ceil, floor, log2, powf};
use crate::wavelet::WaveletSums;
use crate::young::{luxemburg_pairs_bracketed, YoungFunction};

/// Interval shapes `[u − a·ρ, u + b·ρ]` tried at each radius `ρ`.
const SHAPES: [(f64, f64); 5] = [(0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0), (2.0, 1.0)];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind {
    /// Radii `(h/2)·2^{q/per_octave}` up to twice the domain, each used with
    /// the anchored, centred and off-centre shapes, plus the point's own
    /// cell. Intervals are clipped to the domain.
    Ladder { per_octave: u32 },
    /// Every interval containing the point whose endpoints are cell
    /// boundaries or the point itself. For cell-wise constant data this
    /// attains the supremum of averages over all intervals containing the
    /// point. Quadratic cost per point; meant as an oracle on small grids.
    Dense,
}

/// The candidate intervals `B ∋ x` over which maximal operators take their
/// supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallFamily {
    pub kind: FamilyKind,
    /// Evaluate only at cells whose centres lie in `[−L/2, L/2]`; other
    /// cells are set to 0.
    pub core_only: bool,
}

impl BallFamily {
    pub fn ladder(per_octave: u32) -> Self {
        BallFamily {
            kind: FamilyKind::Ladder {
                per_octave: per_octave.max(1),
            },
            core_only: false,
        }
    }

    /// One radius per octave.
    pub fn coarse() -> Self {
        Self::ladder(1)
    }

    pub fn standard() -> Self {
        Self::ladder(16)
    }

    /// 64 radii per octave; sup errors below 1.1% for anchored averages.
    pub fn fine() -> Self {
        Self::ladder(64)
    }

    pub fn dense() -> Self {
        BallFamily {
            kind: FamilyKind::Dense,
            core_only: false,
        }
    }

    pub fn core_only(mut self) -> Self {
        self.core_only = true;
        self
    }

    fn cells(&self, n: usize) -> core::ops::Range<usize> {
        if self.core_only {
            n / 4..3 * n / 4
        } else {
            0..n
        }
    }

    fn radii(&self, n: usize) -> Vec<f64> {
        match self.kind {
            FamilyKind::Ladder { per_octave } => {
                let mut out = Vec::new();
                let limit = 2.0 * n as f64;
                let mut q = 0u32;
                loop {
                    let rho = 0.5 * powf(2.0, q as f64 / per_octave as f64);
                    out.push(rho);
                    if rho >= limit {
                        break;
                    }
                    q += 1;
                }
                out
            }
            FamilyKind::Dense => Vec::new(),
        }
    }

    /// Calls `visit(lo, hi)` in cell units for every candidate interval at
    /// cell `c`.
    fn for_each_at(&self, n: usize, radii: &[f64], c: usize, mut visit: impl FnMut(f64, f64)) {
        match self.kind {
            FamilyKind::Ladder { .. } => {
                let u = c as f64 + 0.5;
                let nf = n as f64;
                visit(c as f64, c as f64 + 1.0);
                for &rho in radii {
                    for (a, b) in SHAPES {
                        let lo = (u - a * rho).max(0.0);
                        let hi = (u + b * rho).min(nf);
                        visit(lo, hi);
                    }
                }
            }
            FamilyKind::Dense => {
                let u = c as f64 + 0.5;
                let los = (0..=c).map(|lo| lo as f64).chain(core::iter::once(u));
                for lo in los {
                    let his = core::iter::once(u).chain((c + 1..=n).map(|hi| hi as f64));
                    for hi in his {
                        if hi > lo {
                            visit(lo, hi);
                        }
                    }
                }
            }
        }
    }

    /// Calls `visit(lo, hi)` for every interval of the family, over all
    /// points; intervals may repeat.
    pub(crate) fn for_each_interval(&self, n: usize, mut visit: impl FnMut(f64, f64)) {
        match self.kind {
            FamilyKind::Dense => {
                for lo in 0..n {
                    for hi in lo + 1..=n {
                        visit(lo as f64, hi as f64);
                    }
                }
            }
            FamilyKind::Ladder { .. } => {
                let radii = self.radii(n);
                for c in self.cells(n) {
                    self.for_each_at(n, &radii, c, &mut visit);
                }
            }
        }
    }

    /// Maximum over candidates of `score(lo, hi)`, per evaluated cell.
    fn sup_per_cell(
        &self,
        f: &GridFunction,
        mut score: impl FnMut(f64, f64) -> f64,
    ) -> GridFunction {
        let n = f.grid().len();
        let radii = self.radii(n);
        let mut out = vec![0.0; n];
        for c in self.cells(n) {
            let mut best = 0.0f64;
            self.for_each_at(n, &radii, c, |lo, hi| {
                if hi > lo {
                    best = best.max(score(lo, hi));
                }
            });
            out[c] = best;
        }
        GridFunction::from_vec_unchecked(*f.grid(), out)
    }
}

impl Default for BallFamily {
    fn default() -> Self {
        Self::standard()
    }
}

/// Hardy–Littlewood maximal function `Mf(x) = sup_{B ∋ x} (1/|B|)∫_B |f|`.
pub fn hl_maximal(f: &GridFunction, family: &BallFamily) -> GridFunction {
    let a = f.abs();
    family.sup_per_cell(&a, |lo, hi| {
        (a.antiderivative_cells(hi) - a.antiderivative_cells(lo)) / (hi - lo)
    })
}

/// `M^k f`, `k ≥ 1`.
pub fn iterated_maximal(f: &GridFunction, k: u32, family: &BallFamily) -> Result<GridFunction> {
    if k == 0 {
        bail!(Domain, "iterated maximal needs k ≥ 1");
    }
    let mut g = hl_maximal(f, family);
    for _ in 1..k {
        g = hl_maximal(&g, family);
    }
    Ok(g)
}

/// `M_A f(x) = sup_{B ∋ x} ‖f‖_{A,B}`.
pub fn orlicz_maximal(f: &GridFunction, phi: &YoungFunction, family: &BallFamily) -> GridFunction {
    OrliczEngine::new(f, phi).run(family, 0.0)
}

/// `M_{α,A} f(x) = sup_{B ∋ x} |B|^α ‖f‖_{A,B}`, `0 < α < 1`.
pub fn fractional_orlicz_maximal(
    f: &GridFunction,
    phi: &YoungFunction,
    alpha: f64,
    family: &BallFamily,
) -> Result<GridFunction> {
    if !(alpha > 0.0 && alpha < 1.0) {
        bail!(Domain, "fractional order must lie in (0, 1), got {alpha}");
    }
    Ok(OrliczEngine::new(f, phi).run(family, alpha))
}

/// Thresholds per octave in the screening ladder.
const SCREEN_PER_OCTAVE: f64 = 32.0;
const SCREEN_LEVELS: usize = 3840;

/// Orlicz maximal evaluation with exact Luxemburg solves, screened by
/// prefix sums of `A(|f|/t)` on a geometric ladder of thresholds `t`.
///
/// For a candidate `B` and the current best value `β`, the ladder threshold
/// `t ≤ β` gives `avg_B A(|f|/β) ≤ avg_B A(|f|/t)`; when the right side is
/// at most 1 the candidate cannot beat `β` and is skipped.
struct OrliczEngine<'a> {
    phi: &'a YoungFunction,
    abs: Vec<f64>,
    /// Range of cells holding nonzero values.
    support: (usize, usize),
    top: f64,
    h: f64,
    ladder: Vec<Option<Vec<f64>>>,
    pairs: Vec<(f64, f64)>,
    grid: crate::grid::Grid,
    /// Last screening target and its ladder index.
    last_need: (f64, Option<usize>),
    /// Solves for intervals covering the whole support, keyed by length.
    covering: BTreeMap<u64, f64>,
}

impl<'a> OrliczEngine<'a> {
    fn new(f: &GridFunction, phi: &'a YoungFunction) -> Self {
        let abs: Vec<f64> = f.samples().iter().map(|v| v.abs()).collect();
        let vmax = abs.iter().fold(0.0f64, |m, &v| m.max(v));
        let first = abs.iter().position(|&v| v != 0.0).unwrap_or(0);
        let last = abs.iter().rposition(|&v| v != 0.0).map_or(0, |i| i + 1);
        let top = if vmax == 0.0 || phi.is_degenerate() {
            vmax
        } else {
            vmax / phi.inverse(1.0).unwrap_or(1.0)
        };
        OrliczEngine {
            phi,
            abs,
            support: (first, last),
            top,
            h: f.grid().step(),
            ladder: vec![None; SCREEN_LEVELS],
            pairs: Vec::new(),
            grid: *f.grid(),
            last_need: (f64::NAN, None),
            covering: BTreeMap::new(),
        }
    }

    fn threshold(&self, q: usize) -> f64 {
        self.top * powf(2.0, -(q as f64) / SCREEN_PER_OCTAVE)
    }

    /// Prefix sums of `A(|f|/t_q)` over the support cells.
    fn level(&mut self, q: usize) -> &[f64] {
        if self.ladder[q].is_none() {
            let t = self.threshold(q);
            let (s0, s1) = self.support;
            let mut prefix = Vec::with_capacity(s1 - s0 + 1);
            let (mut sum, mut comp) = (0.0f64, 0.0f64);
            prefix.push(0.0);
            for &v in &self.abs[s0..s1] {
                let a = self.phi.value(v / t);
                let s = sum + a;
                if sum.abs() >= a.abs() {
                    comp += (sum - s) + a;
                } else {
                    comp += (a - s) + sum;
                }
                sum = s;
                prefix.push(sum + comp);
            }
            self.ladder[q] = Some(prefix);
        }
        self.ladder[q].as_deref().unwrap_or(&[])
    }

    /// Upper estimate of `avg_{[lo,hi]} A(|f|/t_q)`.
    fn ladder_avg(&mut self, q: usize, lo: f64, hi: f64) -> f64 {
        let (s0, s1) = self.support;
        let prefix = self.level(q);
        let len = s1 - s0;
        let at = |u: f64| -> f64 {
            let v = u - s0 as f64;
            if v <= 0.0 {
                return 0.0;
            }
            let c = floor(v) as usize;
            if c < len {
                prefix[c] + (v - c as f64) * (prefix[c + 1] - prefix[c])
            } else {
                prefix[len]
            }
        };
        let integral = at(hi) - at(lo);
        let slack = 8.0 * f64::EPSILON * prefix[len];
        (integral + slack) / (hi - lo)
    }

    fn exact(&mut self, lo: f64, hi: f64, bracket: (f64, f64)) -> f64 {
        let n = self.abs.len();
        let first = (floor(lo) as usize).max(self.support.0);
        let last = (ceil(hi) as usize).min(n).min(self.support.1);
        self.pairs.clear();
        for c in first..last {
            let w = (hi.min(c as f64 + 1.0) - lo.max(c as f64)).max(0.0);
            if w > 0.0 && self.abs[c] != 0.0 {
                self.pairs.push((self.abs[c], w));
            }
        }
        if self.pairs.is_empty() {
            return 0.0;
        }
        luxemburg_pairs_bracketed(&self.pairs, hi - lo, self.phi, bracket.0, bracket.1)
    }

    /// Luxemburg average of the candidate when it may exceed `need`, else
    /// `None`.
    fn candidate(&mut self, lo: f64, hi: f64, need: f64) -> Option<f64> {
        if self.support.0 >= self.support.1
            || hi <= self.support.0 as f64
            || lo >= self.support.1 as f64
        {
            return None;
        }
        if need >= self.top {
            return None;
        }
        let q = if need == self.last_need.0 {
            self.last_need.1
        } else {
            let screenable = need > 0.0 && !self.phi.is_degenerate();
            let q = if screenable {
                let q = ceil(SCREEN_PER_OCTAVE * log2(self.top / need));
                if q.is_finite() && q >= 0.0 && (q as usize) < SCREEN_LEVELS {
                    Some(q as usize)
                } else {
                    None
                }
            } else {
                None
            };
            self.last_need = (need, q);
            q
        };
        let mut bracket = (self.top * 1e-3, self.top);
        if let Some(q) = q {
            if self.ladder_avg(q, lo, hi) <= 1.0 - 1e-9 {
                return None;
            }
            // Largest threshold index below q whose average is at most 1,
            // found by galloping then bisection; its threshold bounds the
            // value from above.
            let octave = SCREEN_PER_OCTAVE as usize;
            let mut inside = q;
            let mut outside = None;
            let mut k = q;
            while k > 0 {
                k = k.saturating_sub(octave);
                if self.ladder_avg(k, lo, hi) <= 1.0 - 1e-9 {
                    outside = Some(k);
                    break;
                }
                inside = k;
            }
            let upper = match outside {
                None => self.top,
                Some(mut out) => {
                    while inside - out > 1 {
                        let mid = (inside + out) / 2;
                        if self.ladder_avg(mid, lo, hi) <= 1.0 - 1e-9 {
                            out = mid;
                        } else {
                            inside = mid;
                        }
                    }
                    self.threshold(out)
                }
            };
            bracket = (self.threshold(inside), upper);
        }
        if lo <= self.support.0 as f64 && hi >= self.support.1 as f64 {
            let key = (hi - lo).to_bits();
            if let Some(&v) = self.covering.get(&key) {
                return Some(v);
            }
            let v = self.exact(lo, hi, bracket);
            self.covering.insert(key, v);
            return Some(v);
        }
        Some(self.exact(lo, hi, bracket))
    }

    fn run(mut self, family: &BallFamily, alpha: f64) -> GridFunction {
        let n = self.abs.len();
        let mut out = vec![0.0; n];
        if self.top == 0.0 {
            return GridFunction::from_vec_unchecked(self.grid, out);
        }
        let radii = family.radii(n);
        let mut candidates: Vec<(f64, f64)> = Vec::new();
        for c in family.cells(n) {
            candidates.clear();
            family.for_each_at(n, &radii, c, |lo, hi| {
                if hi > lo {
                    candidates.push((lo, hi));
                }
            });
            let mut best = 0.0f64;
            for &(lo, hi) in &candidates {
                let size = if alpha == 0.0 {
                    1.0
                } else {
                    powf((hi - lo) * self.h, alpha)
                };
                if let Some(v) = self.candidate(lo, hi, best / size) {
                    best = best.max(v * size);
                }
            }
            out[c] = best;
        }
        GridFunction::from_vec_unchecked(self.grid, out)
    }
}

/// Sharp maximal function `M^# f(x) = sup_{B ∋ x} (1/|B|)∫_B |f − f_B|`.
pub fn sharp_maximal(f: &GridFunction, family: &BallFamily) -> GridFunction {
    let values = f.samples();
    let n = values.len();
    let tree = WaveletSums::new(values);
    family.sup_per_cell(f, |lo, hi| {
        let len = hi - lo;
        let mean = (f.antiderivative_cells(hi) - f.antiderivative_cells(lo)) / len;
        let ca = ceil(lo) as usize;
        let cb = floor(hi) as usize;
        let mut excess = 0.0;
        if ca > cb {
            return 0.0;
        }
        if ca > 0 && (ca as f64) > lo {
            excess += (ca as f64 - lo) * (values[ca - 1] - mean).max(0.0);
        }
        if cb < n && hi > cb as f64 {
            excess += (hi - cb as f64) * (values[cb] - mean).max(0.0);
        }
        let (count, sum) = tree.above(ca, cb, mean);
        excess += sum - mean * count as f64;
        (2.0 * excess / len).max(0.0)
    })
}

/// `M^#_δ f = (M^#(|f|^δ))^{1/δ}`, `0 < δ < 1`.
pub fn sharp_maximal_delta(
    f: &GridFunction,
    delta: f64,
    family: &BallFamily,
) -> Result<GridFunction> {
    if !(delta > 0.0 && delta < 1.0) {
        bail!(Domain, "δ must lie in (0, 1), got {delta}");
    }
    let g = f.map(|v| powf(v.abs(), delta));
    Ok(sharp_maximal(&g, family).map(|v| powf(v, 1.0 / delta)))
}

/// `M_δ f = (M(|f|^δ))^{1/δ}`.
pub fn maximal_delta(f: &GridFunction, delta: f64, family: &BallFamily) -> Result<GridFunction> {
    if !(delta > 0.0) {
        bail!(Domain, "δ must be positive, got {delta}");
    }
    let g = f.map(|v| powf(v.abs(), delta));
    Ok(hl_maximal(&g, family).map(|v| powf(v, 1.0 / delta)))
}

/// Number of radii in the ladder for an `n`-cell grid (for diagnostics).
pub fn ladder_len(family: &BallFamily, n: usize) -> usize {
    family.radii(n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Generator, Grid};
    use crate::young::{luxemburg_average, Interval};

    fn small() -> Grid {
        Grid::new(16.0, 256).unwrap()
    }

    #[test]
    fn constant_functions() {
        let f = GridFunction::constant(small(), 2.0);
        let m = hl_maximal(&f, &BallFamily::standard());
        assert!(m.samples().iter().all(|v| (v - 2.0).abs() < 1e-13));
        let s = sharp_maximal(&f, &BallFamily::standard());
        assert!(s.samples().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn maximal_dominates_function() {
        let f = Generator::DyadicChirp {
            radius: 5.0,
            bands: 3,
        }
        .sample(small());
        let m = hl_maximal(&f, &BallFamily::coarse());
        for (a, b) in m.samples().iter().zip(f.samples()) {
            assert!(*a >= b.abs() * (1.0 - 1e-14));
        }
    }

    #[test]
    fn ladder_close_to_dense_family() {
        let f = Generator::Bump {
            center: 1.0,
            radius: 3.0,
        }
        .sample(small());
        let ladder = hl_maximal(&f, &BallFamily::standard());
        let dense = hl_maximal(&f, &BallFamily::dense());
        for (a, b) in ladder.samples().iter().zip(dense.samples()) {
            assert!(*a <= b * (1.0 + 1e-12) && *a >= 0.95 * b);
        }
    }

    #[test]
    fn linear_orlicz_is_hardy_littlewood() {
        let f = Generator::Bump {
            center: -2.0,
            radius: 4.0,
        }
        .sample(small());
        let fam = BallFamily::ladder(4);
        let a = orlicz_maximal(&f, &YoungFunction::Linear, &fam);
        let b = hl_maximal(&f, &fam);
        for (x, y) in a.samples().iter().zip(b.samples()) {
            assert!((x - y).abs() <= 1e-10 * y.max(1e-300));
        }
    }

    #[test]
    fn power_orlicz_is_rescaled_hardy_littlewood() {
        let f = Generator::DyadicChirp {
            radius: 6.0,
            bands: 3,
        }
        .sample(small());
        let fam = BallFamily::ladder(4);
        for r in [1.5, 2.0, 3.0] {
            let a = orlicz_maximal(&f, &YoungFunction::power(r).unwrap(), &fam);
            let b = hl_maximal(&f.map(|v| v.abs().powf(r)), &fam).map(|v| v.powf(1.0 / r));
            for (x, y) in a.samples().iter().zip(b.samples()) {
                assert!((x - y).abs() <= 1e-9 * y, "{x} {y}");
            }
        }
    }

    #[test]
    fn orlicz_screening_matches_brute_force() {
        let g = Grid::new(8.0, 64).unwrap();
        let f = Generator::Bump {
            center: 0.5,
            radius: 2.0,
        }
        .sample(g);
        let phi = YoungFunction::power_log(1.0, 2.0).unwrap();
        let fam = BallFamily::dense();
        let fast = orlicz_maximal(&f, &phi, &fam);
        let h = g.step();
        for c in [3usize, 20, 32, 40, 63] {
            let mut best = 0.0f64;
            let u = c as f64 + 0.5;
            let mut ends: Vec<f64> = (0..=64).map(|e| e as f64).collect();
            ends.push(u);
            for &lo in ends.iter().filter(|&&e| e <= u) {
                for &hi in ends.iter().filter(|&&e| e >= u && e > lo) {
                    if lo > c as f64 && lo < u || hi < c as f64 + 1.0 && hi > u {
                        continue;
                    }
                    let i = Interval::from_endpoints(-8.0 + lo * h, -8.0 + hi * h).unwrap();
                    best = best.max(luxemburg_average(&f, &i, &phi).unwrap());
                }
            }
            assert!((fast.samples()[c] - best).abs() <= 1e-10 * best, "{c}");
        }
    }

    #[test]
    fn fractional_small_alpha_and_homogeneity() {
        let f = Generator::Bump {
            center: 0.0,
            radius: 2.0,
        }
        .sample(small());
        let fam = BallFamily::ladder(2);
        let phi = YoungFunction::power_log(1.0, 1.0).unwrap();
        let m = orlicz_maximal(&f, &phi, &fam);
        let ma = fractional_orlicz_maximal(&f, &phi, 1e-6, &fam).unwrap();
        for (x, y) in m.samples().iter().zip(ma.samples()) {
            assert!((x - y).abs() <= 1e-3 * y);
        }
        let m3 = fractional_orlicz_maximal(&f.scale(-3.0), &phi, 0.5, &fam).unwrap();
        let m1 = fractional_orlicz_maximal(&f, &phi, 0.5, &fam).unwrap();
        for (x, y) in m3.samples().iter().zip(m1.samples()) {
            assert!((x - 3.0 * y).abs() <= 1e-10 * x.max(1e-300));
        }
        assert!(fractional_orlicz_maximal(&f, &phi, 1.0, &fam).is_err());
    }

    #[test]
    fn sharp_below_twice_maximal() {
        let f = Generator::DyadicChirp {
            radius: 6.0,
            bands: 4,
        }
        .sample(small());
        let fam = BallFamily::ladder(2);
        let s = sharp_maximal(&f, &fam);
        let m = hl_maximal(&f, &fam);
        for (a, b) in s.samples().iter().zip(m.samples()) {
            assert!(*a <= 2.0 * b * (1.0 + 1e-12) + 1e-14);
        }
    }

    #[test]
    fn sharp_matches_direct_oscillation() {
        let g = Grid::new(4.0, 32).unwrap();
        let f = GridFunction::from_fn(g, |x| (x * 1.7).sin() + 0.2 * x);
        let fam = BallFamily::dense();
        let s = sharp_maximal(&f, &fam);
        for c in 0..32 {
            let mut best = 0.0f64;
            let u = c as f64 + 0.5;
            let los = (0..=c).map(|e| e as f64).chain([u]);
            for lo in los {
                for hi in [u].into_iter().chain((c + 1..=32).map(|e| e as f64)) {
                    if hi <= lo {
                        continue;
                    }
                    let pieces: Vec<(f64, f64)> = (0..32)
                        .map(|j| {
                            (
                                f.samples()[j],
                                (hi.min(j as f64 + 1.0) - lo.max(j as f64)).max(0.0),
                            )
                        })
                        .filter(|p| p.1 > 0.0)
                        .collect();
                    let len = hi - lo;
                    let mean = pieces.iter().map(|(v, w)| v * w).sum::<f64>() / len;
                    let osc = pieces
                        .iter()
                        .map(|(v, w)| (v - mean).abs() * w)
                        .sum::<f64>()
                        / len;
                    best = best.max(osc);
                }
            }
            assert!((s.samples()[c] - best).abs() < 1e-12);
        }
    }

    #[test]
    fn sharp_invariances() {
        let f = Generator::LogAbs { center: 0.0 }.sample(small());
        let fam = BallFamily::coarse();
        let a = sharp_maximal(&f, &fam);
        let b = sharp_maximal(&f.map(|v| v + 5.0), &fam);
        let c = sharp_maximal(&f.scale(-2.0), &fam);
        for i in 0..a.samples().len() {
            assert!((a.samples()[i] - b.samples()[i]).abs() < 1e-11);
            assert!((2.0 * a.samples()[i] - c.samples()[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn iterated_grows() {
        let f = Generator::step_unit().sample(small());
        let fam = BallFamily::coarse();
        let m1 = iterated_maximal(&f, 1, &fam).unwrap();
        assert_eq!(m1, hl_maximal(&f, &fam));
        let m2 = iterated_maximal(&f, 2, &fam).unwrap();
        for (a, b) in m2.samples().iter().zip(m1.samples()) {
            assert!(*a >= *b * (1.0 - 1e-13));
        }
    }
}
