//! Norms on finitely supported sequences indexed by ℤ.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{bail, Result};
use crate::math::{powf, sqrt};
use crate::solve;
use crate::young::{luxemburg_pairs, LogForm, YoungFunction};

/// A finitely supported sequence; unstored indices are zero.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseSeq(BTreeMap<i64, f64>);

impl SparseSeq {
    pub fn new() -> Self {
        SparseSeq(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, f64)>) -> Result<Self> {
        let mut s = SparseSeq::new();
        for (i, v) in pairs {
            s.set(i, v)?;
        }
        Ok(s)
    }

    pub fn set(&mut self, index: i64, value: f64) -> Result<()> {
        if !value.is_finite() {
            bail!(Input, "sequence entry {index} is not finite");
        }
        if value == 0.0 {
            self.0.remove(&index);
        } else {
            self.0.insert(index, value);
        }
        Ok(())
    }

    pub fn get(&self, index: i64) -> f64 {
        self.0.get(&index).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.0.iter().map(|(&i, &v)| (i, v))
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeqNorm {
    /// `ℓ^p`, `p ∈ [1, ∞]`.
    Lp(f64),
    /// `inf{λ : Σ E(|a_n|/λ) ≤ 1}`.
    Orlicz(YoungFunction),
    /// `((x₁ − x₂)² + Σ_{n≠1} x_n²)^{1/2}`, a norm that is not monotone.
    CounterexampleQuadratic,
}

impl SeqNorm {
    pub fn lp(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            bail!(Domain, "ℓ^p needs p ≥ 1, got {p}");
        }
        Ok(SeqNorm::Lp(p))
    }

    /// The Orlicz sequence norm with `E(t) = t^r log(1 + t)^β`.
    pub fn orlicz_log(r: f64, beta: f64) -> Result<Self> {
        Ok(SeqNorm::Orlicz(YoungFunction::power_log1p(r, beta)?))
    }

    pub fn is_monotone(&self) -> bool {
        !matches!(self, SeqNorm::CounterexampleQuadratic)
    }

    pub fn norm(&self, a: &SparseSeq) -> f64 {
        let pairs: Vec<(i64, f64)> = a.iter().collect();
        self.norm_indexed(&pairs)
    }

    /// Norm of the sequence with the given `(index, value)` entries;
    /// indices must be distinct.
    pub fn norm_indexed(&self, entries: &[(i64, f64)]) -> f64 {
        match self {
            SeqNorm::CounterexampleQuadratic => {
                let mut x2 = 0.0;
                for &(i, v) in entries {
                    if i == 2 {
                        x2 = v;
                    }
                }
                let mut acc = 0.0;
                for &(i, v) in entries {
                    let c = if i == 1 { v - x2 } else { v };
                    acc += c * c;
                }
                if !entries.iter().any(|&(i, _)| i == 1) {
                    acc += x2 * x2;
                }
                sqrt(acc)
            }
            _ => self.norm_values(entries.iter().map(|&(_, v)| v)),
        }
    }

    /// Norm of an index-free list of values. For the counterexample norm
    /// the values are placed at indices `0, 1, 2, …`.
    pub fn norm_values(&self, values: impl IntoIterator<Item = f64>) -> f64 {
        match self {
            SeqNorm::Lp(p) => lp_norm(*p, values),
            SeqNorm::Orlicz(e) => {
                let pairs: Vec<(f64, f64)> = values
                    .into_iter()
                    .filter(|v| *v != 0.0)
                    .map(|v| (v.abs(), 1.0))
                    .collect();
                luxemburg_pairs(&pairs, 1.0, e)
            }
            SeqNorm::CounterexampleQuadratic => {
                let entries: Vec<(i64, f64)> = values
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| (i as i64, v))
                    .collect();
                self.norm_indexed(&entries)
            }
        }
    }

    /// Random search for a pair with `|a_n| ≤ |b_n|` for all `n` but
    /// `‖a‖ > ‖b‖`. Sequences are integer-valued with support in `[−3, 3]`.
    pub fn check_monotone(&self, trials: usize, seed: u64) -> MonotoneCheck {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..trials {
            let mut a = SparseSeq::new();
            let mut b = SparseSeq::new();
            let support = rng.gen_range(1..=4);
            for _ in 0..support {
                let i: i64 = rng.gen_range(-3..=3);
                let bi: i64 = rng.gen_range(-5..=5);
                let mag = rng.gen_range(0..=bi.abs());
                let ai = if rng.gen_bool(0.5) { mag } else { -mag };
                // Finite integer values cannot fail `set`.
                let _ = b.set(i, bi as f64);
                let _ = a.set(i, ai as f64);
            }
            let (na, nb) = (self.norm(&a), self.norm(&b));
            if na > nb * (1.0 + 1e-12) {
                return MonotoneCheck::Violation {
                    trial,
                    a,
                    b,
                    norm_a: na,
                    norm_b: nb,
                };
            }
        }
        MonotoneCheck::Pass { trials }
    }
}

fn lp_norm(p: f64, values: impl IntoIterator<Item = f64>) -> f64 {
    if p == f64::INFINITY {
        return values.into_iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    if p == 1.0 {
        return values.into_iter().map(f64::abs).sum();
    }
    let vals: Vec<f64> = values.into_iter().collect();
    if p == 2.0 {
        let s: f64 = vals.iter().map(|v| v * v).sum();
        if s.is_finite() && s > 1e-200 {
            return sqrt(s);
        }
        let m = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            return 0.0;
        }
        let s: f64 = vals.iter().map(|v| (v / m) * (v / m)).sum();
        return m * sqrt(s);
    }
    let m = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = vals.iter().map(|v| powf(v.abs() / m, p)).sum();
    m * powf(s, 1.0 / p)
}

#[derive(Debug, Clone, PartialEq)]
pub enum MonotoneCheck {
    Pass {
        trials: usize,
    },
    Violation {
        trial: usize,
        a: SparseSeq,
        b: SparseSeq,
        norm_a: f64,
        norm_b: f64,
    },
}

impl MonotoneCheck {
    pub fn passed(&self) -> bool {
        matches!(self, MonotoneCheck::Pass { .. })
    }
}

/// Index set for the harmonic sequence `{1/m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HarmonicIndex {
    /// `m ∈ ℤ ∖ {0}`
    NonzeroIntegers,
    /// `m ≥ 1`
    Naturals,
}

impl HarmonicIndex {
    fn multiplicity(self) -> f64 {
        match self {
            HarmonicIndex::NonzeroIntegers => 2.0,
            HarmonicIndex::Naturals => 1.0,
        }
    }
}

/// Truncated values of `‖{1/m}‖_X` at successive doublings.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicReport {
    /// `(M, value truncated to |m| ≤ M)` for `M = 2, 4, …, m_max`.
    pub partials: Vec<(u64, f64)>,
    /// Change over the last doubling.
    pub increment: f64,
    /// Bracket for the untruncated value when the tail admits an analytic
    /// bound.
    pub tail_bracket: Option<(f64, f64)>,
    /// Increment below 1e-8, or the tail bracket narrower than 1e-8.
    pub stabilized: bool,
}

impl HarmonicReport {
    pub fn value(&self) -> f64 {
        self.partials.last().map(|p| p.1).unwrap_or(0.0)
    }

    /// Midpoint of the tail bracket when available, else the last partial.
    pub fn estimate(&self) -> f64 {
        match self.tail_bracket {
            Some((lo, hi)) => 0.5 * (lo + hi),
            None => self.value(),
        }
    }
}

/// Threshold for the stabilization verdict.
pub const HARMONIC_TOL: f64 = 1e-8;

impl SeqNorm {
    /// `‖{1/m}‖_X` truncated to `|m| ≤ m_max`, with stabilization
    /// diagnostics.
    pub fn harmonic_norm(&self, index: HarmonicIndex, m_max: u64) -> Result<HarmonicReport> {
        if m_max < 2 {
            bail!(Domain, "harmonic truncation needs m_max ≥ 2, got {m_max}");
        }
        let mut cuts = Vec::new();
        let mut m = 2u64;
        while m < m_max {
            cuts.push(m);
            m *= 2;
        }
        cuts.push(m_max);
        let mult = index.multiplicity();
        let partials: Vec<(u64, f64)> = cuts
            .iter()
            .map(|&cut| (cut, self.harmonic_truncated(index, cut)))
            .collect();
        let n = partials.len();
        let increment = if n >= 2 {
            (partials[n - 1].1 - partials[n - 2].1).abs()
        } else {
            f64::INFINITY
        };
        let last = partials[n - 1].1;
        let tail_bracket = match self {
            SeqNorm::Lp(p) if *p > 1.0 && p.is_finite() => {
                let mf = m_max as f64;
                let s = powf(last, *p);
                let lo = mult * powf(mf + 1.0, 1.0 - p) / (p - 1.0);
                let hi = mult * powf(mf, 1.0 - p) / (p - 1.0);
                Some((powf(s + lo, 1.0 / p), powf(s + hi, 1.0 / p)))
            }
            SeqNorm::Lp(p) if *p == f64::INFINITY => Some((1.0, 1.0)),
            SeqNorm::Orlicz(e) => orlicz_power_exponent(e).map(|q| {
                let upper = self.harmonic_with_tail(index, m_max, q, e);
                (last, upper)
            }),
            _ => None,
        };
        let stabilized = increment < HARMONIC_TOL
            || tail_bracket.is_some_and(|(lo, hi)| (hi - lo).abs() < HARMONIC_TOL);
        Ok(HarmonicReport {
            partials,
            increment,
            tail_bracket,
            stabilized,
        })
    }

    fn harmonic_truncated(&self, index: HarmonicIndex, cut: u64) -> f64 {
        match index {
            HarmonicIndex::Naturals => {
                let entries: Vec<(i64, f64)> =
                    (1..=cut).map(|m| (m as i64, 1.0 / m as f64)).collect();
                self.norm_indexed(&entries)
            }
            HarmonicIndex::NonzeroIntegers => {
                let entries: Vec<(i64, f64)> = (1..=cut)
                    .flat_map(|m| [(m as i64, 1.0 / m as f64), (-(m as i64), -1.0 / m as f64)])
                    .collect();
                self.norm_indexed(&entries)
            }
        }
    }

    /// Upper bound for the Orlicz value: the crossing of the truncated
    /// modular plus the tail bound `Σ_{m>M} (1/(mλ))^q ≤ M^{1−q}/((q−1)λ^q)`.
    fn harmonic_with_tail(
        &self,
        index: HarmonicIndex,
        m_max: u64,
        q: f64,
        e: &YoungFunction,
    ) -> f64 {
        let mult = index.multiplicity();
        let mf = m_max as f64;
        let tail_coeff = mult * powf(mf, 1.0 - q) / (q - 1.0);
        let guess = self.harmonic_truncated(index, m_max).max(1e-3);
        solve::decreasing_crossing(
            |lambda| {
                let mut acc = 0.0;
                for m in 1..=m_max {
                    acc += e.value(1.0 / (m as f64 * lambda));
                }
                mult * acc + tail_coeff * powf(lambda, -q)
            },
            guess,
            guess * 2.0,
        )
    }
}

/// Exponent `q > 1` with `E(t) ≤ t^q` for all `t`, if one is known.
fn orlicz_power_exponent(e: &YoungFunction) -> Option<f64> {
    match e {
        YoungFunction::Power { r } if *r > 1.0 => Some(*r),
        YoungFunction::PowerLog {
            r,
            beta,
            form: LogForm::LogOnePlus,
        } if r + beta > 1.0 => Some(r + beta),
        _ => None,
    }
}

/// `λ₀ = (log(2)^β · C + 1)^{1/r}` with `C = 2 Σ_{m ≥ 1} m^{−r}`, the
/// explicit bound for `‖{1/m}‖_{X_E}` over `ℤ ∖ {0}` with
/// `E(t) = t^r log(1 + t)^β`. `C` is replaced by an upper bound built from
/// `terms` summands plus the integral tail.
pub fn orlicz_harmonic_bound(r: f64, beta: f64, terms: u64) -> Result<f64> {
    if !(r > 1.0) {
        bail!(Domain, "the bound needs r > 1, got {r}");
    }
    let partial: f64 = (1..=terms.max(1)).map(|m| powf(m as f64, -r)).sum();
    let c = 2.0 * (partial + powf(terms.max(1) as f64, 1.0 - r) / (r - 1.0));
    Ok(powf(powf(core::f64::consts::LN_2, beta) * c + 1.0, 1.0 / r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pairs: &[(i64, f64)]) -> SparseSeq {
        SparseSeq::from_pairs(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn monotone_counterexample_values() {
        let x = seq(&[(1, 1.0), (2, 3.0)]);
        let y = seq(&[(1, 2.0), (2, 3.0)]);
        assert_eq!(SeqNorm::CounterexampleQuadratic.norm(&x), sqrt(13.0));
        assert_eq!(SeqNorm::Lp(2.0).norm(&y), sqrt(13.0));
        assert_eq!(SeqNorm::CounterexampleQuadratic.norm(&y), sqrt(10.0));
    }

    #[test]
    fn zero_and_singletons() {
        let z = SparseSeq::new();
        for n in [
            SeqNorm::Lp(1.0),
            SeqNorm::Lp(3.0),
            SeqNorm::orlicz_log(2.0, 1.0).unwrap(),
            SeqNorm::CounterexampleQuadratic,
        ] {
            assert_eq!(n.norm(&z), 0.0);
        }
        for p in [1.0, 1.5, 2.0, 7.0, f64::INFINITY] {
            let v = SeqNorm::Lp(p).norm(&seq(&[(-4, -2.5)]));
            assert!((v - 2.5).abs() < 1e-15);
        }
    }

    #[test]
    fn orlicz_modular_at_solution() {
        let n = SeqNorm::orlicz_log(2.0, 1.0).unwrap();
        let a = seq(&[(0, 1.0), (1, 0.5), (5, 3.0)]);
        let lam = n.norm(&a);
        let e = YoungFunction::power_log1p(2.0, 1.0).unwrap();
        let modular = |l: f64| a.iter().map(|(_, v)| e.value(v.abs() / l)).sum::<f64>();
        assert!(modular(lam) <= 1.0);
        assert!(modular(lam / (1.0 + 1e-8)) > 1.0);
    }

    #[test]
    fn monotonicity_search() {
        assert!(SeqNorm::Lp(2.0).check_monotone(2000, 1).passed());
        assert!(SeqNorm::orlicz_log(2.0, 1.0)
            .unwrap()
            .check_monotone(500, 1)
            .passed());
        match SeqNorm::CounterexampleQuadratic.check_monotone(10_000, 1) {
            MonotoneCheck::Violation { norm_a, norm_b, .. } => assert!(norm_a > norm_b),
            MonotoneCheck::Pass { .. } => panic!("counterexample norm passed"),
        }
    }

    #[test]
    fn harmonic_l2_and_l1() {
        let r = SeqNorm::Lp(2.0)
            .harmonic_norm(HarmonicIndex::NonzeroIntegers, 1 << 14)
            .unwrap();
        let exact = sqrt(core::f64::consts::PI * core::f64::consts::PI / 3.0);
        let (lo, hi) = r.tail_bracket.unwrap();
        assert!(lo <= exact + 1e-12 && exact <= hi + 1e-12);
        assert!(r.stabilized);
        assert!(r.partials.windows(2).all(|w| w[0].1 <= w[1].1));
        let one = SeqNorm::Lp(1.0)
            .harmonic_norm(HarmonicIndex::NonzeroIntegers, 1 << 14)
            .unwrap();
        assert!(!one.stabilized);
        assert!(one.increment > 1.0);
    }

    #[test]
    fn harmonic_orlicz_below_lambda_zero() {
        for (r, beta) in [(2.0, 1.0), (3.0, 2.0)] {
            let rep = SeqNorm::orlicz_log(r, beta)
                .unwrap()
                .harmonic_norm(HarmonicIndex::NonzeroIntegers, 1 << 12)
                .unwrap();
            let (_, hi) = rep.tail_bracket.unwrap();
            assert!(hi <= orlicz_harmonic_bound(r, beta, 1000).unwrap());
        }
    }
}
