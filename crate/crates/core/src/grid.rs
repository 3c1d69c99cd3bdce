//! Cell-centred sampling of functions on `[−L, L]`.
//!
//! Cell `c` covers `[−L + c·h, −L + (c+1)·h]` and carries the value at its
//! centre. Integrals treat the function as piecewise constant on cells and
//! zero outside the domain, so they are exact for such integrands.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::math::{floor, ln, powf, sin};
use crate::young::Interval;

/// A uniform grid of `n` cells on `[−half_len, half_len]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    half_len: f64,
    n: usize,
}

impl Grid {
    /// `n` must be a power of two, at least 2.
    pub fn new(half_len: f64, n: usize) -> Result<Self> {
        if !(half_len > 0.0 && half_len.is_finite()) {
            bail!(Domain, "grid half-length must be positive, got {half_len}");
        }
        if n < 2 || !n.is_power_of_two() {
            bail!(Domain, "grid size must be a power of two ≥ 2, got {n}");
        }
        Ok(Grid { half_len, n })
    }

    /// The desk-scale default: `L = 2^10`, `N = 2^16`, `h = 2^-5`.
    pub fn standard() -> Self {
        Grid {
            half_len: 1024.0,
            n: 1 << 16,
        }
    }

    pub fn half_len(&self) -> f64 {
        self.half_len
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_len / self.n as f64
    }

    /// Centre of cell `c`.
    pub fn x(&self, c: usize) -> f64 {
        -self.half_len + (c as f64 + 0.5) * self.step()
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |c| self.x(c))
    }

    /// Position of `x` in cell units: 0 at `−L`, `n` at `L`.
    pub fn to_cells(&self, x: f64) -> f64 {
        (x + self.half_len) / self.step()
    }

    /// Cell containing `x`, if inside the domain.
    pub fn cell_of(&self, x: f64) -> Option<usize> {
        let u = floor(self.to_cells(x));
        if u >= 0.0 && u < self.n as f64 {
            Some(u as usize)
        } else {
            None
        }
    }

    /// Cells whose centres lie in `[−L/2, L/2]`.
    pub fn core_cells(&self) -> core::ops::Range<usize> {
        self.n / 4..3 * self.n / 4
    }

    /// The grid with twice as many cells on the same domain.
    pub fn refined(&self) -> Grid {
        Grid {
            half_len: self.half_len,
            n: self.n * 2,
        }
    }

    pub fn domain(&self) -> Interval {
        Interval {
            center: 0.0,
            radius: self.half_len,
        }
    }
}

/// A real function sampled on a [`Grid`], with prefix sums for exact
/// cell-wise integration.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    samples: Vec<f64>,
    /// `prefix[c] = Σ_{j<c} samples[j]`, in units of cells.
    prefix: Vec<f64>,
}

impl GridFunction {
    pub fn from_samples(grid: Grid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            bail!(
                Input,
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            );
        }
        if let Some(c) = samples.iter().position(|v| !v.is_finite()) {
            bail!(Input, "sample {c} is not finite");
        }
        Ok(Self::build(grid, samples))
    }

    /// Samples are trusted to be finite and of the right length.
    pub(crate) fn from_vec_unchecked(grid: Grid, samples: Vec<f64>) -> Self {
        Self::build(grid, samples)
    }

    fn build(grid: Grid, samples: Vec<f64>) -> Self {
        let prefix = compensated_prefix(&samples);
        GridFunction {
            grid,
            samples,
            prefix,
        }
    }

    /// Samples `f` at cell centres; non-finite values are replaced by 0.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let samples = grid
            .xs()
            .map(|x| {
                let v = f(x);
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            })
            .collect();
        Self::build(grid, samples)
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::build(grid, alloc::vec![0.0; grid.len()])
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        Self::build(grid, alloc::vec![c; grid.len()])
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Pointwise map; output must stay finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        Self::build(self.grid, self.samples.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two functions on the same grid.
    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<GridFunction> {
        if self.grid != other.grid {
            bail!(Input, "grid functions live on different grids");
        }
        Ok(Self::build(
            self.grid,
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    pub fn abs(&self) -> GridFunction {
        self.map(f64::abs)
    }

    pub fn scale(&self, c: f64) -> GridFunction {
        self.map(|v| c * v)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Shift by whole cells: `g(x) = f(x − shift·h)`, zero-filled.
    pub fn translate_cells(&self, shift: isize) -> GridFunction {
        let n = self.grid.len() as isize;
        let samples = (0..n)
            .map(|c| {
                let src = c - shift;
                if (0..n).contains(&src) {
                    self.samples[src as usize]
                } else {
                    0.0
                }
            })
            .collect();
        Self::build(self.grid, samples)
    }

    /// `∫_{−L}^{x} f` with `x = −L + u·h`, in units of `h`; clamped to the
    /// domain.
    #[inline]
    pub fn antiderivative_cells(&self, u: f64) -> f64 {
        let n = self.grid.len();
        if u <= 0.0 {
            return 0.0;
        }
        if u >= n as f64 {
            return self.prefix[n];
        }
        let c = u as usize;
        self.prefix[c] + (u - c as f64) * self.samples[c]
    }

    #[inline]
    fn antiderivative_split(&self, whole: isize, frac: f64) -> f64 {
        let n = self.grid.len() as isize;
        if whole < 0 {
            0.0
        } else if whole >= n {
            self.prefix[n as usize]
        } else {
            let c = whole as usize;
            self.prefix[c] + frac * self.samples[c]
        }
    }

    /// `∫_lo^hi f` with zero extension outside the domain.
    pub fn integral_clipped(&self, lo: f64, hi: f64) -> f64 {
        let h = self.grid.step();
        h * (self.antiderivative_cells(self.grid.to_cells(hi))
            - self.antiderivative_cells(self.grid.to_cells(lo)))
    }

    /// `∫_I f`; the interval must lie within the domain.
    pub fn integrate(&self, interval: &Interval) -> Result<f64> {
        self.check_inside(interval)?;
        Ok(self.integral_clipped(interval.lo(), interval.hi()))
    }

    /// `(1/|I|) ∫_I f`.
    pub fn average(&self, interval: &Interval) -> Result<f64> {
        Ok(self.integrate(interval)? / interval.len())
    }

    /// `∫ f` over the whole domain.
    pub fn total(&self) -> f64 {
        self.grid.step() * self.prefix[self.grid.len()]
    }

    fn check_inside(&self, interval: &Interval) -> Result<()> {
        let slack = 1e-12 * self.grid.half_len;
        if interval.lo() < -self.grid.half_len - slack || interval.hi() > self.grid.half_len + slack
        {
            bail!(
                Domain,
                "interval [{}, {}] leaves the grid domain",
                interval.lo(),
                interval.hi()
            );
        }
        Ok(())
    }

    /// `(value, overlap length)` for every cell meeting the interval.
    pub fn overlap_pairs(&self, interval: &Interval) -> Result<Vec<(f64, f64)>> {
        self.check_inside(interval)?;
        let h = self.grid.step();
        let n = self.grid.len();
        let ua = self.grid.to_cells(interval.lo()).max(0.0);
        let ub = self.grid.to_cells(interval.hi()).min(n as f64);
        let first = floor(ua) as usize;
        let mut out = Vec::new();
        let mut c = first;
        while c < n && (c as f64) < ub {
            let lo = ua.max(c as f64);
            let hi = ub.min(c as f64 + 1.0);
            if hi > lo {
                out.push((self.samples[c], (hi - lo) * h));
            }
            c += 1;
        }
        Ok(out)
    }

    /// `x ↦ (1/2w) ∫_{x−w}^{x+w} f`, zero-extended.
    ///
    /// The window offset is split into whole cells and a fixed fraction, so
    /// the result commutes with whole-cell translations away from the
    /// boundary.
    pub fn sliding_window_average(&self, halfwidth: f64) -> Result<GridFunction> {
        Ok(Self::build(self.grid, self.window_samples(halfwidth)?))
    }

    /// Samples of [`Self::sliding_window_average`] without building prefix
    /// sums for the result.
    pub fn window_samples(&self, halfwidth: f64) -> Result<Vec<f64>> {
        let h = self.grid.step();
        if !(halfwidth >= 0.5 * h * (1.0 - 1e-12)) || !halfwidth.is_finite() {
            bail!(
                Domain,
                "window half-width {halfwidth} is below half a cell ({})",
                0.5 * h
            );
        }
        let d = halfwidth / h;
        let (hi_whole, hi_frac) = split(0.5 + d);
        let (lo_whole, lo_frac) = split(0.5 - d);
        let scale = h / (2.0 * halfwidth);
        Ok((0..self.grid.len() as isize)
            .map(|c| {
                scale
                    * (self.antiderivative_split(c + hi_whole, hi_frac)
                        - self.antiderivative_split(c + lo_whole, lo_frac))
            })
            .collect())
    }
}

fn split(u: f64) -> (isize, f64) {
    let w = floor(u);
    (w as isize, u - w)
}

fn compensated_prefix(samples: &[f64]) -> Vec<f64> {
    let mut prefix = Vec::with_capacity(samples.len() + 1);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    prefix.push(0.0);
    for &v in samples {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
        prefix.push(sum + comp);
    }
    prefix
}

/// Test-function and weight generators.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// Smooth bump `exp(−1/(1 − r²))` with `r = (x − center)/radius`.
    Bump {
        center: f64,
        radius: f64,
    },
    /// `χ_[lo, hi)`.
    Step {
        lo: f64,
        hi: f64,
    },
    /// Bounded oscillation supported in `(−radius, radius)` whose frequency
    /// doubles on each of `bands` equal sub-bands of `|x|`.
    DyadicChirp {
        radius: f64,
        bands: u32,
    },
    /// `|x − center|^exponent`.
    Power {
        exponent: f64,
        center: f64,
    },
    /// `log|x − center|`.
    LogAbs {
        center: f64,
    },
    /// `offset + sin x`.
    Oscillating {
        offset: f64,
    },
    Constant {
        value: f64,
    },
}

impl Generator {
    pub fn step_unit() -> Self {
        Generator::Step { lo: 0.0, hi: 1.0 }
    }

    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Generator::Bump { center, radius } => {
                let r = (x - center) / radius;
                if r.abs() < 1.0 {
                    crate::math::exp(-1.0 / (1.0 - r * r))
                } else {
                    0.0
                }
            }
            Generator::Step { lo, hi } => {
                if x >= lo && x < hi {
                    1.0
                } else {
                    0.0
                }
            }
            Generator::DyadicChirp { radius, bands } => {
                let r = x.abs() / radius;
                if r >= 1.0 {
                    return 0.0;
                }
                let band = floor(r * bands as f64);
                let freq = crate::math::pow2(band as i32);
                sin(core::f64::consts::PI * freq * x * bands as f64 / radius)
            }
            Generator::Power { exponent, center } => powf((x - center).abs(), exponent),
            Generator::LogAbs { center } => ln((x - center).abs()),
            Generator::Oscillating { offset } => offset + sin(x),
            Generator::Constant { value } => value,
        }
    }

    pub fn sample(&self, grid: Grid) -> GridFunction {
        GridFunction::from_fn(grid, |x| self.value(x))
    }
}

/// One grid function per level `l_min..=l_max`, all on the same grid.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorGridFunction {
    grid: Grid,
    l_min: i32,
    levels: Vec<Vec<f64>>,
}

impl VectorGridFunction {
    pub fn new(grid: Grid, l_min: i32, levels: Vec<Vec<f64>>) -> Result<Self> {
        if levels.is_empty() {
            bail!(Input, "a vector grid function needs at least one level");
        }
        if levels.iter().any(|l| l.len() != grid.len()) {
            bail!(Input, "every level must have {} samples", grid.len());
        }
        Ok(VectorGridFunction {
            grid,
            l_min,
            levels,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn l_min(&self) -> i32 {
        self.l_min
    }

    pub fn l_max(&self) -> i32 {
        self.l_min + self.levels.len() as i32 - 1
    }

    pub fn level(&self, l: i32) -> Option<&[f64]> {
        let i = l.checked_sub(self.l_min)?;
        self.levels.get(usize::try_from(i).ok()?).map(Vec::as_slice)
    }

    pub fn levels(&self) -> impl Iterator<Item = (i32, &[f64])> {
        self.levels
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.l_min + i as i32, v.as_slice()))
    }

    /// The coordinate sequence `{F_l(x_c)}_l` at cell `c`.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.levels
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.l_min + i as i32, v[c]))
    }

    pub fn zip_with(
        &self,
        other: &VectorGridFunction,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        if self.grid != other.grid
            || self.l_min != other.l_min
            || self.levels.len() != other.levels.len()
        {
            bail!(
                Input,
                "vector grid functions differ in grid or level window"
            );
        }
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
            .collect();
        Ok(VectorGridFunction {
            grid: self.grid,
            l_min: self.l_min,
            levels,
        })
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        VectorGridFunction {
            grid: self.grid,
            l_min: self.l_min,
            levels: self
                .levels
                .iter()
                .map(|v| v.iter().map(|&x| f(x)).collect())
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.levels
            .iter()
            .flatten()
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid() -> Grid {
        Grid::new(8.0, 512).unwrap()
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(1.0, 3).is_err());
        assert!(Grid::new(1.0, 1).is_err());
        assert!(Grid::new(0.0, 4).is_err());
        assert!(
            GridFunction::from_samples(Grid::new(1.0, 2).unwrap(), alloc::vec![1.0, f64::NAN])
                .is_err()
        );
    }

    #[test]
    fn integrals_of_simple_functions() {
        let g = grid();
        let one = GridFunction::constant(g, 1.0);
        assert!((one.integrate(&Interval::new(0.3, 1.0).unwrap()).unwrap() - 2.0).abs() < 1e-13);
        let step = Generator::step_unit().sample(g);
        assert_eq!(
            step.integrate(&Interval::new(0.0, 1.0).unwrap()).unwrap(),
            1.0
        );
        let x = GridFunction::from_fn(g, |x| x);
        assert!(
            x.integrate(&Interval::new(0.0, 3.3).unwrap())
                .unwrap()
                .abs()
                < 1e-12
        );
        assert!(one.integrate(&Interval::new(7.5, 1.0).unwrap()).is_err());
    }

    #[test]
    fn prefix_integral_matches_naive_sum() {
        let g = grid();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = GridFunction::from_fn(g, |x| sin(3.0 * x) + 0.1 * x * x);
        for _ in 0..200 {
            let a: f64 = rng.gen_range(-8.0..8.0);
            let b: f64 = rng.gen_range(a..8.0);
            let fast = f.integral_clipped(a, b);
            let naive: f64 = f
                .overlap_pairs(&Interval::from_endpoints(a, b.max(a + 1e-9)).unwrap())
                .unwrap()
                .iter()
                .map(|(v, w)| v * w)
                .sum();
            assert!((fast - naive).abs() < 1e-12 * (1.0 + naive.abs()));
        }
    }

    #[test]
    fn window_average_of_constant_and_delta() {
        let g = grid();
        let c = GridFunction::constant(g, 2.5);
        let avg = c.sliding_window_average(0.75).unwrap();
        for cell in 64..448 {
            assert!((avg.samples()[cell] - 2.5).abs() < 1e-13);
        }
        let mut s = alloc::vec![0.0; g.len()];
        s[256] = 1.0 / g.step();
        let delta = GridFunction::from_samples(g, s).unwrap();
        let w = 0.5;
        let out = delta.sliding_window_average(w).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let cell = rng.gen_range(200..312);
            let x = g.x(cell);
            let oracle = delta.integral_clipped(x - w, x + w) / (2.0 * w);
            assert!((out.samples()[cell] - oracle).abs() < 1e-12);
        }
        assert!((out.samples()[256] - 1.0 / (2.0 * w)).abs() < 1e-12);
    }

    #[test]
    fn window_rejects_subcell_width() {
        let g = grid();
        assert!(GridFunction::zeros(g)
            .sliding_window_average(0.25 * g.step())
            .is_err());
        assert!(GridFunction::zeros(g)
            .sliding_window_average(0.5 * g.step())
            .is_ok());
    }

    #[test]
    fn window_commutes_with_translation() {
        let g = grid();
        let f = Generator::Bump {
            center: -1.0,
            radius: 2.0,
        }
        .sample(g);
        for shift in [1isize, 7, 40] {
            let a = f
                .translate_cells(shift)
                .sliding_window_average(1.3)
                .unwrap();
            let b = f
                .sliding_window_average(1.3)
                .unwrap()
                .translate_cells(shift);
            for cell in 100..400 {
                assert!((a.samples()[cell] - b.samples()[cell]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn power_generator_integrates_near_closed_form() {
        let g = Grid::new(1.0, 1 << 12).unwrap();
        let f = Generator::Power {
            exponent: -0.5,
            center: 0.0,
        }
        .sample(g);
        let v = f
            .integrate(&Interval::from_endpoints(0.0, 1.0).unwrap())
            .unwrap();
        assert!((v - 2.0).abs() <= 2.0 * g.step().sqrt());
    }

    #[test]
    fn vector_function_access() {
        let g = Grid::new(1.0, 4).unwrap();
        let v =
            VectorGridFunction::new(g, -2, alloc::vec![alloc::vec![1.0; 4], alloc::vec![2.0; 4]])
                .unwrap();
        assert_eq!(v.l_max(), -1);
        assert_eq!(v.level(-1).unwrap()[0], 2.0);
        assert!(v.level(0).is_none());
        assert_eq!(
            v.column(3).collect::<Vec<_>>(),
            alloc::vec![(-2, 1.0), (-1, 2.0)]
        );
    }
}
