//! Root finding for Luxemburg-type problems.
//!
//! Every infimum of the form `inf{λ > 0 : F(λ) ≤ 1}` in this crate has a
//! nonincreasing `F`. The solver works on `g(u) = ln F(e^u)`, which is
//! exactly linear for power Young functions and close to linear otherwise,
//! so the Illinois variant of regula falsi converges in a handful of steps.

use crate::math::{exp, ln};

/// Relative width of the final bracket on λ.
pub(crate) const REL_TOL: f64 = 1e-12;

/// Returns the smallest `λ` (to relative width [`REL_TOL`]) with
/// `avg(λ) ≤ 1`. The returned value is always on the feasible side.
///
/// `lo` and `hi` are initial guesses; they are widened geometrically when
/// they do not bracket the crossing.
pub(crate) fn decreasing_crossing(mut avg: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let mut g = |u: f64| -> f64 {
        let v = avg(exp(u));
        if v.is_nan() {
            f64::INFINITY
        } else {
            ln(v)
        }
    };
    let mut a = ln(lo.min(hi));
    let mut b = ln(hi.max(lo));
    let mut ga = g(a);
    let mut step = 1.0;
    while ga <= 0.0 {
        b = a;
        a -= step;
        step *= 2.0;
        ga = g(a);
        if a < -700.0 {
            return exp(b);
        }
    }
    let mut gb = g(b);
    step = 1.0;
    while gb > 0.0 {
        a = b;
        ga = gb;
        b += step;
        step *= 2.0;
        gb = g(b);
        if b > 700.0 {
            return f64::INFINITY;
        }
    }

    let mut side = 0i8;
    for _ in 0..400 {
        if b - a <= REL_TOL {
            break;
        }
        let secant = if ga.is_finite() && gb.is_finite() && ga != gb {
            b - gb * (b - a) / (gb - ga)
        } else {
            0.5 * (a + b)
        };
        let c = if secant > a && secant < b {
            secant
        } else {
            0.5 * (a + b)
        };
        let gc = g(c);
        if gc > 0.0 {
            a = c;
            ga = gc;
            if side == -1 {
                gb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            gb = gc;
            if side == 1 {
                ga *= 0.5;
            }
            side = 1;
            if gc > -1e-14 {
                let probe = c - 0.5 * REL_TOL;
                if probe > a {
                    let gp = g(probe);
                    if gp > 0.0 {
                        break;
                    }
                }
            }
        }
    }
    exp(b)
}

/// Bisection for the inverse of a continuous nondecreasing map on `[0, ∞)`:
/// returns `t` with `phi(t) = s` to relative tolerance `tol`.
pub(crate) fn increasing_inverse(phi: impl Fn(f64) -> f64, s: f64, tol: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while phi(hi) < s {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return f64::INFINITY;
        }
    }
    if lo == 0.0 {
        let mut probe = hi;
        while probe > 1e-300 && phi(probe * 0.5) >= s {
            probe *= 0.5;
        }
        hi = probe;
        lo = probe * 0.5;
        if phi(lo) >= s {
            return lo;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) < s {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_of_power_average() {
        // F(λ) = 8 / λ^3 crosses 1 at λ = 2.
        let lam = decreasing_crossing(|l| 8.0 / (l * l * l), 0.1, 100.0);
        assert!((lam - 2.0).abs() < 1e-11);
        assert!(8.0 / (lam * lam * lam) <= 1.0);
    }

    #[test]
    fn crossing_expands_bad_bracket() {
        let lam = decreasing_crossing(|l| 1e6 / l, 1.0, 2.0);
        assert!((lam / 1e6 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn inverse_of_square() {
        let t = increasing_inverse(|t| t * t, 9.0, 1e-14);
        assert!((t - 3.0).abs() < 1e-12);
        let small = increasing_inverse(|t| t * t, 1e-10, 1e-14);
        assert!((small - 1e-5).abs() < 1e-16);
    }
}
