//! Thin wrappers over `libm` so the core builds without `std`.

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

/// Exact power of two, `2^e`.
#[inline]
pub fn pow2(e: i32) -> f64 {
    libm::ldexp(1.0, e)
}

/// `m^k` with the convention `0^0 = 1` and `0^k = 0` for `k ≥ 1`.
#[inline]
pub fn pow_k(m: f64, k: u32) -> f64 {
    if k == 0 {
        1.0
    } else if m == 0.0 {
        0.0
    } else {
        libm::pow(m, k as f64)
    }
}

pub fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_power_convention() {
        assert_eq!(pow_k(0.0, 0), 1.0);
        assert_eq!(pow_k(0.0, 1), 0.0);
        assert_eq!(pow_k(3.0, 2), 9.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6.0);
        assert_eq!(binomial(5, 0), 1.0);
        assert_eq!(binomial(5, 5), 1.0);
    }
}
