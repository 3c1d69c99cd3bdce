//! Wavelet matrix over value ranks, answering "count and sum of the values
//! above a threshold in a range of positions" in `O(log n)`.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) struct WaveletSums {
    sorted: Vec<f64>,
    bits: u32,
    /// Per level: number of zero bits among the first `i` positions.
    zeros_before: Vec<Vec<u32>>,
    /// Per level: total zeros.
    zero_count: Vec<u32>,
    /// Per level: prefix sums of values in the order after partitioning.
    sums: Vec<Vec<f64>>,
}

impl WaveletSums {
    pub(crate) fn new(values: &[f64]) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut rank = vec![0u32; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r as u32;
        }
        let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        let bits = usize::BITS - n.max(1).leading_zeros();

        let mut cur: Vec<(u32, f64)> = rank.iter().copied().zip(values.iter().copied()).collect();
        let mut zeros_before = Vec::with_capacity(bits as usize);
        let mut zero_count = Vec::with_capacity(bits as usize);
        let mut sums = Vec::with_capacity(bits as usize);
        for level in (0..bits).rev() {
            let mut zb = Vec::with_capacity(n + 1);
            zb.push(0u32);
            let mut z = 0u32;
            for &(r, _) in &cur {
                if r >> level & 1 == 0 {
                    z += 1;
                }
                zb.push(z);
            }
            let mut next: Vec<(u32, f64)> = Vec::with_capacity(n);
            next.extend(cur.iter().filter(|(r, _)| r >> level & 1 == 0));
            next.extend(cur.iter().filter(|(r, _)| r >> level & 1 == 1));
            let mut ps = Vec::with_capacity(n + 1);
            let mut acc = 0.0;
            ps.push(0.0);
            for &(_, v) in &next {
                acc += v;
                ps.push(acc);
            }
            zeros_before.push(zb);
            zero_count.push(z);
            sums.push(ps);
            cur = next;
        }
        WaveletSums {
            sorted,
            bits,
            zeros_before,
            zero_count,
            sums,
        }
    }

    /// `(count, sum)` of the values strictly greater than `threshold` among
    /// positions `lo..hi`.
    pub(crate) fn above(&self, lo: usize, hi: usize, threshold: f64) -> (usize, f64) {
        if lo >= hi {
            return (0, 0.0);
        }
        let k = self.sorted.partition_point(|&v| v <= threshold);
        if k >= self.sorted.len() {
            return (0, 0.0);
        }
        let (mut l, mut r) = (lo, hi);
        let mut count = 0usize;
        let mut sum = 0.0;
        for (d, level) in (0..self.bits).rev().enumerate() {
            let zb = &self.zeros_before[d];
            let z = self.zero_count[d] as usize;
            let (l0, r0) = (zb[l] as usize, zb[r] as usize);
            let (l1, r1) = (z + l - l0, z + r - r0);
            if (k >> level) & 1 == 0 {
                // Every rank with a 1 here exceeds k.
                count += r1 - l1;
                sum += self.sums[d][r1] - self.sums[d][l1];
                l = l0;
                r = r0;
            } else {
                l = l1;
                r = r1;
            }
            if l >= r {
                return (count, sum);
            }
        }
        // Remaining positions hold rank exactly k.
        let d = self.bits as usize - 1;
        count += r - l;
        sum += self.sums[d][r] - self.sums[d][l];
        (count, sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [1usize, 2, 5, 64, 300] {
            let values: Vec<f64> = (0..n)
                .map(|_| (rng.gen_range(0..20) as f64) * 0.5 - 3.0)
                .collect();
            let tree = WaveletSums::new(&values);
            for _ in 0..300 {
                let lo = rng.gen_range(0..=n);
                let hi = rng.gen_range(lo..=n);
                let t = rng.gen_range(-4.0..8.0);
                let (c, s) = tree.above(lo, hi, t);
                let bc = values[lo..hi].iter().filter(|&&v| v > t).count();
                let bs: f64 = values[lo..hi].iter().filter(|&&v| v > t).sum();
                assert_eq!(c, bc);
                assert!((s - bs).abs() < 1e-9);
            }
        }
    }
}
