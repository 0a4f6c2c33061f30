//! Exact partition counts.
//!
//! [`exact_counts`] extracts the coefficients of `∏_{m} (1 − x^m)^{-1}` with the
//! unbounded coin-change recurrence. [`pentagonal_counts`] computes the
//! classical `p(n)` through Euler's pentagonal recurrence and shares no code
//! with the first routine, so the two can be checked against each other.

use rug::Integer;

use crate::error::{Error, Result};
use crate::models::LambdaSpec;

/// Exact values `p_Λ(0..=n_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigCountTable {
    n_max: usize,
    counts: Vec<Integer>,
    parts_used: Vec<u64>,
}

impl BigCountTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn counts(&self) -> &[Integer] {
        &self.counts
    }

    pub fn get(&self, n: usize) -> Option<&Integer> {
        self.counts.get(n)
    }

    /// Parts `≤ n_max` that took part in the recurrence.
    pub fn parts_used(&self) -> &[u64] {
        &self.parts_used
    }

    /// Natural logarithm of `p(n)`, `None` when the count is zero.
    pub fn ln(&self, n: usize, bits: u32) -> Option<rug::Float> {
        let c = self.counts.get(n)?;
        if *c == 0 {
            return None;
        }
        Some(rug::Float::with_val(bits, c).ln())
    }
}

fn check_n_max(n_max: i64) -> Result<usize> {
    usize::try_from(n_max).map_err(|_| Error::Argument(format!("n_max must be non-negative, got {n_max}")))
}

/// Number of multisets of `parts` summing to each `n ≤ n_max`.
///
/// `parts` must be strictly increasing and positive. Parts larger than
/// `n_max` are accepted and ignored.
pub fn exact_counts(parts: &[u64], n_max: i64) -> Result<BigCountTable> {
    let n_max = check_n_max(n_max)?;
    if parts.first() == Some(&0) {
        return Err(Error::Argument("parts must be positive".into()));
    }
    if parts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument("parts must be strictly increasing".into()));
    }

    let parts_used: Vec<u64> = parts.iter().copied().take_while(|&m| m as u128 <= n_max as u128).collect();
    let mut counts = vec![Integer::new(); n_max + 1];
    counts[0] = Integer::from(1);
    for &m in &parts_used {
        let m = m as usize;
        for n in m..=n_max {
            let (lo, hi) = counts.split_at_mut(n);
            hi[0] += &lo[n - m];
        }
    }
    Ok(BigCountTable { n_max, counts, parts_used })
}

/// Classical `p(n)` for `n ≤ n_max` via generalized pentagonal numbers
/// `k(3k−1)/2`, `k = ±1, ±2, …`.
pub fn pentagonal_counts(n_max: i64) -> Result<BigCountTable> {
    let n_max = check_n_max(n_max)?;
    let mut counts: Vec<Integer> = Vec::with_capacity(n_max + 1);
    counts.push(Integer::from(1));
    for n in 1..=n_max {
        let mut acc = Integer::new();
        for k in 1usize.. {
            let g_pos = k * (3 * k - 1) / 2;
            if g_pos > n {
                break;
            }
            let g_neg = k * (3 * k + 1) / 2;
            let add = k % 2 == 1;
            for g in [g_pos, g_neg] {
                if g <= n {
                    if add {
                        acc += &counts[n - g];
                    } else {
                        acc -= &counts[n - g];
                    }
                }
            }
        }
        counts.push(acc);
    }
    Ok(BigCountTable { n_max, counts, parts_used: (1..=n_max as u64).collect() })
}

/// `f(n) = Σ_{m ∈ Λ, m | n} m` for `n = 0..=n_max` (entry 0 is unused and zero).
pub fn f_weights(spec: &LambdaSpec, n_max: i64) -> Result<Vec<u64>> {
    if n_max < 1 {
        return Err(Error::Argument(format!("n_max must be at least 1, got {n_max}")));
    }
    let n_max = n_max as usize;
    let mut f = vec![0u64; n_max + 1];
    for m in spec.parts_up_to(n_max as u64) {
        let m = m as usize;
        for multiple in (m..=n_max).step_by(m) {
            f[multiple] += m as u64;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(parts: &[u64], n: u64) -> u64 {
        fn go(parts: &[u64], n: u64) -> u64 {
            match parts.split_first() {
                None => u64::from(n == 0),
                Some((&m, rest)) => (0..=n / m).map(|j| go(rest, n - j * m)).sum(),
            }
        }
        go(parts, n)
    }

    #[test]
    fn first_ten_parts_give_p10() {
        let parts: Vec<u64> = (1..=10).collect();
        let t = exact_counts(&parts, 10).unwrap();
        assert_eq!(t.counts()[10], 42);
        assert_eq!(pentagonal_counts(10).unwrap().counts()[10], 42);
    }

    #[test]
    fn even_parts_miss_odd_targets() {
        let t = exact_counts(&[2, 4, 6], 5).unwrap();
        assert_eq!(t.counts()[5], 0);
        assert_eq!(t.counts()[4], 2);
    }

    #[test]
    fn single_part_one() {
        let t = exact_counts(&[1], 7).unwrap();
        assert!(t.counts().iter().all(|c| *c == 1));
    }

    #[test]
    fn empty_parts_table() {
        let t = exact_counts(&[], 5).unwrap();
        assert_eq!(t.counts()[0], 1);
        assert!(t.counts()[1..].iter().all(|c| *c == 0));
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(exact_counts(&[1, 2], -1), Err(Error::Argument(_))));
        assert!(matches!(exact_counts(&[0, 2], 3), Err(Error::Argument(_))));
        assert!(matches!(exact_counts(&[3, 2], 3), Err(Error::Argument(_))));
        assert!(matches!(pentagonal_counts(-3), Err(Error::Argument(_))));
    }

    #[test]
    fn pentagonal_small_values() {
        let t = pentagonal_counts(4).unwrap();
        let v: Vec<u32> = t.counts().iter().map(|c| c.to_u32().unwrap()).collect();
        assert_eq!(v, [1, 1, 2, 3, 5]);
        assert_eq!(pentagonal_counts(0).unwrap().counts().len(), 1);
    }

    #[test]
    fn p100_cross_oracle() {
        let parts: Vec<u64> = (1..=100).collect();
        let a = exact_counts(&parts, 100).unwrap();
        let b = pentagonal_counts(100).unwrap();
        assert_eq!(a.counts(), b.counts());
        assert_eq!(a.counts()[100].to_string(), "190569292");
    }

    #[test]
    fn dp_matches_brute_force() {
        for parts in [vec![1u64, 3, 7], vec![2, 5], vec![3, 4, 5, 11]] {
            let t = exact_counts(&parts, 40).unwrap();
            for n in 0..=40u64 {
                assert_eq!(t.counts()[n as usize], brute_force(&parts, n), "parts {parts:?} n {n}");
            }
        }
    }

    #[test]
    fn divisor_weights() {
        let f = f_weights(&LambdaSpec::Classical, 12).unwrap();
        assert_eq!(f[6], 12);
        let sq = f_weights(&LambdaSpec::powers(2).unwrap(), 12).unwrap();
        assert_eq!(sq[12], 5);
        let ap = f_weights(&LambdaSpec::power_ap(3, 2, 1).unwrap(), 15).unwrap();
        assert_eq!(ap[15], 3 + 5 + 15);
    }
}
