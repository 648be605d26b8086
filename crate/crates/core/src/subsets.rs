//! k-subsets of `[n]`: colexicographic ranking and enumeration.

use crate::error::{Error, Result};

/// `C(n, k)` as `u64`, `None` on overflow.
pub fn binom_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Colex rank of a strictly increasing 1-based subset: `Σ_i C(a_i - 1, i)`.
pub fn colex_rank(set: &[usize]) -> u64 {
    set.iter()
        .enumerate()
        .map(|(i, &a)| binom_u64(a as u64 - 1, i as u64 + 1).expect("small rank"))
        .sum()
}

/// Inverse of [`colex_rank`] for subsets of size `k`.
pub fn colex_unrank(mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        // largest c with C(c, i) <= rank
        let mut c = i as u64 - 1;
        while binom_u64(c + 1, i as u64).expect("small rank") <= rank {
            c += 1;
        }
        rank -= binom_u64(c, i as u64).expect("small rank");
        out[i - 1] = c as usize + 1;
    }
    out
}

/// All k-subsets of `[n]` in colex order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        n,
        current: if k <= n { Some((1..=k).collect()) } else { None },
    }
}

pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let k = next.len();
        // colex successor: bump the first element that can move up
        let mut i = 0;
        while i < k && (if i + 1 < k { next[i] + 1 == next[i + 1] } else { next[i] == self.n }) {
            i += 1;
        }
        if i < k {
            next[i] += 1;
            for (j, slot) in next.iter_mut().enumerate().take(i) {
                *slot = j + 1;
            }
            self.current = Some(next);
        }
        Some(cur)
    }
}

/// Guards a desk-scale enumeration.
pub(crate) fn check_limit(what: &str, count: u64, limit: u64) -> Result<()> {
    if count > limit {
        return Err(Error::ResourceLimit(format!(
            "{what}: {count} exceeds the limit {limit}"
        )));
    }
    Ok(())
}
