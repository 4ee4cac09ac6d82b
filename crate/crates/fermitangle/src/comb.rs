//! Lexicographic ranking of strictly increasing mode subsets.
//!
//! The antisymmetric N-fermion basis over d modes is indexed by the
//! k-subsets of {0, .., d-1} in lexicographic order; everything else in the
//! crate relies on this ordering being bijective and deterministic.

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k); 0 when k > n.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 1..=k {
        result = result * (n - (k - i)) as u128 / i as u128;
    }
    result as usize
}

fn validate(modes: &[usize], d: usize) -> Result<()> {
    if !modes.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::NotStrictlyIncreasing(modes.to_vec()));
    }
    if let Some(&mode) = modes.iter().find(|&&m| m >= d) {
        return Err(Error::ModeOutOfRange { mode, d });
    }
    Ok(())
}

/// Lexicographic rank of a strictly increasing subset of {0, .., d-1}.
pub fn rank_subset(modes: &[usize], d: usize) -> Result<usize> {
    validate(modes, d)?;
    let k = modes.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &m) in modes.iter().enumerate() {
        for j in prev..m {
            rank += binomial(d - j - 1, k - i - 1);
        }
        prev = m + 1;
    }
    Ok(rank)
}

/// Inverse of [`rank_subset`]: the k-subset of {0, .., d-1} at `rank`.
pub fn unrank_subset(mut rank: usize, d: usize, k: usize) -> Result<Vec<usize>> {
    let count = binomial(d, k);
    if rank >= count {
        return Err(Error::RankOutOfRange { rank, d, k, count });
    }
    let mut modes = Vec::with_capacity(k);
    let mut next = 0;
    for i in 0..k {
        let mut m = next;
        loop {
            let below = binomial(d - m - 1, k - i - 1);
            if below <= rank {
                rank -= below;
                m += 1;
            } else {
                modes.push(m);
                next = m + 1;
                break;
            }
        }
    }
    Ok(modes)
}

/// Iterator over all k-subsets of {0, .., d-1} in lexicographic order.
pub fn subsets(d: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = binomial(d, k);
    (0..count).map(move |r| unrank_subset(r, d, k).expect("rank in range"))
}

/// Sign of the permutation that merges two disjoint sorted subsets into one
/// sorted sequence (`kept` listed first, then `traced`).
pub fn merge_sign(kept: &[usize], traced: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for &g in traced {
        inversions += kept.iter().filter(|&&b| b > g).count();
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Merge two disjoint sorted subsets into one sorted vector.
pub fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
