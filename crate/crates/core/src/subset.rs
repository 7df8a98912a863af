//! Colexicographic ranking of fixed-size subsets of `{0..n}`.
//!
//! Subsets are handled internally as `u64` bitmasks, which caps the ground
//! set at 64 points. Colex order has the property that the subsets of
//! `{0..n}` form a prefix of the subsets of `{0..n+1}`, so ranks are stable
//! when points are appended.

use thiserror::Error;

/// Largest supported ground set.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("ground set of {n} points exceeds the supported maximum of {MAX_POINTS}")]
    TooManyPoints { n: usize },
    #[error("element {element} out of range for ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("subset has {got} distinct elements, expected {expected}")]
    WrongSize { got: usize, expected: usize },
    #[error("rank {rank} out of range: C({n},{r}) = {count}")]
    RankOutOfRange { rank: u64, n: usize, r: usize, count: u64 },
}

const fn build_binomials() -> [[u64; MAX_POINTS + 1]; MAX_POINTS + 1] {
    let mut table = [[0u64; MAX_POINTS + 1]; MAX_POINTS + 1];
    let mut n = 0;
    while n <= MAX_POINTS {
        table[n][0] = 1;
        let mut k = 1;
        while k <= n {
            table[n][k] = table[n - 1][k - 1] + if k < n { table[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    table
}

static BINOMIALS: [[u64; MAX_POINTS + 1]; MAX_POINTS + 1] = build_binomials();

/// `C(n, k)` for `n <= 64`; zero when `k > n`.
#[inline]
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        0
    } else {
        BINOMIALS[n][k]
    }
}

/// `C(n, k)` for arbitrary `n`, saturating at `u128::MAX`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Colex rank of the subset encoded by `mask`.
#[inline]
pub fn rank_mask(mask: u64) -> u64 {
    let mut rank = 0;
    let mut rest = mask;
    let mut i = 1;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        rank += binomial(bit, i);
        rest &= rest - 1;
        i += 1;
    }
    rank
}

/// Inverse of [`rank_mask`] for subsets of size `r`. The caller guarantees
/// `rank < C(64, r)`.
#[inline]
pub fn unrank_mask(mut rank: u64, r: usize) -> u64 {
    let mut mask = 0u64;
    let mut hi = MAX_POINTS;
    for i in (1..=r).rev() {
        // largest c < hi with C(c, i) <= rank
        let mut c = hi - 1;
        while binomial(c, i) > rank {
            c -= 1;
        }
        rank -= binomial(c, i);
        mask |= 1u64 << c;
        hi = c;
    }
    mask
}

pub fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0u64, |m, &e| m | (1u64 << e))
}

pub fn elements_of(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// Colex rank of an `r`-subset of `{0..n}`, where `r = subset.len()`.
pub fn rank(subset: &[usize], n: usize) -> Result<u64, SubsetError> {
    if n > MAX_POINTS {
        return Err(SubsetError::TooManyPoints { n });
    }
    if let Some(&element) = subset.iter().find(|&&e| e >= n) {
        return Err(SubsetError::ElementOutOfRange { element, n });
    }
    let mask = mask_of(subset);
    if mask.count_ones() as usize != subset.len() {
        return Err(SubsetError::WrongSize {
            got: mask.count_ones() as usize,
            expected: subset.len(),
        });
    }
    Ok(rank_mask(mask))
}

/// The `r`-subset of `{0..n}` with colex rank `k`, sorted ascending.
pub fn unrank(k: u64, n: usize, r: usize) -> Result<Vec<usize>, SubsetError> {
    if n > MAX_POINTS {
        return Err(SubsetError::TooManyPoints { n });
    }
    let count = binomial(n, r);
    if k >= count {
        return Err(SubsetError::RankOutOfRange { rank: k, n, r, count });
    }
    Ok(elements_of(unrank_mask(k, r)))
}

/// Calls `f` with every `size`-subset of the bits of `pool`, as a mask.
/// Order is colex within the pool.
pub fn for_each_subset_of(pool: u64, size: usize, mut f: impl FnMut(u64)) {
    let elems = elements_of(pool);
    let m = elems.len();
    if size > m {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(idx.iter().fold(0u64, |acc, &i| acc | (1u64 << elems[i])));
        // colex successor on indices into elems
        let mut i = 0;
        while i < size {
            let limit = if i + 1 < size { idx[i + 1] } else { m };
            if idx[i] + 1 < limit {
                idx[i] += 1;
                for (j, slot) in idx.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        if i == size {
            return;
        }
    }
}

/// Masks of all `r`-subsets of `{0..n}` in colex order.
pub fn all_subsets(n: usize, r: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(binomial(n, r) as usize);
    let pool = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for_each_subset_of(pool, r, |m| out.push(m));
    out
}
