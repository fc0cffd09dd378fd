//! Exact binomial and Turán clique counts.
//!
//! Conventions: `binom(n, k) = 0` for `k < 0` or `k > n`, and
//! `turan_count(n, k, r) = 0` whenever `k < 0`, `n < 0`, `k > r` or `n < k`,
//! with `turan_count(n, 0, r) = 1` for `n >= 0`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Binomial coefficient with the zero convention outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

/// Part sizes of a balanced partition, largest parts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranParts {
    pub sizes: Vec<u64>,
}

impl TuranParts {
    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }
}

/// Split `n` vertices into `r` parts as evenly as possible.
pub fn turan_parts(n: u64, r: u64) -> TuranParts {
    assert!(r >= 1, "turan_parts needs at least one part");
    let p = n / r;
    let q = n % r;
    let sizes = (0..r).map(|i| if i < q { p + 1 } else { p }).collect();
    TuranParts { sizes }
}

/// Number of `k`-cliques in the Turán graph `T(n, r)`.
pub fn turan_count(n: i64, k: i64, r: i64) -> BigUint {
    if n < 0 || k < 0 {
        return BigUint::zero();
    }
    if k == 0 {
        return BigUint::one();
    }
    if k > r || n < k {
        return BigUint::zero();
    }
    let p = n / r;
    let q = n % r;
    let big = BigUint::from((p + 1) as u64);
    let small = BigUint::from(p as u64);
    let mut total = BigUint::zero();
    // i clique vertices from the q larger parts, k - i from the rest
    for i in 0..=k.min(q) {
        let j = k - i;
        if j > r - q {
            continue;
        }
        total += binom(q, i) * big.pow(i as u32) * binom(r - q, j) * small.pow(j as u32);
    }
    total
}

/// Elementary symmetric polynomial `e_k` of the part sizes, i.e. the number of
/// `k`-cliques of the complete multipartite graph with these parts.
pub fn multipartite_count(parts: &[u64], k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    let k = k as usize;
    if k > parts.len() {
        return BigUint::zero();
    }
    let mut e = vec![BigUint::zero(); k + 1];
    e[0] = BigUint::one();
    for &a in parts {
        let a = BigUint::from(a);
        for j in (1..=k).rev() {
            let add = &e[j - 1] * &a;
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

/// Largest `n >= lo` with `f(n) <= target`, for `f` non-decreasing and unbounded.
pub(crate) fn largest_at_most<F>(target: &BigUint, lo: i64, f: F) -> i64
where
    F: Fn(i64) -> BigUint,
{
    debug_assert!(f(lo) <= *target);
    let mut step = 1i64;
    let mut good = lo;
    while f(good + step) <= *target {
        good += step;
        step *= 2;
    }
    let mut bad = good + step;
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if f(mid) <= *target {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Largest `n` with `binom(n, k) <= target`; requires `k >= 1`.
pub fn binom_floor(target: &BigUint, k: i64) -> i64 {
    assert!(k >= 1);
    largest_at_most(target, k - 1, |n| binom(n, k))
}

/// Largest `n` with `turan_count(n, k, r) <= target`; requires `1 <= k <= r`.
pub fn turan_floor(target: &BigUint, k: i64, r: i64) -> i64 {
    assert!(k >= 1 && k <= r);
    largest_at_most(target, k - 1, |n| turan_count(n, k, r))
}
