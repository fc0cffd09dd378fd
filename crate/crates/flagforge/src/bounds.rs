//! Shadow bounds, construction cost functions and their closed-form ceilings.

use crate::combinatorics::{binom, binom_floor, turan_count, turan_floor};
use crate::decompose::{color_rep, flag_rep, kk_rep};
use crate::error::{invalid, Result};
use crate::real::{Factor, Surd, SurdView};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

fn check_kp(k: i64, p: i64) -> Result<()> {
    if !(1 <= p && p < k) {
        return invalid(format!("need 1 <= p < k, got k={k}, p={p}"));
    }
    Ok(())
}

/// Kruskal-Katona lower bound on `f_{p-1}` given `f_{k-1} = m`.
pub fn kk_shadow(m: u64, k: i64, p: i64) -> Result<BigUint> {
    check_kp(k, p)?;
    let rep = kk_rep(m, k)?;
    Ok(rep.terms.iter().enumerate().map(|(i, &(n, _))| binom(n, p - i as i64)).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Lower bound on the face number `i` levels below.
    Down,
    /// Upper bound on the face number `i` levels above.
    Up,
}

pub fn kk_chain(m: u64, k: i64, i: i64, dir: Direction) -> Result<BigUint> {
    if i < 1 {
        return invalid("chain length must be at least 1");
    }
    match dir {
        Direction::Down => {
            if k - i < 1 {
                return invalid("cannot chain below cardinality 1");
            }
            let rep = kk_rep(m, k)?;
            Ok(rep.terms.iter().map(|&(n, b)| binom(n, b - i)).sum())
        }
        Direction::Up => {
            let mut cur = m;
            let mut kk = k;
            for _ in 0..i {
                if cur == 0 {
                    break;
                }
                let rep = kk_rep(cur, kk)?;
                let next: BigUint = rep.terms.iter().map(|&(n, b)| binom(n, b + 1)).sum();
                cur = next.to_u64().expect("upward chain shrinks");
                kk += 1;
            }
            Ok(BigUint::from(cur))
        }
    }
}

/// Frankl-Füredi-Kalai lower bound on `f_{p-1}` for `r`-colored complexes.
pub fn ffk_bound(m: u64, k: i64, p: i64, r: i64) -> Result<BigUint> {
    check_kp(k, p)?;
    let rep = color_rep(m, k, r)?;
    Ok(rep
        .terms
        .iter()
        .enumerate()
        .map(|(i, &(n, _))| turan_count(n, p - i as i64, r - i as i64))
        .sum())
}

/// Lower-face cost of the tail extras in the two-face construction.
pub fn c_cost(m: u64, k: i64, p: i64) -> Result<BigUint> {
    check_kp(k, p)?;
    if k < 2 {
        return invalid("cost needs k >= 2");
    }
    let mut rem = BigUint::from(m);
    let mut total = BigUint::zero();
    while !rem.is_zero() {
        let g = binom_floor(&rem, k - 1);
        total += binom(g, p - 1);
        rem -= binom(g, k - 1);
    }
    Ok(total)
}

/// Colored analog of [`c_cost`] with `r - 1` parts in every link.
pub fn d_cost(m: u64, k: i64, p: i64, r: i64) -> Result<BigUint> {
    check_kp(k, p)?;
    if r < k {
        return invalid("need r >= k");
    }
    let mut rem = BigUint::from(m);
    let mut total = BigUint::zero();
    while !rem.is_zero() {
        let j = turan_floor(&rem, k - 1, r - 1);
        total += turan_count(j, p - 1, r - 1);
        rem -= turan_count(j, k - 1, r - 1);
    }
    Ok(total)
}

fn series<F, G>(limit: u64, step: F, cost: G, lo: i64) -> Vec<u64>
where
    F: Fn(i64) -> u64,
    G: Fn(i64) -> u64,
{
    let mut out = vec![0u64; limit as usize + 1];
    let mut g = lo;
    for m in 1..=limit {
        while step(g + 1) <= m {
            g += 1;
        }
        let s = step(g);
        out[m as usize] = cost(g) + out[(m - s) as usize];
    }
    out
}

fn small(v: BigUint) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

/// `c_cost(m, k, p)` for every `0 <= m <= limit`.
pub fn c_cost_series(limit: u64, k: i64, p: i64) -> Result<Vec<u64>> {
    check_kp(k, p)?;
    Ok(series(limit, |g| small(binom(g, k - 1)), |g| small(binom(g, p - 1)), k - 1))
}

/// `d_cost(m, k, p, r)` for every `0 <= m <= limit`.
pub fn d_cost_series(limit: u64, k: i64, p: i64, r: i64) -> Result<Vec<u64>> {
    check_kp(k, p)?;
    if r < k {
        return invalid("need r >= k");
    }
    Ok(series(
        limit,
        |j| small(turan_count(j, k - 1, r - 1)),
        |j| small(turan_count(j, p - 1, r - 1)),
        k - 1,
    ))
}

fn check_strict(k: i64, p: i64) -> Result<()> {
    if !(1 < p && p < k) {
        return invalid(format!("need 1 < p < k, got k={k}, p={p}"));
    }
    Ok(())
}

/// `binom(k-1, p-1) ((k+1)/2)^((k-p)/(k-1)) m^((p-1)/(k-1))`.
pub fn c_cost_upper(m: u64, k: i64, p: i64) -> Result<Surd> {
    check_strict(k, p)?;
    if m == 0 {
        return Ok(Surd::zero());
    }
    let e = (k - 1) as u32;
    Ok(Surd::product(&[
        Factor::int(binom(k - 1, p - 1), 1, 1),
        Factor::ratio((k + 1) as u64, 2u32, k - p, e),
        Factor::int(m, p - 1, e),
    ]))
}

/// `binom(r-1, p-1) binom(r-1, k-1)^(-(p-1)/(k-1)) 2^(k-1) m^((p-1)/(k-1))`.
pub fn d_cost_upper(m: u64, k: i64, p: i64, r: i64) -> Result<Surd> {
    check_strict(k, p)?;
    if r < k {
        return invalid("need r >= k");
    }
    if m == 0 {
        return Ok(Surd::zero());
    }
    let e = (k - 1) as u32;
    Ok(Surd::product(&[
        Factor::int(binom(r - 1, p - 1), 1, 1),
        Factor::int(binom(r - 1, k - 1), -(p - 1), e),
        Factor::int(2u32, k - 1, 1),
        Factor::int(m, p - 1, e),
    ]))
}

fn factorial(n: i64) -> BigUint {
    (1..=n.max(0) as u64).map(BigUint::from).product()
}

/// `((k-1)!)^((p-1)/(k-1)) / (p-1)!`, the limit of `c_cost / m^((p-1)/(k-1))`.
pub fn limit_constant_two(k: i64, p: i64) -> Result<Surd> {
    check_kp(k, p)?;
    if k < 2 {
        return invalid("need k >= 2");
    }
    Ok(Surd::product(&[
        Factor::int(factorial(k - 1), p - 1, (k - 1) as u32),
        Factor::int(factorial(p - 1), -1, 1),
    ]))
}

/// `binom(r-1, p-1) binom(r-1, k-1)^(-(p-1)/(k-1))`, the colored limit.
pub fn limit_constant_dim(r: i64, k: i64, p: i64) -> Result<Surd> {
    check_kp(k, p)?;
    if r < k || k < 2 {
        return invalid("need r >= k >= 2");
    }
    Ok(Surd::product(&[
        Factor::int(binom(r - 1, p - 1), 1, 1),
        Factor::int(binom(r - 1, k - 1), -(p - 1), (k - 1) as u32),
    ]))
}

/// `binom(d, p) binom(d, k)^(-p/k) m^(p/k)`: the lower bound on `f_{p-1}` of a
/// flag complex of dimension `d-1` with `f_{k-1} = m`.
pub fn equal_vertices_bound(d: i64, k: i64, p: i64, m: u64) -> Result<Surd> {
    if !(1 <= p && p <= k && k <= d) {
        return invalid("need 1 <= p <= k <= d");
    }
    if m == 0 {
        return Ok(Surd::zero());
    }
    Ok(Surd::product(&[
        Factor::int(binom(d, p), 1, 1),
        Factor::int(binom(d, k), -p, k as u32),
        Factor::int(m, p, k as u32),
    ]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    KkShadow,
    KkChain,
    Ffk,
    FlagTwoBranch,
    EqualVertices,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    SimplexBranch,
    ColoredBranch,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    Exact(#[serde(with = "crate::bigjson")] BigUint),
    Real(SurdView),
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: BoundValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_taken: Option<Branch>,
}

/// The two branch values of the flag bound; `colored` is `None` when the
/// colored branch needs fewer than `k` colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagBound {
    pub simplex: BigUint,
    pub colored: Option<BigUint>,
}

impl FlagBound {
    pub fn value(&self) -> BigUint {
        match &self.colored {
            Some(c) if *c < self.simplex => c.clone(),
            _ => self.simplex.clone(),
        }
    }

    pub fn branch(&self) -> Branch {
        match &self.colored {
            Some(c) if *c < self.simplex => Branch::ColoredBranch,
            _ => Branch::SimplexBranch,
        }
    }
}

pub fn flag_bound_branches(m: u64, k: i64, p: i64) -> Result<FlagBound> {
    check_kp(k, p)?;
    let rep = flag_rep(m, k)?;
    let mut simplex = binom(rep.n_k, p);
    if let Some(n) = rep.n_k1 {
        simplex += binom(n, p - 1);
    }
    for (i, &(a, _)) in rep.a_terms.iter().enumerate() {
        simplex += binom(a, p - 1 - i as i64);
    }
    let r = rep.n_k - 1;
    let colored = if r < k { None } else { Some(ffk_bound(m, k, p, r)?) };
    Ok(FlagBound { simplex, colored })
}

/// Lower bound on `f_{p-1}` of a flag complex with `f_{k-1} = m`; needs `k >= 3`.
pub fn flag_lower_bound(m: u64, k: i64, p: i64) -> Result<BoundReport> {
    let fb = flag_bound_branches(m, k, p)?;
    Ok(BoundReport {
        kind: BoundKind::FlagTwoBranch,
        value: BoundValue::Exact(fb.value()),
        branch_taken: Some(fb.branch()),
    })
}
