//! Greedy cascade representations of integers as sums of binomial or Turán
//! coefficients.

use crate::combinatorics::{binom, binom_floor, turan_count, turan_floor};
use crate::error::{invalid, Result};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "snake_case")]
pub enum Flavor {
    Plain,
    Colored { r: i64 },
}

/// `(top, bottom)` pairs with bottoms `k, k-1, ..., k-s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeRep {
    pub terms: Vec<(i64, i64)>,
    #[serde(flatten)]
    pub flavor: Flavor,
    pub value: u64,
}

impl CascadeRep {
    /// Value of term `i`: a binomial, or a Turán count with `r - i` parts.
    pub fn term_value(&self, i: usize) -> BigUint {
        let (n, b) = self.terms[i];
        match self.flavor {
            Flavor::Plain => binom(n, b),
            Flavor::Colored { r } => turan_count(n, b, r - i as i64),
        }
    }

    pub fn evaluate(&self) -> BigUint {
        (0..self.terms.len()).map(|i| self.term_value(i)).sum()
    }

    pub fn tops(&self) -> Vec<i64> {
        self.terms.iter().map(|t| t.0).collect()
    }

    /// The number of terms after the leading one.
    pub fn s(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }
}

fn check_mk(m: u64, k: i64) -> Result<()> {
    if m == 0 {
        return invalid("m must be at least 1");
    }
    if k < 1 {
        return invalid("k must be at least 1");
    }
    Ok(())
}

/// Plain cascade: `m = sum binom(n_{k-i}, k-i)` with strictly decreasing tops.
pub fn kk_rep(m: u64, k: i64) -> Result<CascadeRep> {
    check_mk(m, k)?;
    let mut rem = BigUint::from(m);
    let mut terms = Vec::new();
    let mut b = k;
    while !rem.is_zero() {
        let n = binom_floor(&rem, b);
        rem -= binom(n, b);
        terms.push((n, b));
        b -= 1;
    }
    Ok(CascadeRep { terms, flavor: Flavor::Plain, value: m })
}

/// Colored cascade: term `i` is `turan_count(n_{k-i}, k-i, r-i)`.
pub fn color_rep(m: u64, k: i64, r: i64) -> Result<CascadeRep> {
    check_mk(m, k)?;
    if r < k {
        return invalid(format!("need r >= k, got r={r}, k={k}"));
    }
    let mut rem = BigUint::from(m);
    let mut terms = Vec::new();
    let mut b = k;
    let mut rr = r;
    while !rem.is_zero() {
        let n = turan_floor(&rem, b, rr);
        rem -= turan_count(n, b, rr);
        terms.push((n, b));
        b -= 1;
        rr -= 1;
    }
    Ok(CascadeRep { terms, flavor: Flavor::Colored { r }, value: m })
}

/// `q = T(a, k) + T(b, k-1) + m` where `T` is binomial or Turán flavored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTermRep {
    pub a: i64,
    pub b: i64,
    pub m: u64,
    #[serde(flatten)]
    pub flavor: Flavor,
}

fn fold_tail(rep: &CascadeRep, k: i64) -> TwoTermRep {
    let a = rep.terms[0].0;
    if rep.terms.len() == 1 {
        // single term: b sits below k-1 so its term vanishes
        return TwoTermRep { a, b: k - 2, m: 0, flavor: rep.flavor };
    }
    let tail: BigUint = (2..rep.terms.len()).map(|i| rep.term_value(i)).sum();
    TwoTermRep {
        a,
        b: rep.terms[1].0,
        m: tail.to_u64().expect("tail is below q"),
        flavor: rep.flavor,
    }
}

pub fn two_term_rep(q: u64, k: i64) -> Result<TwoTermRep> {
    if k < 2 {
        return invalid("two-term representation needs k >= 2");
    }
    Ok(fold_tail(&kk_rep(q, k)?, k))
}

pub fn dim_two_term_rep(q: u64, k: i64, r: i64) -> Result<TwoTermRep> {
    if k < 2 {
        return invalid("two-term representation needs k >= 2");
    }
    Ok(fold_tail(&color_rep(q, k, r)?, k))
}

impl TwoTermRep {
    pub fn evaluate(&self, k: i64) -> BigUint {
        let (x, y) = match self.flavor {
            Flavor::Plain => (binom(self.a, k), binom(self.b, k - 1)),
            Flavor::Colored { r } => (turan_count(self.a, k, r), turan_count(self.b, k - 1, r - 1)),
        };
        x + y + BigUint::from(self.m)
    }
}

/// `m = binom(n_k, k) + binom(n_{k-1}, k-1) + sum binom(a_j, j)` where the
/// `a` terms are a plain cascade of the remainder starting at bottom `k-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRep {
    pub k: i64,
    pub n_k: i64,
    /// Absent when `m` is a single binomial.
    pub n_k1: Option<i64>,
    pub a_terms: Vec<(i64, i64)>,
}

pub fn flag_rep(m: u64, k: i64) -> Result<FlagRep> {
    if k < 3 {
        return invalid("flag representation needs k >= 3");
    }
    let rep = kk_rep(m, k)?;
    let n_k = rep.terms[0].0;
    let n_k1 = rep.terms.get(1).map(|t| t.0);
    let mut rem = BigUint::from(m) - binom(n_k, k);
    if let Some(n) = n_k1 {
        rem -= binom(n, k - 1);
    }
    let a_terms = match rem.to_u64().expect("remainder below m") {
        0 => Vec::new(),
        r => kk_rep(r, k - 1)?.terms,
    };
    Ok(FlagRep { k, n_k, n_k1, a_terms })
}

impl FlagRep {
    pub fn a_sum(&self) -> BigUint {
        self.a_terms.iter().map(|&(n, b)| binom(n, b)).sum()
    }

    pub fn evaluate(&self) -> BigUint {
        let lead = binom(self.n_k, self.k) + self.n_k1.map_or(BigUint::zero(), |n| binom(n, self.k - 1));
        lead + self.a_sum()
    }
}
