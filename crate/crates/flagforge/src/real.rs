//! Exact positive reals of the form `(num / den)^(1 / index)`.
//!
//! Every irrational bound in this crate is a product of rational powers of
//! rationals, so raising to the common exponent denominator makes all
//! comparisons against integers exact.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub num: BigUint,
    pub den: BigUint,
    pub index: u32,
}

/// A factor `base^(exp_num / exp_den)` with a rational base.
#[derive(Clone, Debug)]
pub struct Factor {
    pub num: BigUint,
    pub den: BigUint,
    pub exp_num: i64,
    pub exp_den: u32,
}

impl Factor {
    pub fn int(base: impl Into<BigUint>, exp_num: i64, exp_den: u32) -> Self {
        Factor { num: base.into(), den: BigUint::one(), exp_num, exp_den }
    }

    pub fn ratio(num: impl Into<BigUint>, den: impl Into<BigUint>, exp_num: i64, exp_den: u32) -> Self {
        Factor { num: num.into(), den: den.into(), exp_num, exp_den }
    }
}

impl Surd {
    pub fn zero() -> Self {
        Surd { num: BigUint::zero(), den: BigUint::one(), index: 1 }
    }

    pub fn integer(v: impl Into<BigUint>) -> Self {
        Surd { num: v.into(), den: BigUint::one(), index: 1 }
    }

    pub fn product(factors: &[Factor]) -> Self {
        let index = factors.iter().fold(1u32, |acc, f| acc.lcm(&f.exp_den));
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for f in factors {
            let e = f.exp_num * (index / f.exp_den) as i64;
            let (top, bottom) = if e >= 0 { (&f.num, &f.den) } else { (&f.den, &f.num) };
            let e = e.unsigned_abs() as u32;
            num *= top.pow(e);
            den *= bottom.pow(e);
        }
        let g = num.gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Surd { num, den, index }
    }

    /// Exact comparison of `c` against this value.
    pub fn cmp_integer(&self, c: &BigUint) -> Ordering {
        (c.pow(self.index) * &self.den).cmp(&self.num)
    }

    pub fn ge_integer(&self, c: &BigUint) -> bool {
        self.cmp_integer(c) != Ordering::Greater
    }

    /// `floor(value * 10^digits)`; the value lies in `[L, L+1) / 10^digits`.
    pub fn scaled_floor(&self, digits: u32) -> BigUint {
        let scale = BigUint::from(10u32).pow(digits * self.index);
        let inner = (&self.num * scale) / &self.den;
        let mut root = inner.nth_root(self.index);
        // nth_root is exact floor, but guard against any off-by-one
        while (&root + 1u32).pow(self.index) <= inner {
            root += 1u32;
        }
        root
    }

    /// Outward-rounded decimal enclosure with `digits` fractional digits.
    pub fn enclosure(&self, digits: u32) -> (String, String) {
        let lo = self.scaled_floor(digits);
        let exact = lo.pow(self.index) * &self.den == &self.num * BigUint::from(10u32).pow(digits * self.index);
        let hi = if exact { lo.clone() } else { &lo + 1u32 };
        (decimal(&lo, digits), decimal(&hi, digits))
    }

    pub fn to_f64(&self) -> f64 {
        let digits = 20;
        let lo = self.scaled_floor(digits);
        lo.to_f64().unwrap_or(f64::INFINITY) / 10f64.powi(digits as i32)
    }
}

fn decimal(v: &BigUint, digits: u32) -> String {
    let s = v.to_string();
    let d = digits as usize;
    if d == 0 {
        return s;
    }
    let padded = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (a, b) = padded.split_at(padded.len() - d);
    format!("{a}.{b}")
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, _) = self.enclosure(50);
        write!(f, "{lo}")
    }
}

/// JSON view: the exact form plus a 50-digit enclosure.
#[derive(Clone, Debug, Serialize)]
pub struct SurdView {
    pub radicand_num: String,
    pub radicand_den: String,
    pub index: u32,
    pub lower: String,
    pub upper: String,
}

impl From<&Surd> for SurdView {
    fn from(s: &Surd) -> Self {
        SurdView::with_digits(s, 50)
    }
}

impl SurdView {
    pub fn with_digits(s: &Surd, digits: u32) -> Self {
        let (lower, upper) = s.enclosure(digits);
        SurdView {
            radicand_num: s.num.to_string(),
            radicand_den: s.den.to_string(),
            index: s.index,
            lower,
            upper,
        }
    }
}
