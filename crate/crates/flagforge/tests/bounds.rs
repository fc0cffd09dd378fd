use flagforge::bounds::*;
use flagforge::combinatorics::{binom, multipartite_count, turan_count};
use flagforge::real::{Factor, Surd};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Direct recursion from the definition, for cross-checking.
fn c_cost_oracle(m: u64, k: i64, p: i64) -> u64 {
    if m == 0 {
        return 0;
    }
    let mut g = k - 1;
    while binom(g + 1, k - 1) <= big(m) {
        g += 1;
    }
    binom(g, p - 1).to_u64().unwrap() + c_cost_oracle(m - binom(g, k - 1).to_u64().unwrap(), k, p)
}

#[test]
fn shadow_examples() {
    assert_eq!(kk_shadow(9, 3, 2).unwrap(), big(10));
    assert_eq!(kk_shadow(7, 6, 4).unwrap(), big(35));
    for n in 5..20 {
        let m = binom(n, 4).to_u64().unwrap();
        assert_eq!(kk_shadow(m, 4, 2).unwrap(), binom(n, 2));
    }
    assert!(kk_shadow(9, 3, 3).is_err());
}

#[test]
fn chain_examples() {
    assert_eq!(kk_chain(9, 3, 1, Direction::Up).unwrap(), big(3));
    assert_eq!(kk_chain(9, 3, 2, Direction::Down).unwrap(), big(5));
    let m = binom(12, 5).to_u64().unwrap();
    for i in 1..5 {
        assert_eq!(kk_chain(m, 5, i, Direction::Down).unwrap(), binom(12, 5 - i));
    }
    assert_eq!(kk_chain(binom(9, 3).to_u64().unwrap(), 3, 2, Direction::Up).unwrap(), binom(9, 5));
    assert!(kk_chain(9, 3, 3, Direction::Down).is_err());
}

#[test]
fn ffk_examples() {
    assert_eq!(ffk_bound(5832, 3, 2, 3).unwrap(), big(972));
    assert_eq!(ffk_bound(2000, 3, 2, 3).unwrap(), big(479));
    for n in 3..40 {
        let m = turan_count(n, 3, 4).to_u64().unwrap();
        assert_eq!(ffk_bound(m, 3, 2, 4).unwrap(), turan_count(n, 2, 4));
    }
}

#[test]
fn ffk_at_least_shadow() {
    for m in 1..3000u64 {
        for (k, p) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)] {
            let kk = kk_shadow(m, k, p).unwrap();
            for r in k..=k + 3 {
                assert!(ffk_bound(m, k, p, r).unwrap() >= kk, "m={m} k={k} p={p} r={r}");
            }
        }
    }
}

#[test]
fn cost_examples() {
    assert_eq!(c_cost(0, 3, 2).unwrap(), big(0));
    assert_eq!(c_cost(7, 3, 2).unwrap(), big(6));
    assert_eq!(d_cost(0, 3, 2, 3).unwrap(), big(0));
    assert_eq!(d_cost(7, 3, 2, 3).unwrap(), big(7));
    for k in 2..6 {
        for p in 1..k {
            for m in 0..400 {
                assert_eq!(c_cost(m, k, p).unwrap(), big(c_cost_oracle(m, k, p)));
            }
        }
    }
}

#[test]
fn colored_cost_equals_plain_below_threshold() {
    for r in 3..8i64 {
        for k in 2..=r {
            for p in 1..k {
                let limit = binom(r - 1, k - 1).to_u64().unwrap();
                for m in 0..limit {
                    assert_eq!(d_cost(m, k, p, r).unwrap(), c_cost(m, k, p).unwrap(), "m={m} k={k} p={p} r={r}");
                }
            }
        }
    }
}

#[test]
fn colored_ceiling_holds() {
    for r in 3..=6i64 {
        for k in 3..=r {
            for p in 2..k {
                let s = d_cost_series(3000, k, p, r).unwrap();
                for (m, &c) in s.iter().enumerate() {
                    assert!(d_cost_upper(m as u64, k, p, r).unwrap().ge_integer(&big(c)), "m={m} k={k} p={p} r={r}");
                }
            }
        }
    }
    assert_eq!(c_cost_upper(0, 4, 2).unwrap(), Surd::zero());
}

/// The plain ceiling is violated at small m: c(5) = 3 + 2 + 2 while the
/// ceiling is 2 sqrt(10).
#[test]
fn plain_ceiling_counterexample() {
    assert_eq!(c_cost(5, 3, 2).unwrap(), big(7));
    let ceiling = c_cost_upper(5, 3, 2).unwrap();
    assert!(!ceiling.ge_integer(&big(7)));
    assert_eq!(ceiling.enclosure(4).0, "6.3245");
    // doubling the ceiling covers every case in range
    for k in 3..=6 {
        for p in 2..k {
            let s = c_cost_series(20_000, k, p).unwrap();
            for (m, &c) in s.iter().enumerate() {
                let u = c_cost_upper(m as u64, k, p).unwrap();
                let doubled = Surd::product(&[Factor::int(2u32, 1, 1), Factor::ratio(u.num, u.den, 1, u.index)]);
                assert!(doubled.ge_integer(&big(c)), "m={m} k={k} p={p}");
            }
        }
    }
}

#[test]
fn limit_constants() {
    let (lo, hi) = limit_constant_two(3, 2).unwrap().enclosure(8);
    assert_eq!((lo.as_str(), hi.as_str()), ("1.41421356", "1.41421357"));
    let three_over_root_three = limit_constant_dim(4, 3, 2).unwrap();
    assert!((three_over_root_three.to_f64() - 3f64.sqrt()).abs() < 1e-12);
    for (k, p) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
        let two = limit_constant_two(k, p).unwrap().to_f64();
        let dim = limit_constant_dim(1000, k, p).unwrap().to_f64();
        assert!((dim - two).abs() / two < 0.01, "k={k} p={p}: {dim} vs {two}");
    }
}

fn ratio(m: u64, k: i64, p: i64) -> f64 {
    c_cost(m, k, p).unwrap().to_f64().unwrap() / (m as f64).powf((p - 1) as f64 / (k - 1) as f64)
}

#[test]
fn converges_along_exact_binomials() {
    for (k, p) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
        let lim = limit_constant_two(k, p).unwrap().to_f64();
        let n = if k == 3 { 100_000 } else { 3000 };
        let m = binom(n, k - 1).to_u64().unwrap();
        assert!((ratio(m, k, p) - lim).abs() / lim < 0.05, "k={k} p={p}");
    }
}

/// At m = 10^6 only (3, 2) is within 5% of its limit; the tail terms
/// decay like a small power of m.
#[test]
fn generic_m_converges_slowly() {
    let m = 1_000_000;
    let gap = |k, p| (ratio(m, k, p) - limit_constant_two(k, p).unwrap().to_f64()) / limit_constant_two(k, p).unwrap().to_f64();
    assert!(gap(3, 2) < 0.05);
    assert!(gap(4, 2) > 0.05 && gap(5, 3) > 0.05);
}

#[test]
fn flag_bound_examples() {
    for n in 4..30 {
        let m = binom(n, 3).to_u64().unwrap();
        let fb = flag_bound_branches(m, 3, 2).unwrap();
        assert_eq!(fb.simplex, binom(n, 2));
        assert!(fb.value() <= fb.simplex);
    }
    assert!(flag_lower_bound(15, 2, 1).is_err());
    let rep = flag_lower_bound(2000, 3, 2).unwrap();
    assert_eq!(rep.kind, BoundKind::FlagTwoBranch);
    assert!(rep.branch_taken.is_some());
    // the main example's complex has 484 edges with 2000 triangles
    match rep.value {
        BoundValue::Exact(v) => assert!(v <= big(484)),
        BoundValue::Real(_) => panic!("flag bound is an integer"),
    }
}

#[test]
fn flag_bound_min_of_branches() {
    for m in 1..2000u64 {
        for (k, p) in [(3, 2), (3, 1), (4, 2), (4, 3)] {
            let fb = flag_bound_branches(m, k, p).unwrap();
            let expect = match &fb.colored {
                Some(c) => c.min(&fb.simplex).clone(),
                None => fb.simplex.clone(),
            };
            assert_eq!(fb.value(), expect);
        }
    }
}

#[test]
fn equal_vertices_examples() {
    let b = equal_vertices_bound(3, 3, 2, 5832).unwrap();
    assert_eq!(b.cmp_integer(&big(972)), std::cmp::Ordering::Equal);
    for m in [1u64, 7, 100, 12345] {
        let b = equal_vertices_bound(4, 3, 3, m).unwrap();
        assert_eq!(b.cmp_integer(&big(m)), std::cmp::Ordering::Equal);
    }
}

proptest! {
    #[test]
    fn equal_vertices_holds_on_multipartite(parts in proptest::collection::vec(0u64..25, 3..6), k in 2i64..4, p in 1i64..3) {
        let d = parts.len() as i64;
        prop_assume!(p <= k && k <= d);
        let m = multipartite_count(&parts, k).to_u64().unwrap();
        let low = multipartite_count(&parts, p);
        prop_assert!(equal_vertices_bound(d, k, p, m).unwrap().cmp_integer(&low) != std::cmp::Ordering::Less);
    }

    #[test]
    fn series_agrees(m in 0u64..2000, k in 3i64..6, p in 1i64..3) {
        prop_assume!(p < k);
        prop_assert_eq!(big(c_cost_series(m, k, p).unwrap()[m as usize]), c_cost(m, k, p).unwrap());
        prop_assert_eq!(big(d_cost_series(m, k, p, k + 1).unwrap()[m as usize]), d_cost(m, k, p, k + 1).unwrap());
    }
}
