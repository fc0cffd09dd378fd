use flagforge::combinatorics::{binom, binom_floor, multipartite_count, turan_count, turan_floor, turan_parts};
use flagforge::complex::{build_multipartite, clique_f_vector};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Pascal's triangle, built independently of the multiplicative formula.
fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut t: Vec<Vec<BigUint>> = vec![vec![big(1)]];
    for n in 1..rows {
        let prev = &t[n - 1];
        let mut row = vec![big(1)];
        for k in 1..n {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(big(1));
        t.push(row);
    }
    t
}

#[test]
fn binom_examples() {
    assert_eq!(binom(37, 2), big(666));
    assert_eq!(binom(5, 0), big(1));
    assert_eq!(binom(1, -1), big(0));
    assert_eq!(binom(3, 5), big(0));
    assert_eq!(binom(-2, 1), big(0));
}

#[test]
fn binom_matches_pascal() {
    let t = pascal(90);
    for n in 0..90i64 {
        for k in 0..=n {
            assert_eq!(binom(n, k), t[n as usize][k as usize], "({n},{k})");
        }
    }
}

#[test]
fn binom_large_is_exact() {
    // 100 choose 50
    assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
}

#[test]
fn turan_parts_examples() {
    assert_eq!(turan_parts(37, 3).sizes, vec![13, 12, 12]);
    assert_eq!(turan_parts(54, 3).sizes, vec![18, 18, 18]);
    assert_eq!(turan_parts(5, 7).sizes, vec![1, 1, 1, 1, 1, 0, 0]);
    assert_eq!(turan_parts(0, 2).total(), 0);
}

#[test]
fn turan_examples() {
    assert_eq!(turan_count(37, 3, 3), big(1872));
    assert_eq!(turan_count(22, 2, 2), big(121));
    assert_eq!(turan_count(45, 2, 2), big(506));
    assert_eq!(turan_count(10, 4, 3), big(0));
    assert_eq!(turan_count(1, -1, 1), big(0));
    assert_eq!(turan_count(1, 0, 1), big(1));
    assert_eq!(turan_count(0, 0, 3), big(1));
    assert_eq!(turan_count(-1, 0, 3), big(0));
}

#[test]
fn multipartite_examples() {
    assert_eq!(multipartite_count(&[27, 27, 8], 3), big(5832));
    assert_eq!(multipartite_count(&[27, 27, 8], 2), big(1161));
    assert_eq!(multipartite_count(&[27, 27, 8], 1), big(62));
    assert_eq!(multipartite_count(&[9], 1), big(9));
    assert_eq!(multipartite_count(&[4, 0, 3], 3), big(0));
    assert_eq!(multipartite_count(&[], 0), big(1));
}

#[test]
fn turan_matches_brute_force_small() {
    for r in 1..=4u64 {
        for n in 0..=16u64 {
            let g = build_multipartite(&turan_parts(n, r).sizes);
            let f = clique_f_vector(&g, 5);
            for k in 0..=5i64 {
                let brute = f.0.get(k as usize).cloned().unwrap_or_default();
                assert_eq!(turan_count(n as i64, k, r as i64), brute, "n={n} k={k} r={r}");
            }
        }
    }
}

#[test]
fn turan_sandwich_uses_degree_k() {
    for r in 1..=6i64 {
        for k in 1..=r {
            for n in 0..=80i64 {
                let p = (n / r) as u64;
                let t = turan_count(n, k, r);
                let c = binom(r, k);
                assert!(&c * big(p).pow(k as u32) <= t, "lower n={n} k={k} r={r}");
                assert!(t <= &c * big(p + 1).pow(k as u32), "upper n={n} k={k} r={r}");
            }
        }
    }
}

#[test]
fn floors_are_greatest() {
    for m in 1..500u64 {
        for k in 1..=4i64 {
            let n = binom_floor(&big(m), k);
            assert!(binom(n, k) <= big(m) && binom(n + 1, k) > big(m));
            for r in k..=5 {
                let n = turan_floor(&big(m), k, r);
                assert!(turan_count(n, k, r) <= big(m) && turan_count(n + 1, k, r) > big(m));
            }
        }
    }
}

proptest! {
    #[test]
    fn turan_recurrence(n in 1i64..200, k in 1i64..8, r in 1i64..8) {
        // n = p r + q with 0 < q <= r
        let p = (n - 1) / r;
        prop_assert_eq!(turan_count(n, k, r), turan_count(n - 1, k, r) + turan_count(n - p - 1, k - 1, r - 1));
    }

    #[test]
    fn turan_is_multipartite(n in 0u64..300, k in 0i64..8, r in 1u64..8) {
        prop_assert_eq!(turan_count(n as i64, k, r as i64), multipartite_count(&turan_parts(n, r).sizes, k));
    }

    #[test]
    fn turan_monotone_in_n(n in 0i64..300, k in 0i64..8, r in 1i64..8) {
        prop_assert!(turan_count(n, k, r) <= turan_count(n + 1, k, r));
    }

    #[test]
    fn parts_balanced(n in 0u64..1000, r in 1u64..20) {
        let s = turan_parts(n, r).sizes;
        prop_assert_eq!(s.len() as u64, r);
        prop_assert_eq!(s.iter().sum::<u64>(), n);
        prop_assert!(s.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s[0] - s[s.len() - 1] <= 1);
    }

    #[test]
    fn multipartite_symmetric(parts in proptest::collection::vec(0u64..30, 0..6), k in 0i64..7) {
        let mut rev = parts.clone();
        rev.reverse();
        prop_assert_eq!(multipartite_count(&parts, k), multipartite_count(&rev, k));
    }
}
