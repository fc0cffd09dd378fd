use flagforge::combinatorics::{binom, turan_count};
use flagforge::decompose::{color_rep, dim_two_term_rep, flag_rep, kk_rep, two_term_rep, Flavor};
use flagforge::verify::CascadeOracle;
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn plain_examples() {
    assert_eq!(kk_rep(9, 3).unwrap().terms, vec![(4, 3), (3, 2), (2, 1)]);
    assert_eq!(kk_rep(7, 6).unwrap().terms, vec![(7, 6)]);
    assert_eq!(kk_rep(1, 1).unwrap().terms, vec![(1, 1)]);
    assert!(kk_rep(0, 3).is_err());
    assert!(kk_rep(5, 0).is_err());
}

#[test]
fn colored_examples() {
    assert_eq!(color_rep(2000, 3, 3).unwrap().terms, vec![(37, 3), (22, 2), (7, 1)]);
    assert_eq!(color_rep(1872, 3, 3).unwrap().terms, vec![(37, 3)]);
    for k in 1..5 {
        for r in k..7 {
            assert_eq!(color_rep(1, k, r).unwrap().terms, vec![(k, k)]);
        }
    }
    assert!(color_rep(10, 4, 3).is_err());
}

#[test]
fn colored_gap_condition() {
    for m in 1..3000 {
        let rep = color_rep(m, 3, 3).unwrap();
        for (i, w) in rep.terms.windows(2).enumerate() {
            let rr = 3 - i as i64;
            assert!(w[0].0 - w[0].0 / rr > w[1].0, "m={m}: {:?}", rep.terms);
        }
        let last = rep.terms.last().unwrap();
        assert!(last.0 >= last.1 && last.1 > 0);
    }
}

#[test]
fn two_term_examples() {
    let t = two_term_rep(9, 3).unwrap();
    assert_eq!((t.a, t.b, t.m), (4, 3, 2));
    let t = two_term_rep(7, 6).unwrap();
    assert_eq!((t.a, t.b, t.m), (7, 4, 0));
    for n in 5..30 {
        let t = two_term_rep(binom(n, 5).try_into().unwrap(), 5).unwrap();
        assert_eq!((t.a, t.b, t.m), (n, 3, 0));
    }
}

#[test]
fn two_term_invariants() {
    for k in 2..6i64 {
        for q in 1..1500u64 {
            let t = two_term_rep(q, k).unwrap();
            assert_eq!(t.evaluate(k), big(q));
            assert!(t.a > t.b);
            assert!(binom(t.b, k - 2) > big(t.m) || (t.m == 0 && binom(t.b, k - 2) == big(0)));
            let tops = kk_rep(q, k).unwrap().tops();
            assert_eq!(t.a, tops[0]);
            if tops.len() > 1 {
                assert_eq!(t.b, tops[1]);
            }
        }
    }
}

#[test]
fn colored_two_term_invariants() {
    for (k, r) in [(2, 2), (3, 3), (3, 4), (4, 5)] {
        for q in 1..1500u64 {
            let t = dim_two_term_rep(q, k, r).unwrap();
            assert_eq!(t.flavor, Flavor::Colored { r });
            assert_eq!(t.evaluate(k), big(q));
            assert!(t.a - t.a / r > t.b);
            let bb = t.b - t.b / (r - 1);
            let cap = turan_count(bb, k - 2, r - 2);
            assert!(cap > big(t.m) || t.m == 0, "q={q} k={k} r={r}: {t:?}");
        }
    }
}

#[test]
fn flag_rep_examples() {
    let m = binom(10, 4) + binom(8, 3) + big(5);
    let m: u64 = m.try_into().unwrap();
    let rep = flag_rep(m, 4).unwrap();
    assert_eq!(rep.n_k, 10);
    assert_eq!(rep.n_k1, Some(8));
    assert_eq!(rep.a_terms, kk_rep(5, 3).unwrap().terms);
    assert_eq!(rep.evaluate(), big(m));

    let rep = flag_rep(20, 3).unwrap();
    assert_eq!((rep.n_k, rep.n_k1), (6, None));
    assert!(rep.a_terms.is_empty());
    assert!(flag_rep(5, 2).is_err());
}

#[test]
fn flag_rep_round_trip_and_chain() {
    for k in 3..=7i64 {
        for m in 1..=10_000u64 {
            let rep = flag_rep(m, k).unwrap();
            assert_eq!(rep.evaluate(), big(m), "m={m} k={k}");
            let tops = kk_rep(m, k).unwrap().tops();
            assert_eq!(rep.n_k, tops[0]);
            assert_eq!(rep.n_k1, tops.get(1).copied());
            assert!(rep.a_terms.windows(2).all(|w| w[0].0 > w[1].0));
            if let Some(n1) = rep.n_k1 {
                assert!(rep.n_k > n1);
                assert!(rep.a_sum() < binom(n1, k - 2) || rep.a_terms.is_empty());
            }
        }
    }
}

#[test]
fn greedy_is_the_only_cascade() {
    let oracle = CascadeOracle::new(400, 4, 5);
    for k in 1..=4 {
        for m in 1..=400 {
            assert_eq!(oracle.plain(m, k), vec![kk_rep(m, k).unwrap().terms]);
            for r in k..=5 {
                assert_eq!(oracle.colored(m, k, r), vec![color_rep(m, k, r).unwrap().terms]);
            }
        }
    }
}

#[test]
fn json_shape() {
    let v = serde_json::to_value(kk_rep(9, 3).unwrap()).unwrap();
    assert_eq!(v["terms"], serde_json::json!([[4, 3], [3, 2], [2, 1]]));
    assert_eq!(v["flavor"], "plain");
    let v = serde_json::to_value(color_rep(2000, 3, 3).unwrap()).unwrap();
    assert_eq!(v["flavor"], "colored");
    assert_eq!(v["r"], 3);
}

proptest! {
    #[test]
    fn plain_round_trip(m in 1u64..1_000_000, k in 1i64..9) {
        let rep = kk_rep(m, k).unwrap();
        prop_assert_eq!(rep.evaluate(), big(m));
        prop_assert!(rep.terms.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 == w[1].1 + 1));
        let (n, b) = rep.terms[0];
        prop_assert!(binom(n, b) <= big(m) && big(m) < binom(n + 1, b));
        let last = *rep.terms.last().unwrap();
        prop_assert!(last.0 >= last.1 && last.1 > 0);
    }

    #[test]
    fn colored_round_trip(m in 1u64..200_000, k in 1i64..6, extra in 0i64..4) {
        let r = k + extra;
        let rep = color_rep(m, k, r).unwrap();
        prop_assert_eq!(rep.evaluate(), big(m));
    }
}
