mod common;

use common::{naive_count, naive_legendre, odd_primes_up_to};
use howe_core::{
    count_points, floor_two_sqrt, hasse_poly_eval, zeta_lift, CurveCounter, HyperellipticModel,
    LegendreCurve, PointCounter, PrimeModulus,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn model_strategy(max_p: u64) -> impl Strategy<Value = HyperellipticModel> {
    prop::sample::select(odd_primes_up_to(max_p)).prop_flat_map(|p| {
        let degrees = 3..=6usize.min(p as usize);
        (Just(p), 1..p, degrees).prop_flat_map(move |(p, alpha, d)| {
            subsequence((0..p).collect::<Vec<_>>(), d)
                .prop_shuffle()
                .prop_map(move |roots| {
                    let roots: Vec<i64> = roots.into_iter().map(|r| r as i64).collect();
                    HyperellipticModel::from_ints(p, alpha as i64, &roots).unwrap()
                })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn counter_matches_naive_over_fp(model in model_strategy(43)) {
        prop_assert_eq!(count_points(&model, 1).unwrap().count(), naive_count(&model, 1));
    }

    #[test]
    fn counter_matches_naive_over_fp2(model in model_strategy(11)) {
        prop_assert_eq!(count_points(&model, 2).unwrap().count(), naive_count(&model, 2));
    }

    #[test]
    fn weil_bound_holds(model in model_strategy(31), j in 1u32..=2) {
        let c = count_points(&model, j).unwrap();
        prop_assert!(c.within_weil_bound(model.genus()));
    }
}

#[test]
fn counter_matches_naive_over_fp3() {
    for p in [3, 5] {
        for alpha in 1..p as i64 {
            let model = HyperellipticModel::from_ints(p, alpha, &[0, 1, 2]).unwrap();
            assert_eq!(
                count_points(&model, 3).unwrap().count(),
                naive_count(&model, 3)
            );
        }
    }
    let model = HyperellipticModel::from_ints(7, 3, &[0, 1, 4, 5]).unwrap();
    assert_eq!(
        count_points(&model, 3).unwrap().count(),
        naive_count(&model, 3)
    );
}

#[test]
fn twists_pair_up() {
    // a curve and its quadratic twist have opposite traces
    for p in odd_primes_up_to(41) {
        let m = PrimeModulus::new(p).unwrap();
        let non_square = (2..p).find(|&v| m.elem(v).legendre() == -1).unwrap() as i64;
        let counter = PointCounter::new(m, 1).unwrap();
        for lambda in 2..p as i64 {
            let e = LegendreCurve::from_ints(p, 1, lambda).unwrap();
            let t = LegendreCurve::from_ints(p, non_square, lambda).unwrap();
            let sum = counter.count_legendre(&e).count() + counter.count_legendre(&t).count();
            assert_eq!(sum, 2 * p + 2, "p = {p}, lambda = {lambda}");
        }
    }
}

#[test]
fn zeta_lift_matches_direct_counts() {
    for p in [3u64, 5, 7, 11, 13] {
        let m = PrimeModulus::new(p).unwrap();
        let counters: Vec<_> = (1..=3).map(|j| PointCounter::new(m, j).unwrap()).collect();
        for theta in 1..p as i64 {
            for lambda in 2..p as i64 {
                let e = LegendreCurve::from_ints(p, theta, lambda).unwrap();
                let n1 = counters[0].count_legendre(&e).count();
                for j in 2..=3u32 {
                    let direct = counters[j as usize - 1].count_legendre(&e).count();
                    assert_eq!(
                        zeta_lift(n1, p, j).unwrap(),
                        direct,
                        "p={p} theta={theta} lambda={lambda} j={j}"
                    );
                }
            }
        }
    }
}

#[test]
fn legendre_counts_match_naive_oracle() {
    for p in [5u64, 7] {
        for lambda in 2..p as i64 {
            let e = LegendreCurve::from_ints(p, 1, lambda).unwrap();
            for j in 1..=2 {
                assert_eq!(
                    count_points(&(&e).into(), j).unwrap().count(),
                    naive_legendre(&e, j)
                );
            }
        }
    }
}

#[test]
fn supersingular_exactly_at_hasse_roots() {
    // H_p(lambda) = 0 iff the trace over F_p is 0 (p > 3)
    for p in odd_primes_up_to(61).into_iter().filter(|&p| p > 3) {
        let m = PrimeModulus::new(p).unwrap();
        let counter = PointCounter::new(m, 1).unwrap();
        for lambda in 2..p as i64 {
            let e = LegendreCurve::from_ints(p, 1, lambda).unwrap();
            let trace = p as i64 + 1 - counter.count_legendre(&e).count() as i64;
            assert_eq!(
                hasse_poly_eval(m, e.lambda()).is_zero(),
                trace == 0,
                "p={p} lambda={lambda}"
            );
            assert!(trace.unsigned_abs() <= floor_two_sqrt(p));
        }
    }
}
