use num_traits::{One, Zero};
use proptest::prelude::*;

use simbet::analysis::{self, best_average, candidate_ks, classify, Justification, Status};
use simbet::families::{
    family_weight, is_intersecting, matching_number, max_intersecting_family, threshold_family,
    threshold_family_weights, SubsetFamily,
};
use simbet::model::{Params, Stakes};
use simbet::rational::{self, ratio, Rational};
use simbet::strategy::{average_play, bold_play};
use simbet::tail::{tail_dp, tail_enum};

fn stakes_strategy(max_len: usize) -> impl Strategy<Value = Stakes> {
    prop::collection::vec(1i64..=20, 1..=max_len)
        .prop_map(|w| Stakes::normalized(w.into_iter().map(|x| ratio(x, 1)).collect()).unwrap())
}

fn unit_strategy() -> impl Strategy<Value = Rational> {
    (1i64..=40).prop_flat_map(|d| (0..=d).prop_map(move |n| ratio(n, d)))
}

fn params_strategy() -> impl Strategy<Value = Params> {
    (unit_strategy(), unit_strategy()).prop_map(|(p, t)| Params::new(p, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_and_convolution_agree(stakes in stakes_strategy(12), params in params_strategy()) {
        prop_assert_eq!(tail_enum(&stakes, &params).unwrap().value, tail_dp(&stakes, &params).unwrap().value);
    }

    #[test]
    fn tail_is_the_weight_of_the_threshold_family(stakes in stakes_strategy(10), params in params_strategy()) {
        let family = threshold_family(&stakes, &params.t).unwrap();
        prop_assert_eq!(family_weight(&family, &params.p), tail_enum(&stakes, &params).unwrap().value);
    }

    #[test]
    fn monotone_in_p_and_t(stakes in stakes_strategy(8), a in unit_strategy(), b in unit_strategy(), t in unit_strategy()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let at = |p: &Rational, t: &Rational| tail_dp(&stakes, &Params::new(p.clone(), t.clone()).unwrap()).unwrap().value;
        prop_assert!(at(&lo, &t) <= at(&hi, &t));
        prop_assert!(at(&t, &hi) <= at(&t, &lo));
    }

    #[test]
    fn permuting_weights_keeps_the_family_weight(w in prop::collection::vec(0i64..=9, 1..=7), t in unit_strategy(), p in unit_strategy(), rot in 0usize..7) {
        let weights: Vec<Rational> = w.iter().map(|x| ratio(*x, 10)).collect();
        let mut rotated = weights.clone();
        let len = rotated.len();
        rotated.rotate_left(rot % len);
        let a = threshold_family_weights(&weights, &t).unwrap();
        let b = threshold_family_weights(&rotated, &t).unwrap();
        prop_assert_eq!(family_weight(&a, &p), family_weight(&b, &p));
        prop_assert_eq!(a.len(), b.len());
    }

    #[test]
    fn bold_play_is_the_floor_average(params in params_strategy()) {
        prop_assume!(!params.t.is_zero());
        let bold = bold_play(&params).unwrap();
        let k = params.bold_bets().unwrap();
        prop_assert_eq!(bold.value, average_play(k, &params).unwrap().value);
    }

    #[test]
    fn disjoint_members_of_a_threshold_family(stakes in stakes_strategy(8), t in unit_strategy()) {
        prop_assume!(!t.is_zero());
        let family = threshold_family(&stakes, &t).unwrap();
        // each disjoint member carries weight ≥ t out of 1
        let bound = rational::floor_u64(&t.recip()).unwrap() as usize;
        prop_assert!(matching_number(&family) <= bound);
        if t > ratio(1, 2) {
            prop_assert!(is_intersecting(&family) || family.is_empty());
        }
    }

    #[test]
    fn serde_round_trips(stakes in stakes_strategy(6), params in params_strategy()) {
        let s: Stakes = serde_json::from_str(&serde_json::to_string(&stakes).unwrap()).unwrap();
        prop_assert_eq!(s, stakes);
        let p: Params = serde_json::from_str(&serde_json::to_string(&params).unwrap()).unwrap();
        prop_assert_eq!(p, params);
    }

    #[test]
    fn candidate_reduction_loses_nothing(p in unit_strategy(), t in unit_strategy(), n_max in 1usize..=6) {
        prop_assume!(!t.is_zero() && p <= t);
        let params = Params::new(p, t.clone()).unwrap();
        let best = best_average(&params, n_max).unwrap();
        let k_all = n_max * rational::ceil_u64(&t.recip()).unwrap() as usize;
        let brute = (1..=k_all).map(|k| average_play(k, &params).unwrap().value).max().unwrap();
        let candidates = candidate_ks(&t, n_max).unwrap();
        prop_assert!(candidates.iter().all(|&k| k <= k_all));
        prop_assert_eq!(best.best.value, brute);
    }
}

/// Heaviest intersecting family by listing every family of non-empty sets.
fn naive_intersecting_max(n: usize, p: &Rational) -> Rational {
    let sets: Vec<u32> = (1..1u32 << n).collect();
    let q = Rational::one() - p;
    let weight = |s: u32| rational::pow(p, s.count_ones() as usize) * rational::pow(&q, n - s.count_ones() as usize);
    let mut best = Rational::zero();
    for choice in 0u64..1 << sets.len() {
        let chosen: Vec<u32> = sets.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, s)| *s).collect();
        if chosen.iter().all(|a| chosen.iter().all(|b| a & b != 0)) {
            let w: Rational = chosen.iter().map(|s| weight(*s)).sum();
            best = best.max(w);
        }
    }
    best
}

#[test]
fn intersecting_maximum_matches_naive_enumeration() {
    for n in 1..=4 {
        for p in ["1/10", "1/3", "1/2", "3/5", "4/5"] {
            let p = rational::parse_rational(p).unwrap();
            let (lib, winners) = max_intersecting_family(n, &p).unwrap();
            assert_eq!(lib, naive_intersecting_max(n, &p), "n = {n}, p = {p}");
            assert!(winners.iter().all(|f| is_intersecting(f) && family_weight(f, &p) == lib));
        }
    }
}

/// Re-test the hypothesis of a justification at another point.
fn hypothesis_holds(j: Justification, p: &Rational, t: &Rational) -> bool {
    let half = ratio(1, 2);
    match j {
        Justification::HalfThreshold => *p <= half && *t == half,
        Justification::HighThreshold => *p <= half && *t > half,
        Justification::FavorableOdds { k } => {
            let k = k as i64;
            ratio(k, k + 1) < *p && *p <= ratio(k + 1, k + 2) && ratio(k + 1, k + 2) < *t
        }
        Justification::UnfavorableOdds { k } => {
            let k = k as i64;
            *p < ratio(1, 2 * k + 1) && ratio(1, k + 1) < *t
        }
        _ => false,
    }
}

#[test]
fn classification_is_stable_within_each_hypothesis() {
    let res = 60i64;
    let step = ratio(1, res);
    for i in 0..=res {
        for j in i..=res {
            let (p, t) = (ratio(i, res), ratio(j, res));
            let verdict = classify(&Params::new(p.clone(), t.clone()).unwrap());
            let Some(why) = verdict.justification else { continue };
            if verdict.status != Status::BoldOptimal || !hypothesis_holds(why, &p, &t) {
                continue;
            }
            for (dp, dt) in [(1, 0), (0, 1), (1, 1), (3, 2)] {
                let p2 = &p - &step * Rational::from_integer(dp.into());
                let t2 = &t + &step * Rational::from_integer(dt.into());
                if p2 < Rational::zero() || t2 > Rational::one() || !hypothesis_holds(why, &p2, &t2) {
                    continue;
                }
                let moved = classify(&Params::new(p2.clone(), t2.clone()).unwrap());
                assert_eq!(moved.status, Status::BoldOptimal, "({p}, {t}) → ({p2}, {t2}) under {why}");
            }
        }
    }
}

#[test]
fn witnesses_beat_bold_play() {
    for row in analysis::region_grid(90).unwrap() {
        if row.verdict.status == Status::BoldNotOptimal {
            let params = Params::new(row.p.clone(), row.t.clone()).unwrap();
            let bold = bold_play(&params).unwrap().value;
            let witness = row.verdict.witness.unwrap();
            assert_eq!(bold, row.p);
            assert!(witness.value > bold, "({}, {})", row.p, row.t);
            assert_eq!(tail_dp(&witness.kind.stakes(), &params).unwrap().value, witness.value);
        }
    }
}

#[test]
fn stars_and_majorities_are_the_extreme_families() {
    for n in 1..=5 {
        let star = SubsetFamily::star(n).unwrap();
        assert!(is_intersecting(&star));
        assert_eq!(matching_number(&star), 1);
        if n % 2 == 1 {
            assert!(is_intersecting(&SubsetFamily::majority(n).unwrap()));
        }
    }
}
