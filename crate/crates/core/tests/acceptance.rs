//! Acceptance suite: one line per criterion, `[PASS]` or `[FAIL]`.
//!
//! Runs as a plain binary (`harness = false`) so the lines always appear in
//! the test log. Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simbet::analysis::{self, Status};
use simbet::families::{
    family_weight, fishburn_max, max_intersecting_family, scan_cross_intersecting, scan_interval_union,
    verify_measure_intersection, SubsetFamily,
};
use simbet::model::{Params, Stakes};
use simbet::optimizer::{csoka_scan, optimize_exhaustive, EXHAUSTIVE_CAP};
use simbet::rational::{self, parse_rational, ratio, Rational};
use simbet::strategy::{average_play, bold_play};
use simbet::tail::{tail_dp, tail_enum, tail_mc};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// `C(n, k)` by the multiplicative formula, separate from the library's.
fn choose(n: usize, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// `P(Bin(n, p) ≥ m)` summed term by term.
fn binomial_tail(n: usize, m: usize, p: &Rational) -> Rational {
    let q = Rational::one() - p;
    (m..=n)
        .map(|j| Rational::from_integer(choose(n, j)) * rational::pow(p, j) * rational::pow(&q, n - j))
        .sum()
}

fn ac1() -> Check {
    let params = Params::parse("1/2", "1/2").unwrap();
    let report = optimize_exhaustive(&params, 5).map_err(|e| e.to_string())?;
    ensure(report.best.value == ratio(3, 4), format!("maximum {} ≠ 3/4", report.best.value))?;
    ensure(report.all_maximizers.contains(&Stakes::average(2)), "(1/2,1/2) not among maximizers")?;
    Ok(format!("max over ≤5 stakes = {} with {} maximizer(s)", report.best.value, report.all_maximizers.len()))
}

fn ac2() -> Check {
    let params = Params::parse("2/3", "2/3").unwrap();
    let report = optimize_exhaustive(&params, 4).map_err(|e| e.to_string())?;
    let bold = bold_play(&params).unwrap().value;
    ensure(report.best.value == ratio(20, 27), format!("maximum {} ≠ 20/27", report.best.value))?;
    ensure(report.all_maximizers.contains(&Stakes::average(3)), "(1/3,1/3,1/3) not among maximizers")?;
    ensure(report.best.value > bold && bold == ratio(2, 3), "does not beat bold play 2/3")?;
    Ok(format!("max = {} > bold {}", report.best.value, bold))
}

fn ac3() -> Check {
    let params = Params::parse("11/20", "3/5").unwrap();
    let five = average_play(5, &params).unwrap().value;
    let bold = bold_play(&params).unwrap().value;
    let by_enum = tail_enum(&Stakes::average(5), &params).unwrap().value;
    let by_hand = binomial_tail(5, 3, &ratio(11, 20));
    ensure(bold == ratio(11, 20), format!("bold play {bold} ≠ 11/20"))?;
    ensure(five > bold, format!("5-average {five} does not beat {bold}"))?;
    ensure(five == by_enum && five == by_hand, format!("{five} vs enum {by_enum} vs direct sum {by_hand}"))?;
    Ok(format!("5-average = {five} ≈ {} > 11/20", rational::to_decimal_string(&five, 6)))
}

/// Rectangle membership by scanning `k`; independent of the library helper.
fn in_union(p: &Rational, t: &Rational, closed: bool) -> bool {
    let le = |a: &Rational, b: &Rational| if closed { a <= b } else { a < b };
    (1..=400i64).any(|k| {
        let diag = ratio(k, k + 1);
        (le(p, &diag) && le(&diag, t)) || (le(p, &ratio(1, 2 * k + 1)) && le(&ratio(1, k + 1), t))
    })
}

fn ac4() -> Check {
    let rows = analysis::region_grid(100).map_err(|e| e.to_string())?;
    let mut settled = 0;
    let mut violations = Vec::new();
    for row in &rows {
        let bold = row.verdict.status == Status::BoldOptimal;
        settled += usize::from(bold);
        if bold && !in_union(&row.p, &row.t, true) {
            violations.push(format!("({}, {}) settled outside the rectangles", row.p, row.t));
        }
        if !bold && in_union(&row.p, &row.t, false) {
            violations.push(format!("({}, {}) inside a rectangle but {}", row.p, row.t, row.verdict.status));
        }
        if row.verdict.status == Status::BoldNotOptimal {
            let w = row.verdict.witness.as_ref().map(|w| w.value.clone()).unwrap_or_default();
            if w <= row.p {
                violations.push(format!("({}, {}) witness {} does not beat p", row.p, row.t, w));
            }
        }
        if row.p <= ratio(1, 2) && row.t > ratio(1, 2) && !bold {
            violations.push(format!("({}, {}) in p ≤ 1/2 < t but {}", row.p, row.t, row.verdict.status));
        }
    }
    ensure(violations.is_empty(), format!("{} violations, first: {}", violations.len(), violations.join("; ")))?;
    let unknown = analysis::classify(&Params::parse("0.45", "0.48").unwrap()).status;
    ensure(unknown == Status::Unknown, "(0.45, 0.48) should be unknown")?;
    Ok(format!("{} grid points, {settled} bold-optimal, 0 violations", rows.len()))
}

fn ac5() -> Check {
    let curve = analysis::bound_curve(1000).map_err(|e| e.to_string())?;
    ensure(curve.len() == 999, "expected 999 points")?;
    for b in &curve {
        let lower = rational::to_f64(&b.lower);
        ensure(lower <= b.upper_pz.min(b.upper_feige) + 1e-12, format!("p = {}: lower above an upper bound", b.p))?;
        ensure(b.sandwiched, format!("p = {}: exact comparison fails", b.p))?;
        ensure(b.lower > ratio(1, 2), format!("p = {}: lower ≤ 1/2", b.p))?;
        ensure(b.upper_pz < 1.0 && b.upper_feige < 1.0, format!("p = {}: upper ≥ 1", b.p))?;
    }
    let half = curve.iter().find(|b| b.p == ratio(1, 2)).unwrap();
    ensure(half.lower == ratio(3, 4), "lower bound at 1/2 is not 3/4")?;
    Ok("999 points, lower ≤ min(upper) and 1/2 < lower, upper < 1".into())
}

fn ac6() -> Check {
    let mut cases = vec![(6usize, ratio(1, 6))];
    for a in 2..=8i64 {
        cases.push((a as usize, ratio(1, a)));
        cases.push((a as usize, ratio(1, a + 1)));
    }
    for (a, p) in &cases {
        let table = analysis::chaundy_bullard_check(*a, 20, p).map_err(|e| e.to_string())?;
        ensure(table.strictly_decreasing, format!("a = {a}, p = {p}: not strictly decreasing"))?;
        for k in [1, 7, 20] {
            let direct = binomial_tail(k * a, k, p);
            ensure(table.values[k - 1] == direct, format!("a = {a}, p = {p}, k = {k}: value mismatch"))?;
        }
    }
    Ok(format!("{} (a, p) pairs, k ≤ 20, strictly decreasing", cases.len()))
}

fn random_instance(rng: &mut ChaCha8Rng) -> (Stakes, Params) {
    let n = rng.gen_range(1..=14usize);
    let d = rng.gen_range(n..=64usize);
    // composition of d into n positive parts
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, d - 1, n - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts.into_iter().chain([d]) {
        parts.push(ratio((c - prev) as i64, d as i64));
        prev = c;
    }
    let pd = rng.gen_range(1..=64i64);
    let td = rng.gen_range(1..=64i64);
    let p = ratio(rng.gen_range(0..=pd), pd);
    let t = ratio(rng.gen_range(0..=td), td);
    (Stakes::new(parts).unwrap(), Params::new(p, t).unwrap())
}

fn ac7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240707);
    let mut mc_checked = 0;
    let mut worst = 0.0f64;
    for i in 0..500 {
        let (stakes, params) = random_instance(&mut rng);
        let exact = tail_enum(&stakes, &params).map_err(|e| e.to_string())?.value;
        let dp = tail_dp(&stakes, &params).map_err(|e| e.to_string())?.value;
        ensure(exact == dp, format!("instance {i}: enum {exact} ≠ dp {dp} for {stakes} at {params:?}"))?;
        if i % 10 == 0 {
            let est = tail_mc(&stakes, &params, 100_000, i as u64).map_err(|e| e.to_string())?.value;
            let q = rational::to_f64(&exact);
            let sigma = (q * (1.0 - q) / 100_000.0).sqrt();
            let gap = (rational::to_f64(&est) - q).abs();
            if sigma == 0.0 {
                ensure(est == exact, format!("instance {i}: degenerate tail {exact} but estimate {est}"))?;
            } else {
                worst = worst.max(gap / sigma);
                ensure(gap <= 5.0 * sigma, format!("instance {i}: MC off by {:.2} σ", gap / sigma))?;
            }
            mc_checked += 1;
        }
    }
    Ok(format!("500 instances enum == dp; {mc_checked} MC checks, worst {worst:.2} σ"))
}

fn ac8() -> Check {
    let union = scan_interval_union(9, 3).map_err(|e| e.to_string())?;
    ensure(union.counterexamples.is_empty(), format!("interval union: {:?}", union.counterexamples.first()))?;
    let cross = scan_cross_intersecting(9).map_err(|e| e.to_string())?;
    ensure(cross.counterexamples.is_empty(), format!("cross-intersecting: {:?}", cross.counterexamples.first()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..10_000 {
        let m = rng.gen_range(1..=10usize);
        let weights: Vec<Rational> = (0..m).map(|_| ratio(rng.gen_range(0..=12), rng.gen_range(1..=12))).collect();
        let k = rng.gen_range(1..=5usize);
        let sets: Vec<u64> = (0..k).map(|_| rng.gen_range(0..1u64 << m)).collect();
        let measure = |s: u64| -> Rational { (0..m).filter(|x| s >> x & 1 == 1).map(|x| weights[x].clone()).sum() };
        let t = sets.iter().map(|s| measure(*s)).min().unwrap();
        let ok = verify_measure_intersection(&weights, &sets, &t).map_err(|e| e.to_string())?;
        ensure(ok, format!("measure instance {i} violates the bound"))?;
    }
    Ok(format!(
        "{} union families, {} cross-intersecting cases, 10000 measure instances: 0 counterexamples",
        union.checked, cross.checked
    ))
}

/// Heaviest intersecting family on `{1..n}` by branch and bound over all
/// families (not only up-sets). A family holds at most one set from each
/// complementary pair, which gives the bound.
fn brute_intersecting_max(n: usize, p: &Rational) -> Rational {
    let q = Rational::one() - p;
    let weight = |s: u32| rational::pow(p, s.count_ones() as usize) * rational::pow(&q, n - s.count_ones() as usize);
    let full = (1u32 << n) - 1;
    let mut sets: Vec<(u32, Rational)> = (1..=full).map(|s| (s, weight(s))).collect();
    sets.sort_by(|a, b| b.1.cmp(&a.1));

    fn go(
        i: usize,
        sets: &[(u32, Rational)],
        chosen: &mut Vec<u32>,
        current: &Rational,
        full: u32,
        best: &mut Rational,
    ) {
        if current > best {
            *best = current.clone();
        }
        if i == sets.len() {
            return;
        }
        // optimistic: every remaining compatible set, one per complementary pair
        let mut bound = current.clone();
        let mut seen = std::collections::HashSet::new();
        for (s, w) in &sets[i..] {
            let pair = (*s).min(full ^ *s);
            if chosen.iter().all(|c| c & s != 0) && seen.insert(pair) {
                bound += w;
            }
        }
        if bound <= *best {
            return;
        }
        let (s, w) = &sets[i];
        if chosen.iter().all(|c| c & s != 0) {
            chosen.push(*s);
            go(i + 1, sets, chosen, &(current + w), full, best);
            chosen.pop();
        }
        go(i + 1, sets, chosen, current, full, best);
    }

    let mut best = Rational::zero();
    go(0, &sets, &mut Vec::new(), &Rational::zero(), full, &mut best);
    best
}

fn ac9() -> Check {
    let mut checked = 0;
    for n in 1..=5 {
        for p in ["0.1", "0.2", "0.3", "0.4", "0.5"] {
            let p = r(p);
            let star = family_weight(&SubsetFamily::star(n).unwrap(), &p);
            let brute = brute_intersecting_max(n, &p);
            let (lib, _) = max_intersecting_family(n, &p).map_err(|e| e.to_string())?;
            let fish = fishburn_max(n, &p).map_err(|e| e.to_string())?.weight;
            ensure(brute == star, format!("n = {n}, p = {p}: brute {brute} ≠ p(F_1) {star}"))?;
            ensure(lib == star && fish == star, format!("n = {n}, p = {p}: library disagrees"))?;
            checked += 1;
        }
    }
    for n in [3, 5] {
        for p in ["0.6", "0.75", "0.9"] {
            let p = r(p);
            let majority = family_weight(&SubsetFamily::majority(n).unwrap(), &p);
            let brute = brute_intersecting_max(n, &p);
            let fish = fishburn_max(n, &p).map_err(|e| e.to_string())?.weight;
            ensure(brute == majority, format!("n = {n}, p = {p}: brute {brute} ≠ p(F_>n/2) {majority}"))?;
            ensure(fish == majority, format!("n = {n}, p = {p}: library disagrees"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, p) cases match brute force"))
}

fn ac10() -> Check {
    let summary = csoka_scan(10, 3, EXHAUSTIVE_CAP).map_err(|e| e.to_string())?;
    ensure(summary.points.len() == 55, format!("expected 55 points, got {}", summary.points.len()))?;
    ensure(summary.counterexamples.is_empty(), format!("{} counterexamples", summary.counterexamples.len()))?;
    ensure(summary.confirmations == 55, "not every point confirmed")?;
    Ok(format!("55 points with p ≤ t, all confirmed with ≤ 3 stakes (restricted class), optimal k counts {:?}", summary.optimal_k_counts))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC-1 exact value at p = t = 1/2", Duration::from_secs(10), ac1),
        ("AC-2 non-bold optimum at p = t = 2/3", Duration::from_secs(10), ac2),
        ("AC-3 majority witness at (11/20, 3/5)", Duration::from_secs(1), ac3),
        ("AC-4 region map vs rectangles", Duration::from_secs(30), ac4),
        ("AC-5 diagonal bound curves", Duration::from_secs(5), ac5),
        ("AC-6 Pepys / Chaundy-Bullard decrease", Duration::from_secs(5), ac6),
        ("AC-7 engine equivalence", Duration::from_secs(60), ac7),
        ("AC-8 interval and measure lemmas", Duration::from_secs(60), ac8),
        ("AC-9 heaviest intersecting families", Duration::from_secs(120), ac9),
        ("AC-10 conjecture scan, n_max = 3", Duration::from_secs(120), ac10),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => Err(format!("{msg}; but took {elapsed:.2?} > {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("[PASS] {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
