//! Averages and binomial tails.
//!
//! `P(Bin(k, p) ≥ kt)` only changes when `⌈kt⌉` does, and for a fixed
//! number `n` of required successes the largest `k` is best. So the only
//! averages worth comparing are `k = ⌊n/t⌋`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Params, StrategyKind, StrategyValue};
use crate::rational::{self, ratio, Rational};
use crate::strategy::average_value;
use crate::tail::binomial_upper_tail;

/// `⌊n/t⌋` for `n = 1..=n_max`, deduplicated and ascending.
pub fn candidate_ks(t: &Rational, n_max: usize) -> Result<Vec<usize>> {
    if t.is_zero() || *t > ratio(1, 1) || *t < Rational::zero() {
        return Err(Error::regime(format!("t = {t} must lie in (0, 1]")));
    }
    let mut ks: Vec<usize> = (1..=n_max)
        .map(|n| rational::floor_u64(&(Rational::from_integer(n.into()) / t)).expect("finite") as usize)
        .collect();
    ks.dedup();
    Ok(ks)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestAverage {
    /// The maximizing average with the fewest bets.
    pub best: StrategyValue,
    /// Every candidate `k` attaining the maximum, ascending.
    pub maximizers: Vec<usize>,
    pub candidates: Vec<usize>,
}

/// The best `k`-average among `candidate_ks(t, n_max)`.
pub fn best_average(params: &Params, n_max: usize) -> Result<BestAverage> {
    params.require_p_le_t()?;
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let candidates = candidate_ks(&params.t, n_max)?;
    let bold = params.bold_bets();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for &k in &candidates {
        let value = average_value(k, params);
        match &mut best {
            Some((v, ks)) if value == *v => ks.push(k),
            Some((v, _)) if value < *v => {}
            _ => best = Some((value, vec![k])),
        }
    }
    let (value, maximizers) = best.expect("at least one candidate");
    let k = maximizers[0];
    let kind = if Some(k) == bold { StrategyKind::Bold { k } } else { StrategyKind::Average { k } };
    Ok(BestAverage { best: StrategyValue { kind, value }, maximizers, candidates })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PepysTable {
    pub a: usize,
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    /// `P(Bin(ka, p) ≥ k)` for `k = 1..=k_max`.
    #[serde(with = "rational::serde_vec_str")]
    pub values: Vec<Rational>,
    pub strictly_decreasing: bool,
}

/// The table without checking `p ≤ 1/a`; see `chaundy_bullard_check`.
pub fn pepys_table(a: usize, p: &Rational, k_max: usize) -> Result<PepysTable> {
    if a == 0 || k_max == 0 {
        return Err(Error::Invalid("a and k_max must be at least 1".into()));
    }
    if !rational::in_unit_interval(p) {
        return Err(Error::Invalid(format!("p = {p} is outside [0, 1]")));
    }
    let values: Vec<Rational> = (1..=k_max).map(|k| binomial_upper_tail(k * a, k, p)).collect();
    let strictly_decreasing = values.windows(2).all(|w| w[1] < w[0]);
    Ok(PepysTable { a, p: p.clone(), values, strictly_decreasing })
}

/// `P(Bin(ka, p) ≥ k)` strictly decreases in `k`, for `a ≥ 2` and `0 < p ≤ 1/a`.
pub fn chaundy_bullard_check(a: usize, k_max: usize, p: &Rational) -> Result<PepysTable> {
    if a < 2 {
        return Err(Error::regime("a must be at least 2"));
    }
    if p.is_zero() || *p > ratio(1, a as i64) || *p < Rational::zero() {
        return Err(Error::regime(format!("p = {p} must lie in (0, 1/{a}]")));
    }
    pepys_table(a, p, k_max)
}
