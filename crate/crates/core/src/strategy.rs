//! The canonical strategies: bold play and `k`-averages.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Params, StrategyKind, StrategyValue};
use crate::rational::{self, Rational};
use crate::tail::binomial_upper_tail;

/// Equal stakes on `k = ⌊1/t⌋` bets; succeeds as soon as one bet does.
pub fn bold_play(params: &Params) -> Result<StrategyValue> {
    let k = params
        .bold_bets()
        .ok_or_else(|| Error::regime("bold play is undefined for t = 0 (unbounded number of bets)"))?;
    let value = Rational::one() - rational::pow(&(Rational::one() - &params.p), k);
    Ok(StrategyValue { kind: StrategyKind::Bold { k }, value })
}

/// `P(Bin(k, p) ≥ k·t)`, the value of staking `1/k` on `k` bets.
pub fn average_play(k: usize, params: &Params) -> Result<StrategyValue> {
    if k == 0 {
        return Err(Error::Invalid("an average needs k ≥ 1".into()));
    }
    Ok(StrategyValue { kind: StrategyKind::Average { k }, value: average_value(k, params) })
}

pub(crate) fn average_value(k: usize, params: &Params) -> Rational {
    binomial_upper_tail(k, successes_needed(k, &params.t), &params.p)
}

/// `⌈k·t⌉`: the fewest successes among `k` equal bets that reach `t`.
pub fn successes_needed(k: usize, t: &Rational) -> usize {
    let kt = Rational::from_integer(k.into()) * t;
    if kt.is_zero() {
        0
    } else {
        rational::ceil_u64(&kt).expect("k·t is at most k") as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Stakes;
    use crate::rational::ratio;
    use crate::tail::tail_enum;

    fn params(p: &str, t: &str) -> Params {
        Params::parse(p, t).unwrap()
    }

    #[test]
    fn bold_play_examples() {
        let v = bold_play(&params("1/2", "1/2")).unwrap();
        assert_eq!(v.kind, StrategyKind::Bold { k: 2 });
        assert_eq!(v.value, ratio(3, 4));

        let v = bold_play(&params("3/10", "9/20")).unwrap();
        assert_eq!(v.kind, StrategyKind::Bold { k: 2 });
        assert_eq!(v.value, ratio(51, 100));

        let pt = params("1/6", "1/3");
        let v = bold_play(&pt).unwrap();
        assert_eq!(v.value, ratio(91, 216));
        assert_eq!(tail_enum(&Stakes::average(3), &pt).unwrap().value, v.value);

        assert!(matches!(bold_play(&params("0", "0")), Err(Error::Regime(_))));
    }

    #[test]
    fn average_play_examples() {
        assert_eq!(average_play(3, &params("2/3", "2/3")).unwrap().value, ratio(20, 27));
        for t in ["1/10", "1/2", "1"] {
            assert_eq!(average_play(1, &params("0.37", t)).unwrap().value, ratio(37, 100));
        }
        // Σ_{j≥3} C(5,j) 0.55^j 0.45^(5−j)
        let pt = params("11/20", "3/5");
        let v = average_play(5, &pt).unwrap().value;
        assert_eq!(v, ratio(949003, 1600000));
        assert_eq!(v, tail_enum(&Stakes::average(5), &pt).unwrap().value);
        assert!((rational::to_f64(&v) - 0.59313).abs() < 5e-6);
        assert!(average_play(0, &pt).is_err());
    }

    #[test]
    fn closed_threshold_counts_ties() {
        // k·t integral: exactly kt successes suffices
        assert_eq!(successes_needed(4, &ratio(1, 2)), 2);
        assert_eq!(successes_needed(5, &ratio(1, 2)), 3);
        assert_eq!(successes_needed(3, &ratio(0, 1)), 0);
    }
}
