use num_traits::Zero;

use super::{report, SearchMethod, SearchReport};
use crate::error::{Error, Result};
use crate::families::{
    enumerate_threshold_families_capped, family_weight, threshold_family_weights, SubsetFamily, DEFAULT_UPSET_CAP,
};
use crate::model::{Params, Stakes};
use crate::rational::Rational;
use crate::strategy::average_value;

/// Default limit on `n`; six points means scanning ~7.8 million up-sets.
pub const EXHAUSTIVE_CAP: usize = DEFAULT_UPSET_CAP;

/// The exact maximum of `P(S_γ ≥ t)` over all stakes with at most `n` entries.
pub fn optimize_exhaustive(params: &Params, n: usize) -> Result<SearchReport> {
    optimize_exhaustive_capped(params, n, EXHAUSTIVE_CAP)
}

/// Scores every threshold family of non-increasing stakes on `n` points.
/// A maximizing family is reported by the average realizing it when there is
/// one, otherwise by the stakes the realizability LP found.
pub fn optimize_exhaustive_capped(params: &Params, n: usize, cap: usize) -> Result<SearchReport> {
    params.require_p_le_t()?;
    if n == 0 {
        return Err(Error::Invalid("need at least one stake".into()));
    }
    if n > cap {
        return Err(Error::size(format!("exhaustive search over {n} stakes"), cap));
    }
    let averages: Vec<(usize, SubsetFamily)> = (1..=n)
        .map(|k| Ok((k, threshold_family_weights(&Stakes::average(k).padded(n), &params.t)?)))
        .collect::<Result<_>>()?;

    let families = enumerate_threshold_families_capped(n, &params.t, true, cap)?;
    let evaluated = families.len() as u64;
    let mut best = Rational::zero();
    let mut maximizers = Vec::new();
    for (family, witness) in families {
        let weight = family_weight(&family, &params.p);
        if weight < best {
            continue;
        }
        if weight > best {
            best = weight;
            maximizers.clear();
        }
        let stakes = match averages.iter().find(|(_, f)| *f == family) {
            Some((k, _)) => Stakes::average(*k),
            None => witness.stakes.expect("enumeration only yields realizable families"),
        };
        maximizers.push(stakes);
    }
    Ok(report(params, best, maximizers, SearchMethod::ExhaustiveFamilies, n, evaluated))
}

/// The best `k`-average for `k = 1..=n`.
pub fn optimize_averages(params: &Params, n: usize) -> Result<SearchReport> {
    params.require_p_le_t()?;
    if n == 0 {
        return Err(Error::Invalid("need at least one stake".into()));
    }
    let values: Vec<Rational> = (1..=n).map(|k| average_value(k, params)).collect();
    let best = values.iter().max().expect("n ≥ 1").clone();
    let maximizers = (1..=n).filter(|k| values[k - 1] == best).map(Stakes::average).collect();
    Ok(report(params, best, maximizers, SearchMethod::AveragesOnly, n, n as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::StrategyKind;
    use crate::rational::ratio;
    use crate::tail::tail_enum;

    fn run(p: &str, t: &str, n: usize) -> SearchReport {
        optimize_exhaustive(&Params::parse(p, t).unwrap(), n).unwrap()
    }

    #[test]
    fn spec_points() {
        let r = run("2/3", "2/3", 4);
        assert_eq!(r.best.value, ratio(20, 27));
        assert_eq!(r.all_maximizers, vec![Stakes::average(3)]);
        assert_eq!(r.best.kind, StrategyKind::Average { k: 3 });

        let r = run("1/3", "3/5", 4);
        assert_eq!(r.best.value, ratio(1, 3));
        assert_eq!(r.best.kind, StrategyKind::Bold { k: 1 });

        let r = run("1/2", "1/2", 5);
        assert_eq!(r.best.value, ratio(3, 4));
        assert!(r.all_maximizers.contains(&Stakes::average(2)));
        assert!(r.certificate.is_some());
    }

    #[test]
    fn maximizers_recompute_to_the_best_value() {
        for (p, t) in [("1/2", "1/2"), ("0.3", "0.45"), ("0.6", "0.7"), ("1/4", "1/3")] {
            let params = Params::parse(p, t).unwrap();
            let r = optimize_exhaustive(&params, 4).unwrap();
            for s in &r.all_maximizers {
                assert_eq!(tail_enum(s, &params).unwrap().value, r.best.value, "{s} at ({p}, {t})");
            }
        }
    }

    #[test]
    fn caps_and_regimes() {
        let params = Params::parse("1/2", "1/2").unwrap();
        assert!(matches!(optimize_exhaustive(&params, 6), Err(Error::Size { cap: 5, .. })));
        let below = Params::parse("2/3", "1/2").unwrap();
        assert!(matches!(optimize_exhaustive(&below, 3), Err(Error::Regime(_))));
    }

    #[test]
    fn degenerate_p_zero() {
        let r = run("0", "1/2", 3);
        assert!(r.best.value.is_zero());
        assert_eq!(r.best.kind, StrategyKind::Average { k: 1 });
    }

    #[test]
    fn averages_only() {
        let r = optimize_averages(&Params::parse("11/20", "3/5").unwrap(), 7).unwrap();
        assert_eq!(r.best.kind, StrategyKind::Average { k: 5 });
        assert_eq!(r.best.value, ratio(949003, 1600000));
    }
}
