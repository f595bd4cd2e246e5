//! Is the best bet with at most `n` stakes always an average?

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{optimize_exhaustive_capped, SearchReport, EXHAUSTIVE_CAP};
use crate::error::{Error, Result};
use crate::model::{Params, Stakes};
use crate::rational::{self, ratio, Rational};
use crate::strategy::average_value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub params: Params,
    pub n_max: usize,
    /// Some `k`-average with `k ≤ n_max` attains the exhaustive maximum.
    pub confirmed: bool,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    /// Smallest optimal `k`, when confirmed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optimal_k: Option<usize>,
    pub optimal_ks: Vec<usize>,
    /// `⌊1/t⌋`; `None` at `t = 0`.
    pub bold_k: Option<usize>,
    /// Bold play is among the optimal averages.
    pub bold_optimal: bool,
    /// Stakes beating every average, when refuted.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Stakes>,
    pub report: SearchReport,
}

pub fn csoka_check(params: &Params, n_max: usize) -> Result<ConjectureVerdict> {
    csoka_check_capped(params, n_max, EXHAUSTIVE_CAP)
}

/// Compares the exhaustive maximum over at most `n_max` stakes with every
/// `k`-average, `k ≤ n_max`.
pub fn csoka_check_capped(params: &Params, n_max: usize, cap: usize) -> Result<ConjectureVerdict> {
    let report = optimize_exhaustive_capped(params, n_max, cap)?;
    let value = report.best.value.clone();
    let optimal_ks: Vec<usize> = (1..=n_max).filter(|&k| average_value(k, params) == value).collect();
    let confirmed = !optimal_ks.is_empty();
    let bold_k = params.bold_bets();
    let bold_optimal = bold_k.is_some_and(|k| optimal_ks.contains(&k));
    let counterexample = (!confirmed).then(|| report.all_maximizers[0].clone());
    Ok(ConjectureVerdict {
        params: params.clone(),
        n_max,
        confirmed,
        value,
        optimal_k: optimal_ks.first().copied(),
        optimal_ks,
        bold_k,
        bold_optimal,
        counterexample,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPoint {
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    pub confirmed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub optimal_k: Option<usize>,
    pub bold_optimal: bool,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub resolution: usize,
    pub n_max: usize,
    pub points: Vec<ScanPoint>,
    pub confirmations: usize,
    /// How many points have each smallest optimal `k`.
    pub optimal_k_counts: BTreeMap<usize, usize>,
    pub counterexamples: Vec<ConjectureVerdict>,
}

/// `csoka_check` at every `(i/r, j/r)` with `1 ≤ i ≤ j ≤ r`.
pub fn csoka_scan(resolution: usize, n_max: usize, cap: usize) -> Result<ScanSummary> {
    if resolution == 0 {
        return Err(Error::Invalid("resolution must be positive".into()));
    }
    let r = resolution as i64;
    let mut points = Vec::new();
    let mut counterexamples = Vec::new();
    let mut optimal_k_counts = BTreeMap::new();
    for i in 1..=r {
        for j in i..=r {
            let params = Params::new(ratio(i, r), ratio(j, r))?;
            let verdict = csoka_check_capped(&params, n_max, cap)?;
            if let Some(k) = verdict.optimal_k {
                *optimal_k_counts.entry(k).or_insert(0) += 1;
            }
            points.push(ScanPoint {
                p: params.p.clone(),
                t: params.t.clone(),
                confirmed: verdict.confirmed,
                optimal_k: verdict.optimal_k,
                bold_optimal: verdict.bold_optimal,
                value: verdict.value.clone(),
            });
            if !verdict.confirmed {
                counterexamples.push(verdict);
            }
        }
    }
    let confirmations = points.iter().filter(|p| p.confirmed).count();
    Ok(ScanSummary { resolution, n_max, points, confirmations, optimal_k_counts, counterexamples })
}
