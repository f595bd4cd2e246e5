//! Searching for the best stakes.
//!
//! With at most `n` stakes the value depends on the stakes only through
//! their threshold family, and there are finitely many of those, so small
//! `n` can be searched exhaustively. Larger `n` falls back to a seeded
//! hill-climb on a rational lattice, which only gives lower bounds.

mod conjecture;
mod exhaustive;
mod local;

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::model::{Params, Stakes, StrategyKind, StrategyValue};
use crate::rational::{self, Rational};

pub use conjecture::{csoka_check, csoka_check_capped, csoka_scan, ConjectureVerdict, ScanPoint, ScanSummary};
pub use exhaustive::{optimize_averages, optimize_exhaustive, optimize_exhaustive_capped, EXHAUSTIVE_CAP};
pub use local::{optimize_local, LocalSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    ExhaustiveFamilies,
    LocalSearch,
    AveragesOnly,
}

/// The best stakes found among strategies with at most `n_cap` stakes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub params: Params,
    pub best: StrategyValue,
    /// Every maximizer found, fewest stakes first, then lexicographically
    /// largest; `best` is the first of them.
    pub all_maximizers: Vec<Stakes>,
    pub method: SearchMethod,
    pub n_cap: usize,
    /// Threshold families scored, lattice points evaluated or averages tried.
    pub evaluated: u64,
    /// Set when the search was exhaustive and an average attains the maximum.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<String>,
}

impl SearchReport {
    /// `value` restricted to at most `n_cap` stakes, as exact text.
    pub fn label(&self) -> String {
        format!("{} (restricted to ≤ {} stakes)", self.best.value, self.n_cap)
    }

    pub fn value_f64(&self) -> f64 {
        rational::to_f64(&self.best.value)
    }
}

/// Classify stakes as bold play, an average or general.
pub fn strategy_kind(stakes: &Stakes, params: &Params) -> StrategyKind {
    match stakes.as_average() {
        Some(k) if Some(k) == params.bold_bets() => StrategyKind::Bold { k },
        Some(k) => StrategyKind::Average { k },
        None => StrategyKind::General { stakes: stakes.clone() },
    }
}

/// Sorts and deduplicates maximizers, then packages the report.
fn report(
    params: &Params,
    value: Rational,
    mut maximizers: Vec<Stakes>,
    method: SearchMethod,
    n_cap: usize,
    evaluated: u64,
) -> SearchReport {
    maximizers.sort_by(|a, b| (a.len(), Reverse(a)).cmp(&(b.len(), Reverse(b))));
    maximizers.dedup();
    let kind = strategy_kind(&maximizers[0], params);
    let certificate = match method {
        SearchMethod::ExhaustiveFamilies => maximizers
            .iter()
            .find_map(Stakes::as_average)
            .map(|k| format!("the {k}-average attains the maximum over all stakes with at most {n_cap} entries")),
        _ => None,
    };
    SearchReport {
        params: params.clone(),
        best: StrategyValue { kind, value },
        all_maximizers: maximizers,
        method,
        n_cap,
        evaluated,
        certificate,
    }
}
