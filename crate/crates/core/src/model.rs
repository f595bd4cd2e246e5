//! Domain types shared by every engine: stake vectors, `(p, t)` parameters,
//! tail results and strategy values.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, parse_rational, Rational};

/// A finite convex combination `c_1 ≥ c_2 ≥ … ≥ c_n > 0` with `Σ c_i = 1`.
///
/// The constructor sorts descending and strips zero coefficients, so two
/// stake vectors compare equal exactly when they describe the same bet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stakes(Vec<Rational>);

impl Stakes {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        for c in &coefficients {
            if !rational::in_unit_interval(c) {
                return Err(Error::Invalid(format!("stake {c} is outside [0, 1]")));
            }
        }
        let sum: Rational = coefficients.iter().sum();
        if !sum.is_one() {
            return Err(Error::Invalid(format!("stakes sum to {sum}, expected 1")));
        }
        Ok(Self::canonical(coefficients))
    }

    /// Rescales a non-negative vector with positive sum so that it sums to 1.
    pub fn normalized(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.iter().any(Signed::is_negative) {
            return Err(Error::Invalid("negative stake".into()));
        }
        let sum: Rational = coefficients.iter().sum();
        if sum.is_zero() {
            return Err(Error::Invalid("stakes sum to 0; nothing to normalize".into()));
        }
        Ok(Self::canonical(coefficients.into_iter().map(|c| c / &sum).collect()))
    }

    fn canonical(mut coefficients: Vec<Rational>) -> Self {
        coefficients.retain(|c| !c.is_zero());
        coefficients.sort_by(|a, b| b.cmp(a));
        Stakes(coefficients)
    }

    /// Equal stakes `1/k` on `k` bets.
    pub fn average(k: usize) -> Self {
        assert!(k >= 1, "an average needs at least one bet");
        Stakes(vec![rational::ratio(1, k as i64); k])
    }

    /// Parses a comma-separated list such as `"1/2,1/4,1/4"`.
    pub fn parse_list(list: &str) -> Result<Vec<Rational>> {
        list.split(',').map(parse_rational).collect()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    /// Number of non-zero stakes.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The coefficients followed by zeros up to length `n`.
    pub fn padded(&self, n: usize) -> Vec<Rational> {
        let mut out = self.0.clone();
        out.resize(n.max(out.len()), Rational::zero());
        out
    }

    /// `Some(k)` when these stakes are the `k`-average.
    pub fn as_average(&self) -> Option<usize> {
        let first = self.0.first()?;
        self.0.iter().all(|c| c == first).then_some(self.0.len())
    }
}

impl fmt::Display for Stakes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Stakes {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_vec_str::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Stakes {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = rational::serde_vec_str::deserialize(d)?;
        Stakes::new(raw).map_err(serde::de::Error::custom)
    }
}

/// Success probability `p` and threshold `t`, both in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
}

impl Params {
    pub fn new(p: Rational, t: Rational) -> Result<Self> {
        if !rational::in_unit_interval(&p) {
            return Err(Error::Invalid(format!("p = {p} is outside [0, 1]")));
        }
        if !rational::in_unit_interval(&t) {
            return Err(Error::Invalid(format!("t = {t} is outside [0, 1]")));
        }
        Ok(Params { p, t })
    }

    pub fn parse(p: &str, t: &str) -> Result<Self> {
        Self::new(parse_rational(p)?, parse_rational(t)?)
    }

    /// Errors unless `p ≤ t`; below the diagonal the supremum is 1 and
    /// the optimisation questions are vacuous.
    pub fn require_p_le_t(&self) -> Result<()> {
        if self.p > self.t {
            return Err(Error::regime(format!(
                "p = {} exceeds t = {}; only p ≤ t is meaningful",
                self.p, self.t
            )));
        }
        Ok(())
    }

    /// `⌊1/t⌋`, the number of bets in bold play. `None` for `t = 0`.
    pub fn bold_bets(&self) -> Option<usize> {
        if self.t.is_zero() {
            return None;
        }
        rational::floor_u64(&self.t.recip()).map(|k| k as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    Convolution,
    MonteCarlo,
}

/// A tail probability together with the engine that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailResult {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub method: Method,
    /// Standard error; only Monte Carlo estimates carry one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stderr: Option<f64>,
}

impl TailResult {
    pub(crate) fn exact(value: Rational, method: Method) -> Self {
        TailResult { value, method, stderr: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StrategyKind {
    /// `1/k` on `k = ⌊1/t⌋` bets.
    Bold { k: usize },
    /// `1/k` on `k` bets.
    Average { k: usize },
    General { stakes: Stakes },
}

impl StrategyKind {
    pub fn stakes(&self) -> Stakes {
        match self {
            StrategyKind::Bold { k } | StrategyKind::Average { k } => Stakes::average(*k),
            StrategyKind::General { stakes } => stakes.clone(),
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyKind::Bold { k } => write!(f, "bold play (k={k})"),
            StrategyKind::Average { k } => write!(f, "{k}-average"),
            StrategyKind::General { stakes } => write!(f, "stakes {stakes}"),
        }
    }
}

/// The success probability of a particular strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyValue {
    #[serde(flatten)]
    pub kind: StrategyKind,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}
