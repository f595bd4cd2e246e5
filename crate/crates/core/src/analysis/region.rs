//! Where in the `(p, t)` square bold play is known to be optimal.
//!
//! Every known optimality or non-optimality result is a hypothesis on `p`
//! and `t`; `classify` tests them in a fixed order over exact rationals and
//! reports the first that applies. Points covered by none are `unknown`.

use std::fmt;
use std::io::Write;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Params, StrategyValue};
use crate::rational::{self, int, ratio, Rational};
use crate::strategy::average_play;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    BoldOptimal,
    BoldNotOptimal,
    Unknown,
    /// `t < p`: the weak law pushes the value to 1 with many small stakes,
    /// but no single strategy attains it.
    SupIsOne,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::BoldOptimal => "bold_optimal",
            Status::BoldNotOptimal => "bold_not_optimal",
            Status::Unknown => "unknown",
            Status::SupIsOne => "sup_is_one",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The result that settles a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "key", rename_all = "snake_case")]
pub enum Justification {
    /// `t < p`.
    BelowDiagonal,
    /// `p ≤ t = 1/2`.
    HalfThreshold,
    /// `p ≤ 1/2 < t`.
    HighThreshold,
    /// `k/(k+1) < p ≤ (k+1)/(k+2) < t`.
    FavorableOdds { k: usize },
    /// `p = t = (k+1)/(k+2)`; bold play wins for `k > 1`, the 3-average for `k = 1`.
    FavorableDiagonal { k: usize },
    /// `p = (2k+1)/(2k+3)`, `t = (k+1)/(k+2)`, `k > 1`.
    FavorableOddPoint { k: usize },
    /// `p < 1/(2k+1)` and `1/(k+1) < t`.
    UnfavorableOdds { k: usize },
    /// `t = 1/3` and `p = 1/b`.
    ThirdThreshold { b: usize },
    /// `1/2 < p ≤ t ≤ 2/3`; the `(2k+1)`-average beats bold play.
    MajorityBeatsBold { k: usize },
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::BelowDiagonal => f.write_str("below_diagonal"),
            Justification::HalfThreshold => f.write_str("half_threshold"),
            Justification::HighThreshold => f.write_str("high_threshold"),
            Justification::FavorableOdds { k } => write!(f, "favorable_odds(k={k})"),
            Justification::FavorableDiagonal { k } => write!(f, "favorable_diagonal(k={k})"),
            Justification::FavorableOddPoint { k } => write!(f, "favorable_odd_point(k={k})"),
            Justification::UnfavorableOdds { k } => write!(f, "unfavorable_odds(k={k})"),
            Justification::ThirdThreshold { b } => write!(f, "third_threshold(b={b})"),
            Justification::MajorityBeatsBold { k } => write!(f, "majority_beats_bold(k={k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub justification: Option<Justification>,
    /// For `bold_not_optimal`, an average that beats bold play.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<StrategyValue>,
}

impl RegionVerdict {
    fn settled(status: Status, justification: Justification) -> Self {
        RegionVerdict { status, justification: Some(justification), witness: None }
    }

    fn beaten(justification: Justification, witness: StrategyValue) -> Self {
        RegionVerdict { status: Status::BoldNotOptimal, justification: Some(justification), witness: Some(witness) }
    }

    fn unknown() -> Self {
        RegionVerdict { status: Status::Unknown, justification: None, witness: None }
    }
}

pub fn classify(params: &Params) -> RegionVerdict {
    let (p, t) = (&params.p, &params.t);
    let half = ratio(1, 2);
    let one = Rational::one();

    if t < p {
        return RegionVerdict::settled(Status::SupIsOne, Justification::BelowDiagonal);
    }
    if *p <= half && *t == half {
        return RegionVerdict::settled(Status::BoldOptimal, Justification::HalfThreshold);
    }
    if *p <= half && *t > half {
        return RegionVerdict::settled(Status::BoldOptimal, Justification::HighThreshold);
    }
    if *p < one {
        let k_max = rational::ceil_u64(&(&one - p).recip()).unwrap_or(0) + 1;
        for k in 1..=k_max as i64 {
            let lo = ratio(k, k + 1);
            let hi = ratio(k + 1, k + 2);
            if lo < *p && *p <= hi && hi < *t {
                return RegionVerdict::settled(Status::BoldOptimal, Justification::FavorableOdds { k: k as usize });
            }
        }
    }
    if p == t {
        if let Some(k) = diagonal_index(p) {
            let why = Justification::FavorableDiagonal { k };
            if k > 1 {
                return RegionVerdict::settled(Status::BoldOptimal, why);
            }
            let witness = average_play(3, params).expect("k = 3 is a valid average");
            return RegionVerdict::beaten(why, witness);
        }
    }
    if let Some(k) = diagonal_index(t) {
        if k > 1 && *p == ratio(2 * k as i64 + 1, 2 * k as i64 + 3) {
            return RegionVerdict::settled(Status::BoldOptimal, Justification::FavorableOddPoint { k });
        }
    }
    if !t.is_zero() {
        let k_max = rational::ceil_u64(&t.recip()).expect("1/t is finite") as i64;
        for k in 1..=k_max {
            if *p < ratio(1, 2 * k + 1) && ratio(1, k + 1) < *t {
                return RegionVerdict::settled(Status::BoldOptimal, Justification::UnfavorableOdds { k: k as usize });
            }
        }
    }
    if *t == ratio(1, 3) && !p.is_zero() {
        let b = p.recip();
        if b.is_integer() && b >= int(3) {
            let b = b.to_integer().to_usize().expect("p ≥ 1/b for a small b");
            return RegionVerdict::settled(Status::BoldOptimal, Justification::ThirdThreshold { b });
        }
    }
    if half < *p && *t <= ratio(2, 3) {
        // largest k with t ≤ (k+1)/(2k+1), i.e. k ≤ (1−t)/(2t−1)
        let k = rational::floor_u64(&((&one - t) / (int(2) * t - &one))).expect("t > 1/2") as usize;
        let witness = average_play(2 * k + 1, params).expect("positive k");
        return RegionVerdict::beaten(Justification::MajorityBeatsBold { k }, witness);
    }
    RegionVerdict::unknown()
}

/// `k ≥ 1` with `x = (k+1)/(k+2)`, if any.
fn diagonal_index(x: &Rational) -> Option<usize> {
    let one = Rational::one();
    if *x < ratio(2, 3) || *x >= one {
        return None;
    }
    // x(k+2) = k+1  ⇒  k = (2x−1)/(1−x)
    let k = (int(2) * x - &one) / (&one - x);
    if k.is_integer() {
        k.to_integer().to_usize()
    } else {
        None
    }
}

/// Whether `(p, t)` lies in the union of rectangles `[0, x] × [y, 1]` with
/// lower-right vertex `(x, y)` = `(k/(k+1), k/(k+1))` or `(1/(2k+1), 1/(k+1))`.
/// With `closed = false` the rectangles are open on their right and bottom
/// edges (strict inequalities), which is the set where the surrounding
/// results hold without boundary cases.
pub fn in_rectangles(p: &Rational, t: &Rational, closed: bool) -> bool {
    let one = Rational::one();
    let le = |a: &Rational, b: &Rational| if closed { a <= b } else { a < b };

    // Diagonal vertices: the smallest k with k/(k+1) at or above p is the
    // best candidate, since t must sit above the vertex too.
    if *p < one {
        let r = p / (&one - p);
        let k = if closed {
            rational::ceil_u64(&r).expect("finite")
        } else {
            rational::floor_u64(&r).expect("finite") + 1
        }
        .max(1) as i64;
        let x = ratio(k, k + 1);
        if le(p, &x) && le(&x, t) {
            return true;
        }
    }
    // Vertices (1/(2k+1), 1/(k+1)): the smallest k with 1/(k+1) below t.
    if !t.is_zero() {
        let r = t.recip();
        let k = if closed {
            rational::ceil_u64(&r).expect("finite").saturating_sub(1)
        } else {
            rational::floor_u64(&r).expect("finite")
        }
        .max(1) as i64;
        if le(p, &ratio(1, 2 * k + 1)) && le(&ratio(1, k + 1), t) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionRow {
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    #[serde(with = "rational::serde_str")]
    pub t: Rational,
    #[serde(flatten)]
    pub verdict: RegionVerdict,
}

/// `classify` on `{i/r} × {j/r}` restricted to `p ≤ t`, ordered by `(p, t)`.
pub fn region_grid(resolution: usize) -> Result<Vec<RegionRow>> {
    if resolution < 2 {
        return Err(Error::Invalid("resolution must be at least 2".into()));
    }
    let r = resolution as i64;
    let mut rows = Vec::new();
    for i in 0..=r {
        for j in i..=r {
            let params = Params::new(ratio(i, r), ratio(j, r))?;
            let verdict = classify(&params);
            rows.push(RegionRow { p: params.p, t: params.t, verdict });
        }
    }
    Ok(rows)
}

/// Rows `p,t,status,citation`; `p` and `t` as exact rationals.
pub fn write_region_csv<W: Write>(rows: &[RegionRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "t", "status", "citation"])?;
    for row in rows {
        let citation = row.verdict.justification.map(|j| j.to_string()).unwrap_or_default();
        w.write_record([row.p.to_string(), row.t.to_string(), row.verdict.status.to_string(), citation])?;
    }
    w.flush()?;
    Ok(())
}
