//! Bounds on the diagonal value `π(p, p)`.
//!
//! Two upper bounds (a fourth-moment Paley–Zygmund estimate and a linear
//! bound from the `0.1798` small-deviation constant) and the bold-play lower
//! bound. The upper bounds involve `√3`, so they are reported in floating
//! point, but every comparison against the exact lower bound is decided in
//! exact arithmetic by squaring.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, int, ratio, Rational};

/// Constant term of the linear upper bound, `1 − 0.1798`.
pub fn feige_intercept() -> Rational {
    ratio(8202, 10000)
}

pub fn feige_slope() -> Rational {
    ratio(1798, 10000)
}

fn check_open_unit(p: &Rational) -> Result<()> {
    if p.is_zero() || *p >= Rational::one() || *p < Rational::zero() {
        return Err(Error::regime(format!("p = {p} must lie strictly between 0 and 1")));
    }
    Ok(())
}

/// `max(3, 1/(p(1−p)) − 3)`, the fourth-moment factor.
pub fn pz_factor(p: &Rational) -> Result<Rational> {
    check_open_unit(p)?;
    let variance = p * (Rational::one() - p);
    Ok(std::cmp::max(int(3), variance.recip() - int(3)))
}

/// `1 − (2√3 − 3) / max(3, 1/(p(1−p)) − 3)`.
pub fn pz_upper(p: &Rational) -> Result<f64> {
    let m = rational::to_f64(&pz_factor(p)?);
    Ok(1.0 - (2.0 * 3f64.sqrt() - 3.0) / m)
}

/// Exact test of `value ≤ pz_upper(p)`.
///
/// `v ≤ 1 − (2√3−3)/m` iff `m(1−v) + 3 ≥ 2√3`; the left side is positive
/// whenever `v ≤ 1`, so both sides may be squared.
pub fn below_pz_upper(value: &Rational, p: &Rational) -> Result<bool> {
    let m = pz_factor(p)?;
    if *value > Rational::one() {
        return Ok(false);
    }
    let lhs = m * (Rational::one() - value) + int(3);
    Ok(&lhs * &lhs >= int(12))
}

/// `0.8202 + 0.1798·p`, exactly.
pub fn feige_upper_exact(p: &Rational) -> Result<Rational> {
    if !rational::in_unit_interval(p) {
        return Err(Error::Invalid(format!("p = {p} is outside [0, 1]")));
    }
    Ok(feige_intercept() + feige_slope() * p)
}

pub fn feige_upper(p: &Rational) -> Result<f64> {
    feige_upper_exact(p).map(|v| rational::to_f64(&v))
}

/// Number of bold bets on the diagonal: `k` with `1/(k+1) < p ≤ 1/k`.
pub fn hyp_bets(p: &Rational) -> Result<usize> {
    if p.is_zero() || *p > Rational::one() || *p < Rational::zero() {
        return Err(Error::regime(format!("p = {p} must lie in (0, 1]")));
    }
    Ok(rational::floor_u64(&p.recip()).expect("1/p is finite") as usize)
}

/// Bold play on the diagonal: `1 − (1−p)^k` with `1/(k+1) < p ≤ 1/k`.
pub fn bold_lower_hyp(p: &Rational) -> Result<Rational> {
    let k = hyp_bets(p)?;
    Ok(Rational::one() - rational::pow(&(Rational::one() - p), k))
}

/// All three bounds at one point of the diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct HypotenuseBounds {
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    pub k: usize,
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    pub upper_pz: f64,
    pub upper_feige: f64,
    pub upper: f64,
    /// `lower ≤ min(upper_pz, upper_feige)`, decided exactly.
    pub sandwiched: bool,
}

impl HypotenuseBounds {
    pub fn at(p: &Rational) -> Result<Self> {
        check_open_unit(p)?;
        let k = hyp_bets(p)?;
        let lower = bold_lower_hyp(p)?;
        let upper_pz = pz_upper(p)?;
        let feige_exact = feige_upper_exact(p)?;
        let upper_feige = rational::to_f64(&feige_exact);
        let sandwiched = below_pz_upper(&lower, p)? && lower <= feige_exact;
        Ok(HypotenuseBounds {
            p: p.clone(),
            k,
            lower,
            upper_pz,
            upper_feige,
            upper: upper_pz.min(upper_feige),
            sandwiched,
        })
    }
}

/// Bounds at `p = i/resolution` for `0 < i < resolution`; the endpoints are
/// outside the open interval where the bounds apply.
pub fn bound_curve(resolution: usize) -> Result<Vec<HypotenuseBounds>> {
    if resolution < 2 {
        return Err(Error::Invalid("resolution must be at least 2".into()));
    }
    (1..resolution)
        .map(|i| HypotenuseBounds::at(&ratio(i as i64, resolution as i64)))
        .collect()
}

/// Rows `p,lower,upper_pz,upper_feige` in decimal form with `decimals` digits.
pub fn write_bounds_csv<W: std::io::Write>(rows: &[HypotenuseBounds], decimals: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "lower", "upper_pz", "upper_feige"])?;
    for b in rows {
        w.write_record([
            rational::to_decimal_string(&b.p, decimals),
            rational::to_decimal_string(&b.lower, decimals),
            format!("{:.*}", decimals, b.upper_pz),
            format!("{:.*}", decimals, b.upper_feige),
        ])?;
    }
    w.flush()?;
    Ok(())
}
