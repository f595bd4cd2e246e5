//! Engines for `P(S_γ ≥ t)` where `S_γ = Σ c_i β_i` and the `β_i` are iid
//! Bernoulli(p).
//!
//! [`tail_enum`] sums over all `2^n` outcomes, [`tail_dp`] convolves the
//! distribution one stake at a time and [`tail_mc`] samples. The first two
//! are exact and agree to the last bit; the comparison with `t` is always
//! the closed one, `≥`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Method, Params, Stakes, TailResult};
use crate::rational::{self, Rational};
use crate::scaled::{self, ScaledThreshold};

pub const DEFAULT_ENUM_CAP: usize = 24;
/// Masks are 64-bit and full enumeration beyond this is hopeless anyway.
pub const MAX_ENUM_CAP: usize = 40;
pub const DEFAULT_SUPPORT_CAP: usize = 1 << 22;

pub fn tail_enum(stakes: &Stakes, params: &Params) -> Result<TailResult> {
    tail_enum_capped(stakes, params, DEFAULT_ENUM_CAP)
}

/// Exhaustive sum of `p^|V| (1−p)^(n−|V|)` over every qualifying `V`.
pub fn tail_enum_capped(stakes: &Stakes, params: &Params, cap: usize) -> Result<TailResult> {
    let n = stakes.len();
    let cap = cap.min(MAX_ENUM_CAP);
    if n > cap {
        return Err(Error::size(format!("enumeration over {n} stakes"), cap));
    }
    let scaled = ScaledThreshold::new(stakes.coefficients(), &params.t);
    let mut counts = vec![0u64; n + 1];
    scaled.for_each_qualifying(|mask| counts[mask.count_ones() as usize] += 1);
    Ok(TailResult::exact(scaled::weight_by_size(&counts, &params.p), Method::Enumeration))
}

pub fn tail_dp(stakes: &Stakes, params: &Params) -> Result<TailResult> {
    tail_dp_capped(stakes, params, DEFAULT_SUPPORT_CAP)
}

/// Tail mass of the exact distribution built by [`distribution`].
pub fn tail_dp_capped(stakes: &Stakes, params: &Params, support_cap: usize) -> Result<TailResult> {
    let dist = distribution(stakes.coefficients(), &params.p, support_cap)?;
    let start = dist.partition_point(|(x, _)| x < &params.t);
    let value = dist[start..].iter().map(|(_, m)| m).sum();
    Ok(TailResult::exact(value, Method::Convolution))
}

/// The law of `Σ c_i β_i` as `(support point, mass)` pairs sorted by support
/// point. Points of zero mass are dropped; equal points are merged.
pub fn distribution(
    coefficients: &[Rational],
    p: &Rational,
    support_cap: usize,
) -> Result<Vec<(Rational, Rational)>> {
    let q = Rational::one() - p;
    let mut dist = vec![(Rational::zero(), Rational::one())];
    for c in coefficients {
        let stay = dist.iter().map(|(x, m)| (x.clone(), m * &q));
        let moved = dist.iter().map(|(x, m)| (x + c, m * p));
        let merged = merge_sorted(stay, moved);
        if merged.len() > support_cap {
            return Err(Error::size(format!("support of {} points", merged.len()), support_cap));
        }
        dist = merged;
    }
    Ok(dist)
}

fn merge_sorted(
    a: impl Iterator<Item = (Rational, Rational)>,
    b: impl Iterator<Item = (Rational, Rational)>,
) -> Vec<(Rational, Rational)> {
    let mut a = a.filter(|(_, m)| !m.is_zero()).peekable();
    let mut b = b.filter(|(_, m)| !m.is_zero()).peekable();
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some((xa, _)), Some((xb, _))) => {
                if xa <= xb {
                    a.next()
                } else {
                    b.next()
                }
            }
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => break,
        };
        let (x, m) = next.unwrap();
        match out.last_mut() {
            Some((last, mass)) if *last == x => *mass += m,
            _ => out.push((x, m)),
        }
    }
    out
}

/// Monte Carlo frequency estimate of the tail.
///
/// Uses ChaCha8 seeded with `seed`, so a seed reproduces the estimate
/// exactly for a given release. Each Bernoulli draw is exact when the
/// denominator of `p` fits in 64 bits; otherwise `p` is rounded up to a
/// multiple of `2^-64`. The threshold comparison is always exact.
pub fn tail_mc(stakes: &Stakes, params: &Params, samples: u64, seed: u64) -> Result<TailResult> {
    if samples == 0 {
        return Err(Error::Invalid("tail_mc needs at least one sample".into()));
    }
    let scaled = ScaledThreshold::new(stakes.coefficients(), &params.t);
    let coin = Coin::new(&params.p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = scaled.len();
    let mut hits = 0u64;
    let mut selected = Vec::with_capacity(n);
    for _ in 0..samples {
        selected.clear();
        selected.extend((0..n).filter(|_| coin.flip(&mut rng)));
        if scaled.reaches(selected.iter().copied()) {
            hits += 1;
        }
    }
    let value = Rational::new(BigInt::from(hits), BigInt::from(samples));
    let freq = hits as f64 / samples as f64;
    let stderr = (freq * (1.0 - freq) / samples as f64).sqrt();
    Ok(TailResult { value, method: Method::MonteCarlo, stderr: Some(stderr) })
}

enum Coin {
    /// Success iff a uniform draw from `0..den` is below `num`.
    Exact { num: u64, den: u64 },
    /// Success iff a uniform 64-bit word is below `cut` (`cut ≤ 2^64`).
    Dyadic { cut: u128 },
}

impl Coin {
    fn new(p: &Rational) -> Self {
        match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(num), Some(den)) => Coin::Exact { num, den },
            _ => {
                let scaled = p * Rational::from_integer(BigInt::from(1u128 << 64));
                let cut = scaled.ceil().to_integer().to_u128().unwrap_or(1u128 << 64);
                Coin::Dyadic { cut }
            }
        }
    }

    fn flip(&self, rng: &mut impl Rng) -> bool {
        match *self {
            Coin::Exact { num, den } => num > 0 && rng.gen_range(0..den) < num,
            Coin::Dyadic { cut } => u128::from(rng.gen::<u64>()) < cut,
        }
    }
}

/// `Σ_{j ≥ threshold} C(n,j) p^j (1−p)^(n−j)`, the upper tail of Bin(n, p).
pub fn binomial_upper_tail(n: usize, threshold: usize, p: &Rational) -> Rational {
    if threshold == 0 {
        return Rational::one();
    }
    if threshold > n {
        return Rational::zero();
    }
    let q = Rational::one() - p;
    // Sum the shorter side.
    if threshold > n / 2 {
        (threshold..=n).map(|j| binomial_term(n, j, p, &q)).sum()
    } else {
        Rational::one() - (0..threshold).map(|j| binomial_term(n, j, p, &q)).sum::<Rational>()
    }
}

fn binomial_term(n: usize, j: usize, p: &Rational, q: &Rational) -> Rational {
    Rational::from_integer(binomial(n, j)) * rational::pow(p, j) * rational::pow(q, n - j)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
