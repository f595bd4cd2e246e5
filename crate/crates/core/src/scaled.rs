//! Integer rescaling of a weight vector and threshold.
//!
//! Multiplying every weight and the threshold by the lcm of their
//! denominators turns each exact comparison `Σ_{i∈V} c_i ≥ t` into an
//! integer comparison. When that lcm fits in `i128` the fast path is used;
//! otherwise the same code runs over `BigInt`.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug)]
pub(crate) enum ScaledThreshold {
    Small { weights: Vec<i128>, threshold: i128 },
    Big { weights: Vec<BigInt>, threshold: BigInt },
}

impl ScaledThreshold {
    pub(crate) fn new(weights: &[Rational], threshold: &Rational) -> Self {
        let mut lcm = threshold.denom().clone();
        for w in weights {
            lcm = lcm.lcm(w.denom());
        }
        let scale = |r: &Rational| r.numer() * (&lcm / r.denom());
        let big_weights: Vec<BigInt> = weights.iter().map(scale).collect();
        let big_threshold = scale(threshold);

        // Every partial sum lies between 0 and the total; bound both ends.
        let total: BigInt = big_weights.iter().sum();
        let fits = |x: &BigInt| x.to_i128().is_some_and(|v| v.checked_mul(2).is_some());
        if fits(&total) && fits(&big_threshold) && big_weights.iter().all(fits) {
            ScaledThreshold::Small {
                weights: big_weights.iter().map(|w| w.to_i128().unwrap()).collect(),
                threshold: big_threshold.to_i128().unwrap(),
            }
        } else {
            ScaledThreshold::Big { weights: big_weights, threshold: big_threshold }
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            ScaledThreshold::Small { weights, .. } => weights.len(),
            ScaledThreshold::Big { weights, .. } => weights.len(),
        }
    }

    /// Whether the subset encoded by `mask` (bit `i` = index `i`) reaches the threshold.
    #[cfg(test)]
    pub(crate) fn qualifies(&self, mask: u64) -> bool {
        self.reaches(ones(mask))
    }

    /// Whether the selected indices together reach the threshold.
    pub(crate) fn reaches(&self, selected: impl Iterator<Item = usize>) -> bool {
        match self {
            ScaledThreshold::Small { weights, threshold } => {
                let sum: i128 = selected.map(|i| weights[i]).sum();
                sum >= *threshold
            }
            ScaledThreshold::Big { weights, threshold } => {
                let sum: BigInt = selected.map(|i| &weights[i]).sum();
                &sum >= threshold
            }
        }
    }

    /// Calls `visit` with every qualifying mask over all `2^n` subsets, in
    /// Gray-code order so each step costs one addition.
    pub(crate) fn for_each_qualifying(&self, visit: impl FnMut(u64)) {
        match self {
            ScaledThreshold::Small { weights, threshold } => gray_walk(weights, threshold, visit),
            ScaledThreshold::Big { weights, threshold } => gray_walk(weights, threshold, visit),
        }
    }
}

fn gray_walk<T>(weights: &[T], threshold: &T, mut visit: impl FnMut(u64))
where
    T: Clone + Zero + PartialOrd + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
{
    let n = weights.len();
    let mut sum = T::zero();
    let mut gray = 0u64;
    if sum >= *threshold {
        visit(0);
    }
    for step in 1..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        gray ^= 1 << bit;
        if gray & (1 << bit) != 0 {
            sum += &weights[bit];
        } else {
            sum -= &weights[bit];
        }
        if sum >= *threshold {
            visit(gray);
        }
    }
}

/// Indices of the set bits of `mask`, ascending.
pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

/// `Σ_j counts[j] p^j (1−p)^(n−j)`, the probability of a family given the
/// number of its members of each size.
pub(crate) fn weight_by_size(counts: &[u64], p: &Rational) -> Rational {
    let n = counts.len().saturating_sub(1);
    let q = Rational::one() - p;
    let mut p_pow = vec![Rational::one(); n + 1];
    let mut q_pow = vec![Rational::one(); n + 1];
    for j in 1..=n {
        p_pow[j] = &p_pow[j - 1] * p;
        q_pow[j] = &q_pow[j - 1] * &q;
    }
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(j, c)| Rational::from_integer(BigInt::from(*c)) * &p_pow[j] * &q_pow[n - j])
        .sum()
}
