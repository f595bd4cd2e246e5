//! Cyclic intervals in `Z/nZ` and brute-force checks of the counting
//! lemmas behind the favorable-odds argument:
//!
//! * a family of `k` length-`a` intervals whose union is a proper subset
//!   covers at least `k + a − 1` points;
//! * if `k` length-`k` intervals cross-intersect a family `G` of length-`a`
//!   intervals with `a ≤ n − k`, then `|G| ≤ a`;
//! * `k` sets of measure at least `t` in a space of total mass `b` meet in
//!   measure at least `k·t − (k−1)·b`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const MAX_MODULUS: usize = 64;

/// Intervals `[start, start + len)` taken mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalFamily {
    pub modulus: usize,
    /// `(start, len)` pairs.
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalFamily {
    pub fn new(modulus: usize, intervals: Vec<(usize, usize)>) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::size(format!("modulus {modulus}"), MAX_MODULUS));
        }
        for &(start, len) in &intervals {
            if start >= modulus || len == 0 || len >= modulus {
                return Err(Error::Invalid(format!(
                    "[{start}, {start}+{len}) is not an interval of length 0 < a < {modulus}"
                )));
            }
        }
        Ok(IntervalFamily { modulus, intervals })
    }

    /// Intervals of a common length starting at each of `starts`.
    pub fn uniform(modulus: usize, len: usize, starts: &[usize]) -> Result<Self> {
        Self::new(modulus, starts.iter().map(|&s| (s, len)).collect())
    }

    fn mask(&self, (start, len): (usize, usize)) -> u64 {
        (start..start + len).fold(0, |acc, i| acc | 1 << (i % self.modulus))
    }

    pub fn union(&self) -> u64 {
        self.intervals.iter().fold(0, |acc, iv| acc | self.mask(*iv))
    }

    /// Number of distinct intervals.
    pub fn distinct(&self) -> usize {
        let mut ivs = self.intervals.clone();
        ivs.sort_unstable();
        ivs.dedup();
        ivs.len()
    }

    fn all_of_length(&self, len: usize) -> bool {
        self.intervals.iter().all(|&(_, l)| l == len)
    }
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Checks `|⋃F| ≥ k + a − 1` for `k` distinct length-`a` intervals whose
/// union is a proper subset of `Z/nZ`.
pub fn verify_interval_union(n: usize, a: usize, family: &IntervalFamily) -> Result<bool> {
    if family.modulus != n || !family.all_of_length(a) {
        return Err(Error::Invalid(format!("expected intervals of length {a} in Z/{n}Z")));
    }
    let union = family.union();
    if union == full(n) {
        return Err(Error::regime("the union covers all of Z/nZ"));
    }
    let k = family.distinct();
    Ok(union.count_ones() as usize + 1 >= k + a)
}

/// Checks `|G| ≤ a` for a family `G` of length-`a` intervals cross-intersecting
/// `k` distinct length-`k` intervals, `a ≤ n − k`.
///
/// When `f` is `None`, every family of `k` length-`k` intervals that
/// cross-intersects `G` is tried.
pub fn verify_cross_intersecting(
    n: usize,
    k: usize,
    a: usize,
    g: &IntervalFamily,
    f: Option<&IntervalFamily>,
) -> Result<bool> {
    if k == 0 || k >= n || a == 0 || a + k > n {
        return Err(Error::Invalid(format!("need 1 ≤ k < n and 1 ≤ a ≤ n − k (n={n}, k={k}, a={a})")));
    }
    if g.modulus != n || !g.all_of_length(a) {
        return Err(Error::Invalid(format!("G must consist of length-{a} intervals in Z/{n}Z")));
    }
    let g_masks: Vec<u64> = g.intervals.iter().map(|iv| g.mask(*iv)).collect();
    let holds = g.distinct() <= a;
    match f {
        Some(f) => {
            if f.modulus != n || !f.all_of_length(k) || f.distinct() != k {
                return Err(Error::Invalid(format!("F must be {k} distinct length-{k} intervals in Z/{n}Z")));
            }
            let crossing = f
                .intervals
                .iter()
                .all(|iv| g_masks.iter().all(|gm| f.mask(*iv) & gm != 0));
            if !crossing {
                return Err(Error::Invalid("F and G are not cross-intersecting".into()));
            }
            Ok(holds)
        }
        None => {
            // The bound only bites if some admissible F exists.
            let interval = |s: usize| (s..s + k).fold(0u64, |acc, i| acc | 1 << (i % n));
            let crossing: Vec<usize> =
                (0..n).filter(|&s| g_masks.iter().all(|gm| interval(s) & gm != 0)).collect();
            Ok(crossing.len() < k || holds)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub checked: u64,
    pub counterexamples: Vec<IntervalFamily>,
}

/// All families of at most `max_members` distinct length-`a` intervals in
/// `Z/nZ`, `2 ≤ n ≤ n_max`, `1 ≤ a ≤ n − 2`, with proper union.
pub fn scan_interval_union(n_max: usize, max_members: usize) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    for n in 3..=n_max {
        for a in 1..=n - 2 {
            for starts in start_sets(n, max_members) {
                let family = IntervalFamily::uniform(n, a, &starts)?;
                if family.union() == full(n) {
                    continue;
                }
                report.checked += 1;
                if !verify_interval_union(n, a, &family)? {
                    report.counterexamples.push(family);
                }
            }
        }
    }
    Ok(report)
}

/// For every `n ≤ n_max`, `k`, `a ≤ n − k` and every family `F` of `k`
/// length-`k` intervals, the largest `G` cross-intersecting `F` (all
/// length-`a` intervals meeting every member of `F`) has at most `a`
/// members. Counterexamples are reported as the offending `F`.
pub fn scan_cross_intersecting(n_max: usize) -> Result<ScanReport> {
    let mut report = ScanReport::default();
    for n in 2..=n_max {
        for k in 1..n {
            for a in 1..=n - k {
                for starts in start_sets_exact(n, k) {
                    let f = IntervalFamily::uniform(n, k, &starts)?;
                    let f_masks: Vec<u64> = f.intervals.iter().map(|iv| f.mask(*iv)).collect();
                    let g_starts: Vec<usize> = (0..n)
                        .filter(|&c| {
                            let m = (c..c + a).fold(0u64, |acc, i| acc | 1 << (i % n));
                            f_masks.iter().all(|fm| fm & m != 0)
                        })
                        .collect();
                    let g = IntervalFamily::uniform(n, a, &g_starts)?;
                    report.checked += 1;
                    if !verify_cross_intersecting(n, k, a, &g, Some(&f))? {
                        report.counterexamples.push(f);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Non-empty sets of at most `max` distinct starts in `0..n`, ascending.
fn start_sets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (1..=max.min(n)).flat_map(|k| start_sets_exact(n, k)).collect()
}

fn start_sets_exact(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Checks `μ(⋂ V_i) ≥ k·t − (k−1)·μ(V)` where `μ` puts `weights[x]` on
/// point `x` and each `V_i` (a bitmask over the points) has `μ(V_i) ≥ t`.
pub fn verify_measure_intersection(weights: &[Rational], sets: &[u64], t: &Rational) -> Result<bool> {
    if weights.len() > MAX_MODULUS {
        return Err(Error::size(format!("measure space of {} points", weights.len()), MAX_MODULUS));
    }
    if sets.is_empty() {
        return Err(Error::Invalid("need at least one set".into()));
    }
    let measure = |mask: u64| -> Rational {
        weights.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w).sum()
    };
    let total = measure(full(weights.len()));
    for &s in sets {
        if s & !full(weights.len()) != 0 {
            return Err(Error::Invalid("set reaches outside the space".into()));
        }
        if measure(s) < *t {
            return Err(Error::Invalid(format!("a set has measure {} < t = {t}", measure(s))));
        }
    }
    let k = Rational::from_integer(sets.len().into());
    let meet = sets.iter().fold(full(weights.len()), |acc, s| acc & s);
    let bound = &k * t - (k - Rational::from_integer(1.into())) * total;
    Ok(measure(meet) >= bound)
}

/// [`verify_measure_intersection`] for counting measure on `ground` points.
pub fn verify_counting_intersection(ground: usize, sets: &[u64], t: usize) -> Result<bool> {
    let ones = vec![Rational::from_integer(1.into()); ground];
    verify_measure_intersection(&ones, sets, &Rational::from_integer(t.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_examples() {
        let f = IntervalFamily::uniform(10, 3, &[0, 5]).unwrap();
        assert_eq!(f.union().count_ones(), 6);
        assert!(verify_interval_union(10, 3, &f).unwrap());
        // one interval: equality 3 = 1 + 3 − 1
        let f = IntervalFamily::uniform(10, 3, &[8]).unwrap();
        assert!(verify_interval_union(10, 3, &f).unwrap());
        // wraps around 0
        assert_eq!(f.union(), 1 | 1 << 8 | 1 << 9);
    }

    #[test]
    fn covering_union_is_a_regime_error() {
        let f = IntervalFamily::uniform(4, 2, &[0, 2]).unwrap();
        assert!(matches!(verify_interval_union(4, 2, &f), Err(Error::Regime(_))));
    }

    #[test]
    fn union_scan_finds_nothing() {
        let report = scan_interval_union(9, 3).unwrap();
        assert!(report.checked > 1000);
        assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
    }

    #[test]
    fn cross_intersecting_examples() {
        // n = 7, k = 2, a = 3: F = {[0,2), [1,3)} meets every [c,c+3) with c ∈ {6, 0, 1}
        let f = IntervalFamily::uniform(7, 2, &[0, 1]).unwrap();
        let g = IntervalFamily::uniform(7, 3, &[6, 0, 1]).unwrap();
        assert!(verify_cross_intersecting(7, 2, 3, &g, Some(&f)).unwrap());
        assert!(verify_cross_intersecting(7, 2, 3, &g, None).unwrap());

        let empty = IntervalFamily::uniform(7, 3, &[]).unwrap();
        assert!(verify_cross_intersecting(7, 2, 3, &empty, Some(&f)).unwrap());

        let far = IntervalFamily::uniform(7, 3, &[3]).unwrap();
        assert!(verify_cross_intersecting(7, 2, 3, &far, Some(&f)).is_err());
        assert!(verify_cross_intersecting(7, 2, 6, &g, None).is_err());
    }

    #[test]
    fn cross_intersecting_scan_finds_nothing() {
        let report = scan_cross_intersecting(9).unwrap();
        assert!(report.checked > 100);
        assert!(report.counterexamples.is_empty(), "{:?}", report.counterexamples);
    }

    #[test]
    fn measure_examples() {
        // two 8-subsets of a 10-set meet in at least 6 points
        let a = 0b00_1111_1111u64;
        let b = 0b11_1111_1100u64;
        assert!(verify_counting_intersection(10, &[a, b], 8).unwrap());
        assert_eq!((a & b).count_ones(), 6);
        assert!(verify_counting_intersection(10, &[a], 8).unwrap());
        assert!(verify_counting_intersection(10, &[a, 0b1], 8).is_err());
    }
}
