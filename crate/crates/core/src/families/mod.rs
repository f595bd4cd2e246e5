//! Set-family view of the tail probability.
//!
//! For stakes `c` on ground set `{1..n}`, the threshold family
//! `F = {V : Σ_{i∈V} c_i ≥ t}` determines the tail completely:
//! `P(S ≥ t) = Σ_{V∈F} p^|V| (1−p)^(n−|V|)`. This module builds such
//! families, measures them, checks their combinatorics (intersecting,
//! matching number), decides which up-sets arise this way and verifies the
//! interval and measure lemmas used in the optimality arguments.
//!
//! Members are bitmasks: bit `i` stands for ground element `i + 1`.

mod intervals;
mod lp;
mod realize;
mod upsets;

use std::collections::HashMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::Stakes;
use crate::rational::{self, Rational};
use crate::scaled::{self, ScaledThreshold};

pub use intervals::{
    scan_cross_intersecting, scan_interval_union, verify_counting_intersection,
    verify_cross_intersecting, verify_interval_union, verify_measure_intersection, IntervalFamily,
    ScanReport,
};
pub use lp::{LinearProgram, LpOutcome, Relation};
pub use realize::{
    enumerate_threshold_families, enumerate_threshold_families_capped, realizable,
    realizable_with, RealizabilityWitness, DEFAULT_UPSET_CAP, MAX_REALIZE_GROUND,
};
pub use upsets::{for_each_antichain, max_intersecting_family, AntichainVisit, MAX_ANTICHAIN_GROUND};

pub type Mask = u32;

pub const MAX_GROUND: usize = 24;

/// A family of subsets of `{1..n}`, kept sorted and free of duplicates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    n: usize,
    members: Vec<Mask>,
}

impl SubsetFamily {
    pub fn new(n: usize, members: impl IntoIterator<Item = Mask>) -> Result<Self> {
        check_ground(n)?;
        let full = full_mask(n);
        let mut members: Vec<Mask> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| **m & !full != 0) {
            return Err(Error::Invalid(format!("member {bad:#b} is not a subset of {{1..{n}}}")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SubsetFamily { n, members })
    }

    /// Builds a family from 1-based index lists.
    pub fn from_sets<S: AsRef<[usize]>>(n: usize, sets: &[S]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for set in sets {
            let mut mask = 0;
            for &i in set.as_ref() {
                if i == 0 || i > n {
                    return Err(Error::Invalid(format!("element {i} is outside {{1..{n}}}")));
                }
                mask |= 1 << (i - 1);
            }
            masks.push(mask);
        }
        Self::new(n, masks)
    }

    fn from_predicate(n: usize, keep: impl Fn(Mask) -> bool) -> Result<Self> {
        check_ground(n)?;
        Ok(SubsetFamily { n, members: (0..=full_mask(n)).filter(|m| keep(*m)).collect() })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn all_subsets(n: usize) -> Result<Self> {
        Self::from_predicate(n, |_| true)
    }

    /// `F_1`: every set containing element 1.
    pub fn star(n: usize) -> Result<Self> {
        Self::from_predicate(n, |m| m & 1 == 1)
    }

    /// `F_{>n/2}`: every set with more than `n/2` elements.
    pub fn majority(n: usize) -> Result<Self> {
        Self::from_predicate(n, |m| 2 * m.count_ones() as usize > n)
    }

    /// Every set with at least `size` elements.
    pub fn at_least(n: usize, size: usize) -> Result<Self> {
        Self::from_predicate(n, |m| m.count_ones() as usize >= size)
    }

    /// The smallest up-set containing every generator.
    pub fn up_closure(n: usize, generators: &[Mask]) -> Result<Self> {
        check_ground(n)?;
        let up = up_indicator(n, generators);
        Ok(SubsetFamily { n, members: indicator_members(&up) })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// Superset-closed within `{1..n}`.
    pub fn is_up_set(&self) -> bool {
        let full = full_mask(self.n);
        self.members.iter().all(|&m| {
            let mut missing = full & !m;
            while missing != 0 {
                let bit = missing & missing.wrapping_neg();
                if !self.contains(m | bit) {
                    return false;
                }
                missing &= missing - 1;
            }
            true
        })
    }

    /// Members with no other member as a proper subset.
    pub fn minimal_members(&self) -> Vec<Mask> {
        let up = up_indicator(self.n, &self.members);
        self.members
            .iter()
            .copied()
            .filter(|&m| scaled::ones(u64::from(m)).all(|i| !up[(m & !(1 << i)) as usize]))
            .collect()
    }

    /// For an up-set: the non-members whose every one-element extension is a member.
    pub fn maximal_non_members(&self) -> Vec<Mask> {
        let full = full_mask(self.n);
        (0..=full)
            .filter(|&w| !self.contains(w))
            .filter(|&w| scaled::ones(u64::from(full & !w)).all(|i| self.contains(w | 1 << i)))
            .collect()
    }

    /// Members as sorted 1-based index lists, in lexicographic order.
    pub fn to_index_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&m| scaled::ones(u64::from(m)).map(|i| i + 1).collect())
            .collect();
        sets.sort();
        sets
    }

    /// Number of members of each size `0..=n`.
    pub fn size_profile(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for m in &self.members {
            counts[m.count_ones() as usize] += 1;
        }
        counts
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetFamily(n={}, {:?})", self.n, self.to_index_sets())
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    n: usize,
    members: Vec<Vec<usize>>,
}

impl Serialize for SubsetFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson { n: self.n, members: self.to_index_sets() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SubsetFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FamilyJson::deserialize(d)?;
        SubsetFamily::from_sets(raw.n, &raw.members).map_err(serde::de::Error::custom)
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::size(format!("ground set of size {n}"), MAX_GROUND));
    }
    Ok(())
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        Mask::MAX >> (32 - n)
    }
}

/// `up[x]` is true iff some generator is a subset of `x` (zeta transform).
fn up_indicator(n: usize, generators: &[Mask]) -> Vec<bool> {
    let mut up = vec![false; 1 << n];
    for &g in generators {
        up[g as usize] = true;
    }
    for i in 0..n {
        let bit = 1 << i;
        for x in 0..up.len() {
            if x & bit != 0 && up[x ^ bit] {
                up[x] = true;
            }
        }
    }
    up
}

fn indicator_members(up: &[bool]) -> Vec<Mask> {
    up.iter().enumerate().filter(|(_, b)| **b).map(|(m, _)| m as Mask).collect()
}

/// `{V ⊆ {1..n} : Σ_{i∈V} c_i ≥ t}` for the (non-zero) stakes.
pub fn threshold_family(stakes: &Stakes, t: &Rational) -> Result<SubsetFamily> {
    threshold_family_weights(stakes.coefficients(), t)
}

/// Threshold family for an arbitrary non-negative weight per ground element.
pub fn threshold_family_weights(weights: &[Rational], t: &Rational) -> Result<SubsetFamily> {
    let n = weights.len();
    check_ground(n)?;
    let scaled = ScaledThreshold::new(weights, t);
    let mut members = Vec::new();
    scaled.for_each_qualifying(|m| members.push(m as Mask));
    members.sort_unstable();
    Ok(SubsetFamily { n, members })
}

/// `p(F) = Σ_{V∈F} p^|V| (1−p)^(n−|V|)`.
pub fn family_weight(family: &SubsetFamily, p: &Rational) -> Rational {
    scaled::weight_by_size(&family.size_profile(), p)
}

/// Whether every two members (not necessarily distinct) share an element;
/// in particular a family containing `∅` is never intersecting.
pub fn is_intersecting(family: &SubsetFamily) -> bool {
    let m = family.members.len() as u128;
    let n = family.n;
    if m * m <= (n as u128 + 1) << n {
        let members = &family.members;
        members.iter().enumerate().all(|(i, a)| members[i..].iter().all(|b| a & b != 0))
    } else {
        let up = up_indicator(n, &family.members);
        let full = full_mask(n);
        family.members.iter().all(|&v| !up[(full & !v) as usize])
    }
}

/// `ν(F)`: the largest number of pairwise disjoint members.
pub fn matching_number(family: &SubsetFamily) -> usize {
    // ∅ is disjoint from every member, itself counted once.
    let (extra, rest) = match family.members.first() {
        Some(0) => (1, SubsetFamily { n: family.n, members: family.members[1..].to_vec() }),
        _ => (0, family.clone()),
    };
    // Replacing members by minimal ones preserves disjointness.
    let minimal = rest.minimal_members();
    let mut memo = HashMap::new();
    extra + max_disjoint(full_mask(family.n), &minimal, &mut memo)
}

/// Branch on the lowest usable element: either some member covers it or no
/// chosen member does.
fn max_disjoint(avail: Mask, sets: &[Mask], memo: &mut HashMap<Mask, usize>) -> usize {
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let fitting: Vec<Mask> = sets.iter().copied().filter(|s| s & !avail == 0).collect();
    let best = if fitting.is_empty() {
        0
    } else {
        let union = fitting.iter().fold(0, |acc, s| acc | s);
        let low = union & union.wrapping_neg();
        let mut best = max_disjoint(avail & !low, &fitting, memo);
        let min_size = fitting.iter().map(|s| s.count_ones()).min().unwrap_or(1).max(1);
        let bound = (avail.count_ones() / min_size) as usize;
        for s in fitting.iter().filter(|s| *s & low != 0) {
            if best >= bound {
                break;
            }
            best = best.max(1 + max_disjoint(avail & !s, &fitting, memo));
        }
        best
    };
    memo.insert(avail, best);
    best
}

/// The maximizer(s) of `p(F)` over intersecting families on `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FishburnMax {
    pub families: Vec<SubsetFamily>,
    pub weight: Rational,
    /// Both `F_1` and `F_{>n/2}` are returned and weigh the same (`p = 1/2`, odd `n`).
    pub tie: bool,
}

/// `F_1` for `p ≤ 1/2`, `F_{>n/2}` for `p ≥ 1/2` and odd `n`.
pub fn fishburn_max(n: usize, p: &Rational) -> Result<FishburnMax> {
    if n == 0 {
        return Err(Error::Invalid("fishburn_max needs n ≥ 1".into()));
    }
    if !rational::in_unit_interval(p) {
        return Err(Error::Invalid(format!("p = {p} is outside [0, 1]")));
    }
    let half = rational::ratio(1, 2);
    let odd = n % 2 == 1;
    let families = if *p < half || (*p == half && !odd) {
        vec![SubsetFamily::star(n)?]
    } else if *p > half && !odd {
        return Err(Error::regime(format!(
            "no stated maximizer for p = {p} > 1/2 with even n = {n}"
        )));
    } else if *p > half {
        vec![SubsetFamily::majority(n)?]
    } else {
        let star = SubsetFamily::star(n)?;
        let majority = SubsetFamily::majority(n)?;
        if star == majority {
            vec![star]
        } else {
            vec![star, majority]
        }
    };
    let weight = family_weight(&families[0], p);
    debug_assert!(families.iter().all(|f| family_weight(f, p) == weight));
    let tie = families.len() > 1;
    Ok(FishburnMax { families, weight, tie })
}

/// `1 − (1−p)^k`, the weight of `F_k = {V : V ∩ {1..k} ≠ ∅}`; used in tests
/// and reports comparing against bold play.
pub fn star_k_weight(k: usize, p: &Rational) -> Rational {
    Rational::one() - rational::pow(&(Rational::one() - p), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, ratio};

    fn stakes(list: &str) -> Stakes {
        Stakes::new(Stakes::parse_list(list).unwrap()).unwrap()
    }

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn threshold_family_examples() {
        let f = threshold_family(&stakes("1"), &r("0.6")).unwrap();
        assert_eq!(f.to_index_sets(), vec![vec![1]]);

        let f = threshold_family(&stakes("1/2,1/4,1/4"), &r("1/2")).unwrap();
        assert_eq!(
            f.to_index_sets(),
            vec![vec![1], vec![1, 2], vec![1, 2, 3], vec![1, 3], vec![2, 3]]
        );
        assert!(f.is_up_set());

        let f = threshold_family(&stakes("1/3,1/3,1/3"), &r("0.6")).unwrap();
        assert_eq!(f, SubsetFamily::at_least(3, 2).unwrap());
    }

    #[test]
    fn family_weight_examples() {
        for p in ["0", "1/3", "5/7", "1"] {
            assert!(family_weight(&SubsetFamily::all_subsets(4).unwrap(), &r(p)).is_one());
        }
        assert_eq!(family_weight(&SubsetFamily::star(3).unwrap(), &r("1/3")), ratio(1, 3));
        assert_eq!(family_weight(&SubsetFamily::at_least(3, 2).unwrap(), &r("3/5")), ratio(81, 125));
    }

    #[test]
    fn intersecting_examples() {
        for n in 1..=6 {
            assert!(is_intersecting(&SubsetFamily::star(n).unwrap()));
        }
        assert!(!is_intersecting(&SubsetFamily::from_sets(2, &[[1], [2]]).unwrap()));
        assert!(!is_intersecting(&SubsetFamily::new(2, [0]).unwrap()));
        assert!(is_intersecting(&SubsetFamily::empty(3).unwrap()));
        let f = threshold_family(&stakes("2/5,3/10,3/10"), &r("0.51")).unwrap();
        assert!(is_intersecting(&f));
    }

    #[test]
    fn intersecting_large_path_agrees_with_pairwise() {
        // big enough to take the zeta-transform branch
        let f = SubsetFamily::at_least(12, 7).unwrap();
        assert!(is_intersecting(&f));
        let f = SubsetFamily::at_least(12, 6).unwrap();
        assert!(!is_intersecting(&f));
    }

    #[test]
    fn matching_number_examples() {
        assert_eq!(matching_number(&SubsetFamily::empty(3).unwrap()), 0);
        assert_eq!(matching_number(&SubsetFamily::from_sets(3, &[[1], [2], [3]]).unwrap()), 3);
        let f = threshold_family(&stakes("2/5,3/10,3/10"), &r("3/10")).unwrap();
        assert_eq!(matching_number(&f), 3);
        assert_eq!(matching_number(&SubsetFamily::at_least(7, 2).unwrap()), 3);
        assert_eq!(matching_number(&SubsetFamily::new(2, [0, 1]).unwrap()), 2);
    }

    #[test]
    fn fishburn_examples() {
        let m = fishburn_max(4, &r("2/5")).unwrap();
        assert_eq!(m.families, vec![SubsetFamily::star(4).unwrap()]);
        assert_eq!(m.weight, ratio(2, 5));

        let m = fishburn_max(3, &r("3/5")).unwrap();
        assert_eq!(m.families, vec![SubsetFamily::at_least(3, 2).unwrap()]);
        assert_eq!(m.weight, ratio(81, 125));
        assert!(m.weight > ratio(3, 5));

        let m = fishburn_max(1, &r("0.9")).unwrap();
        assert_eq!(m.families[0].to_index_sets(), vec![vec![1]]);
        let m = fishburn_max(1, &r("1/2")).unwrap();
        assert_eq!(m.families.len(), 1);

        let m = fishburn_max(5, &r("1/2")).unwrap();
        assert!(m.tie);
        assert_eq!(m.weight, ratio(1, 2));

        assert!(matches!(fishburn_max(4, &r("3/5")), Err(Error::Regime(_))));
    }

    #[test]
    fn minimal_and_maximal_elements() {
        let f = SubsetFamily::at_least(3, 2).unwrap();
        assert_eq!(f.minimal_members(), vec![0b011, 0b101, 0b110]);
        assert_eq!(f.maximal_non_members(), vec![0b001, 0b010, 0b100]);
        let closure = SubsetFamily::up_closure(3, &[0b011, 0b101, 0b110]).unwrap();
        assert_eq!(closure, f);
    }

    #[test]
    fn json_form() {
        let f = threshold_family(&stakes("1/2,1/4,1/4"), &r("1/2")).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"n":3,"members":[[1],[1,2],[1,2,3],[1,3],[2,3]]}"#);
        let back: SubsetFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<SubsetFamily>(r#"{"n":2,"members":[[3]]}"#).is_err());
    }

    #[test]
    fn ground_cap() {
        assert!(matches!(SubsetFamily::empty(25), Err(Error::Size { cap: 24, .. })));
    }
}
