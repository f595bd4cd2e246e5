//! Enumeration of antichains, equivalently up-sets, on at most six points.
//!
//! Subsets of `{1..n}` are indexed `0..2^n`, so for `n ≤ 6` a whole family
//! fits in one `u64` truth table. An antichain is grown by adding subsets in
//! increasing index order, each allowed only if it is incomparable with
//! everything chosen so far; that visits every antichain exactly once.

use num_traits::One;

use super::{Mask, SubsetFamily};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub const MAX_ANTICHAIN_GROUND: usize = 6;

/// One antichain and the up-set it generates.
pub struct AntichainVisit<'a> {
    pub n: usize,
    /// Minimal elements, in increasing mask order.
    pub minimal: &'a [Mask],
    /// Bit `x` set iff subset `x` belongs to the up-set.
    pub truth_table: u64,
}

impl AntichainVisit<'_> {
    pub fn to_family(&self) -> SubsetFamily {
        let members = (0..1u64 << self.n).filter(|x| self.truth_table >> x & 1 == 1);
        SubsetFamily::new(self.n, members.map(|x| x as Mask)).expect("n ≤ 6")
    }

    pub fn size_profile(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        let mut table = self.truth_table;
        while table != 0 {
            let x = table.trailing_zeros();
            counts[x.count_ones() as usize] += 1;
            table &= table - 1;
        }
        counts
    }
}

/// Visits every antichain on `{1..n}` (the empty one included). With
/// `intersecting_only`, only antichains whose members pairwise intersect,
/// which are exactly the minimal elements of intersecting up-sets.
pub fn for_each_antichain(
    n: usize,
    intersecting_only: bool,
    mut visit: impl FnMut(&AntichainVisit),
) -> Result<()> {
    if n > MAX_ANTICHAIN_GROUND {
        return Err(Error::size(format!("antichain enumeration on {n} points"), MAX_ANTICHAIN_GROUND));
    }
    let size = 1usize << n;
    let mut conflict = vec![0u64; size];
    let mut supersets = vec![0u64; size];
    for a in 0..size {
        for b in 0..size {
            let comparable = a & b == a || a & b == b;
            let disjoint = a & b == 0;
            if comparable || (intersecting_only && disjoint) {
                conflict[a] |= 1 << b;
            }
            if a & b == a {
                supersets[a] |= 1 << b;
            }
        }
    }
    let mut allowed = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    if intersecting_only {
        // ∅ meets nothing, not even itself.
        allowed &= !1;
    }
    let walker = Walker { n, conflict, supersets };
    let mut chosen = Vec::new();
    walker.grow(0, allowed, 0, &mut chosen, &mut visit);
    Ok(())
}

struct Walker {
    n: usize,
    conflict: Vec<u64>,
    supersets: Vec<u64>,
}

impl Walker {
    fn grow(
        &self,
        start: u32,
        allowed: u64,
        table: u64,
        chosen: &mut Vec<Mask>,
        visit: &mut impl FnMut(&AntichainVisit),
    ) {
        visit(&AntichainVisit { n: self.n, minimal: chosen, truth_table: table });
        let mut candidates = if start >= 64 { 0 } else { allowed & (u64::MAX << start) };
        while candidates != 0 {
            let s = candidates.trailing_zeros();
            candidates &= candidates - 1;
            chosen.push(s as Mask);
            self.grow(
                s + 1,
                allowed & !self.conflict[s as usize],
                table | self.supersets[s as usize],
                chosen,
                visit,
            );
            chosen.pop();
        }
    }
}

/// The heaviest intersecting families on `{1..n}` under `p(V) = p^|V|(1−p)^(n−|V|)`.
///
/// Only intersecting up-sets are scanned: the up-closure of an intersecting
/// family is still intersecting and weighs at least as much, so the maximum
/// over all intersecting families is attained among them.
pub fn max_intersecting_family(n: usize, p: &Rational) -> Result<(Rational, Vec<SubsetFamily>)> {
    let q = Rational::one() - p;
    let size_weight: Vec<Rational> =
        (0..=n).map(|j| rational::pow(p, j) * rational::pow(&q, n - j)).collect();
    let mut best: Option<Rational> = None;
    let mut winners: Vec<SubsetFamily> = Vec::new();
    for_each_antichain(n, true, |visit| {
        let w: Rational = visit
            .size_profile()
            .iter()
            .zip(&size_weight)
            .map(|(c, w)| Rational::from_integer((*c).into()) * w)
            .sum();
        match &best {
            Some(b) if w < *b => {}
            Some(b) if w == *b => winners.push(visit.to_family()),
            _ => {
                best = Some(w);
                winners = vec![visit.to_family()];
            }
        }
    })?;
    Ok((best.expect("the empty antichain is always visited"), winners))
}
