//! Which up-sets are threshold families, and with which stakes.
//!
//! An up-set `F` on `{1..n}` is realizable at threshold `t` when some
//! `c ≥ 0` with `Σ c = 1` puts every member at or above `t` and every
//! non-member strictly below it. Strictness is handled by maximizing a
//! margin `δ` on the non-members: `F` is realizable iff the optimal `δ` is
//! positive. Because `c ≥ 0`, only minimal members and maximal non-members
//! need constraints.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lp::{LinearProgram, LpOutcome, Relation};
use super::upsets::{for_each_antichain, MAX_ANTICHAIN_GROUND};
use super::{Mask, SubsetFamily};
use crate::error::{Error, Result};
use crate::model::Stakes;
use crate::rational::{self, Rational};

pub const MAX_REALIZE_GROUND: usize = 12;
/// Up-set counts explode past five points (7581 at n = 5, ~7.8 million at n = 6).
pub const DEFAULT_UPSET_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityWitness {
    /// Canonical form of the realizing stakes, if any.
    pub stakes: Option<Stakes>,
    /// The realizing weight of each ground element `1..n`, in ground order;
    /// empty when not realizable.
    #[serde(with = "rational::serde_vec_str")]
    pub coefficients: Vec<Rational>,
    /// Smallest gap `t − Σ_{i∈W} c_i` over non-members `W`, maximized.
    #[serde(with = "rational::serde_str")]
    pub margin: Rational,
}

impl RealizabilityWitness {
    pub fn is_realizable(&self) -> bool {
        self.stakes.is_some()
    }

    fn none() -> Self {
        RealizabilityWitness { stakes: None, coefficients: Vec::new(), margin: Rational::zero() }
    }
}

/// Decides realizability by non-increasing stakes `c_1 ≥ … ≥ c_n`.
pub fn realizable(family: &SubsetFamily, t: &Rational) -> Result<RealizabilityWitness> {
    realizable_with(family, t, true)
}

/// With `ordered = false` the stakes may weigh ground elements in any
/// order, so every permutation of a threshold family is accepted.
pub fn realizable_with(family: &SubsetFamily, t: &Rational, ordered: bool) -> Result<RealizabilityWitness> {
    let n = family.ground_size();
    if n > MAX_REALIZE_GROUND {
        return Err(Error::size(format!("realizability on {n} points"), MAX_REALIZE_GROUND));
    }
    if !family.is_up_set() {
        return Err(Error::Structure("realizability needs an up-set".into()));
    }
    Ok(solve_margin(n, &family.minimal_members(), &family.maximal_non_members(), t, ordered))
}

fn solve_margin(n: usize, minimal: &[Mask], maximal_out: &[Mask], t: &Rational, ordered: bool) -> RealizabilityWitness {
    let one = Rational::one;
    let zero = Rational::zero;
    let delta = n;
    let mut lp = LinearProgram::new(n + 1);

    let mut objective = vec![zero(); n + 1];
    objective[delta] = one();
    lp.maximize(objective);

    let mut total = vec![one(); n + 1];
    total[delta] = zero();
    lp.constrain(total, Relation::Eq, one());

    if ordered {
        for i in 0..n.saturating_sub(1) {
            let mut row = vec![zero(); n + 1];
            row[i] = one();
            row[i + 1] = -one();
            lp.constrain(row, Relation::Ge, zero());
        }
    }
    let indicator = |mask: Mask| -> Vec<Rational> {
        (0..=n).map(|i| if i < n && mask >> i & 1 == 1 { one() } else { zero() }).collect()
    };
    for &v in minimal {
        lp.constrain(indicator(v), Relation::Ge, t.clone());
    }
    for &w in maximal_out {
        let mut row = indicator(w);
        row[delta] = one();
        lp.constrain(row, Relation::Le, t.clone());
    }
    let mut cap = vec![zero(); n + 1];
    cap[delta] = one();
    lp.constrain(cap, Relation::Le, one());

    match lp.solve() {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.truncate(n);
            let stakes = Stakes::new(x.clone()).expect("LP enforces a convex combination");
            RealizabilityWitness { stakes: Some(stakes), coefficients: x, margin: value }
        }
        _ => RealizabilityWitness::none(),
    }
}

pub fn enumerate_threshold_families(
    n: usize,
    t: &Rational,
    canonical_only: bool,
) -> Result<Vec<(SubsetFamily, RealizabilityWitness)>> {
    enumerate_threshold_families_capped(n, t, canonical_only, DEFAULT_UPSET_CAP)
}

/// Every up-set on `{1..n}` that is a threshold family at `t`, with a witness.
///
/// With `canonical_only`, one representative per permutation class: the
/// families realized by non-increasing stakes. Those are always shifted
/// (moving an element to a smaller index keeps a set in the family), which
/// is checked before the LP runs.
pub fn enumerate_threshold_families_capped(
    n: usize,
    t: &Rational,
    canonical_only: bool,
    cap: usize,
) -> Result<Vec<(SubsetFamily, RealizabilityWitness)>> {
    let cap = cap.min(MAX_ANTICHAIN_GROUND);
    if n > cap {
        return Err(Error::size(format!("up-set enumeration on {n} points"), cap));
    }
    let mut found = Vec::new();
    for_each_antichain(n, false, |visit| {
        if canonical_only && !is_shifted(n, visit.truth_table) {
            return;
        }
        let family = visit.to_family();
        let witness = solve_margin(n, visit.minimal, &family.maximal_non_members(), t, canonical_only);
        if witness.is_realizable() {
            found.push((family, witness));
        }
    })?;
    Ok(found)
}

/// For `i < j`: whenever `V ∋ j`, `V ∌ i` is in the family so is `V − j + i`.
fn is_shifted(n: usize, table: u64) -> bool {
    for j in 1..n {
        for i in 0..j {
            let mut rest = table;
            while rest != 0 {
                let x = rest.trailing_zeros();
                rest &= rest - 1;
                if x >> j & 1 == 1 && x >> i & 1 == 0 {
                    let y = x ^ (1 << j) ^ (1 << i);
                    if table >> y & 1 == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}
