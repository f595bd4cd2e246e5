use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{report, SearchMethod, SearchReport};
use crate::error::{Error, Result};
use crate::model::{Params, Stakes};
use crate::rational::{ratio, Rational};
use crate::tail::tail_dp;

/// Settings for [`optimize_local`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSearch {
    /// Maximum number of stakes.
    pub n: usize,
    /// Stakes are multiples of `1/denominator_cap`.
    pub denominator_cap: usize,
    /// Random starting points on top of the uniform start and the averages.
    pub restarts: usize,
    pub seed: u64,
    /// Consecutive non-improving moves allowed before a climb stops.
    pub sideways: usize,
}

impl LocalSearch {
    pub fn new(n: usize, denominator_cap: usize, restarts: usize, seed: u64) -> Self {
        LocalSearch { n, denominator_cap, restarts, seed, sideways: 2 * n }
    }
}

/// A lattice point: `n` non-negative unit counts summing to `D`, sorted
/// descending so permutations share one state.
type Units = Vec<usize>;

struct Climber<'a> {
    params: &'a Params,
    d: usize,
    cache: HashMap<Units, Rational>,
}

impl Climber<'_> {
    fn value(&mut self, units: &Units) -> Result<Rational> {
        if let Some(v) = self.cache.get(units) {
            return Ok(v.clone());
        }
        let v = tail_dp(&to_stakes(units, self.d), self.params)?.value;
        self.cache.insert(units.clone(), v.clone());
        Ok(v)
    }

    /// Steepest ascent; ties broken by neighbour order, which is fixed.
    /// When nothing improves, a bounded number of sideways steps to unseen
    /// states let the climb cross the plateaus a step function produces.
    fn climb(&mut self, start: Units, sideways: usize) -> Result<()> {
        let mut current = start;
        let mut value = self.value(&current)?;
        let mut seen = BTreeSet::from([current.clone()]);
        let mut flat = 0;
        loop {
            let mut step: Option<(Rational, Units)> = None;
            for next in neighbours(&current) {
                if seen.contains(&next) {
                    continue;
                }
                let v = self.value(&next)?;
                if step.as_ref().is_none_or(|(s, _)| v > *s) {
                    step = Some((v, next));
                }
            }
            let Some((v, next)) = step else { break };
            if v > value {
                flat = 0;
            } else if v == value && flat < sideways {
                flat += 1;
            } else {
                break;
            }
            seen.insert(next.clone());
            value = v;
            current = next;
        }
        Ok(())
    }
}

fn canonical(mut units: Units) -> Units {
    units.sort_unstable_by(|a, b| b.cmp(a));
    units
}

fn to_stakes(units: &Units, d: usize) -> Stakes {
    Stakes::new(units.iter().map(|&u| ratio(u as i64, d as i64)).collect()).expect("units sum to d")
}

/// Move `δ ∈ {1, 2, 4, …} ∪ {u_i}` units from coordinate `i` to `j`.
fn neighbours(units: &Units) -> Vec<Units> {
    let mut out = BTreeSet::new();
    for i in 0..units.len() {
        if units[i] == 0 {
            continue;
        }
        let mut amounts: Vec<usize> = std::iter::successors(Some(1usize), |a| Some(a * 2))
            .take_while(|a| *a < units[i])
            .collect();
        amounts.push(units[i]);
        for j in 0..units.len() {
            if i == j {
                continue;
            }
            for &delta in &amounts {
                let mut next = units.clone();
                next[i] -= delta;
                next[j] += delta;
                out.insert(canonical(next));
            }
        }
    }
    out.into_iter().collect()
}

fn uniform(n: usize, d: usize) -> Units {
    (0..n).map(|i| d / n + usize::from(i < d % n)).collect()
}

/// Stars and bars: `n − 1` sorted cut points in `0..=d`.
fn random_composition(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Units {
    let mut cuts: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..=d)).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut out = Vec::with_capacity(n);
    for c in cuts.into_iter().chain(std::iter::once(d)) {
        out.push(c - prev);
        prev = c;
    }
    canonical(out)
}

/// Hill-climbs over stakes that are multiples of `1/denominator_cap`, from
/// the uniform vector, every average whose stakes lie on the lattice, and
/// `restarts` random points. Averages off the lattice are scored too, since
/// their denominators are within the cap. The result is a lower bound on the maximum over
/// at most `n` stakes and is identical for identical settings.
pub fn optimize_local(params: &Params, search: &LocalSearch) -> Result<SearchReport> {
    params.require_p_le_t()?;
    let (n, d) = (search.n, search.denominator_cap);
    if n == 0 || d == 0 {
        return Err(Error::Invalid("need n ≥ 1 and a positive denominator cap".into()));
    }
    let mut starts: Vec<Units> = vec![canonical(uniform(n, d))];
    for k in 1..=n.min(d) {
        if d % k == 0 {
            let mut u = vec![d / k; k];
            u.resize(n, 0);
            starts.push(u);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    starts.extend((0..search.restarts).map(|_| random_composition(n, d, &mut rng)));

    let mut climber = Climber { params, d, cache: HashMap::new() };
    for start in starts {
        climber.climb(start, search.sideways)?;
    }
    // Every visited state at the best value, not only the climb endpoints,
    // plus the averages the lattice cannot express (1/k with k ∤ d).
    let mut scored: Vec<(Stakes, Rational)> =
        climber.cache.iter().map(|(u, v)| (to_stakes(u, d), v.clone())).collect();
    for k in (1..=n.min(d)).filter(|k| d % k != 0) {
        let stakes = Stakes::average(k);
        let v = tail_dp(&stakes, params)?.value;
        scored.push((stakes, v));
    }
    let best = scored.iter().map(|(_, v)| v).max().cloned().unwrap_or_else(Rational::zero);
    let evaluated = scored.len() as u64;
    let maximizers: Vec<Stakes> = scored.into_iter().filter(|(_, v)| *v == best).map(|(s, _)| s).collect();
    Ok(report(params, best, maximizers, SearchMethod::LocalSearch, n, evaluated))
}
