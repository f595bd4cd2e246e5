//! Threshold families: which up-sets arise as `{V : Σ_{i∈V} c_i ≥ t}`.

use simbet::families::{
    enumerate_threshold_families, family_weight, realizable_with, threshold_family, SubsetFamily,
};
use simbet::model::Stakes;
use simbet::rational::parse_rational;

fn main() -> simbet::error::Result<()> {
    let t = parse_rational("3/5")?;
    let stakes = Stakes::average(3);
    let family = threshold_family(&stakes, &t)?;
    println!("{stakes} at t = {t}: {:?}", family.to_index_sets());
    println!("  weight at p = 2/3: {}", family_weight(&family, &parse_rational("2/3")?));

    // {1,2} and {3,4} without the crossing pairs: no stakes produce this
    let odd = SubsetFamily::up_closure(4, &[0b0011, 0b1100])?;
    println!("{:?} realizable: {}", odd.minimal_members(), realizable_with(&odd, &t, false)?.is_realizable());

    for n in 1..=4 {
        let found = enumerate_threshold_families(n, &t, true)?;
        println!("n = {n}: {} families from non-increasing stakes", found.len());
    }
    for (f, w) in enumerate_threshold_families(3, &t, true)? {
        let stakes = w.stakes.map(|s| s.to_string()).unwrap_or_default();
        println!("  {:?} via {stakes}", f.to_index_sets());
    }
    Ok(())
}
