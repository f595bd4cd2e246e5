//! Heaviest intersecting families under the product measure, and the
//! counting lemmas on cyclic intervals.

use simbet::families::{
    fishburn_max, is_intersecting, matching_number, max_intersecting_family, scan_cross_intersecting,
    scan_interval_union,
};
use simbet::rational::parse_rational;

fn main() -> simbet::error::Result<()> {
    for (n, p) in [(4, "0.3"), (5, "0.5"), (5, "0.75"), (3, "0.9")] {
        let p = parse_rational(p)?;
        let (best, winners) = max_intersecting_family(n, &p)?;
        let stated = fishburn_max(n, &p)?;
        println!("n = {n}, p = {p}: max weight {best}, {} maximizer(s), closed form agrees: {}", winners.len(), stated.weight == best);
        for f in &winners {
            println!("  minimal members {:?}, intersecting {}, ν = {}", f.minimal_members(), is_intersecting(f), matching_number(f));
        }
    }
    let union = scan_interval_union(9, 3)?;
    let cross = scan_cross_intersecting(9)?;
    println!("interval lemmas: {} + {} cases, {} counterexamples", union.checked, cross.checked, union.counterexamples.len() + cross.counterexamples.len());
    Ok(())
}
