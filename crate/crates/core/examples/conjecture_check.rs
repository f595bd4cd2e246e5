//! Exhaustive search over all stakes with at most `n` entries, and the
//! question of whether an average always attains the maximum.

use simbet::model::Params;
use simbet::optimizer::{csoka_check, csoka_scan, optimize_exhaustive, EXHAUSTIVE_CAP};

fn main() -> simbet::error::Result<()> {
    let report = optimize_exhaustive(&Params::parse("2/3", "2/3")?, 4)?;
    println!("p = t = 2/3: {} by {}", report.label(), report.best.kind);
    println!("  {} threshold families scored", report.evaluated);

    for (p, t, n) in [("1/2", "1/2", 5), ("1/6", "1/3", 5), ("0.2", "0.9", 4)] {
        let v = csoka_check(&Params::parse(p, t)?, n)?;
        println!(
            "({p}, {t}), n ≤ {n}: confirmed = {}, k = {:?}, bold optimal = {}, value = {}",
            v.confirmed, v.optimal_k, v.bold_optimal, v.value
        );
    }

    let scan = csoka_scan(10, 3, EXHAUSTIVE_CAP)?;
    println!(
        "scan: {}/{} confirmed, optimal k counts {:?}, {} counterexamples",
        scan.confirmations,
        scan.points.len(),
        scan.optimal_k_counts,
        scan.counterexamples.len()
    );
    Ok(())
}
