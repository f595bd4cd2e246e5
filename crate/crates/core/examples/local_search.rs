//! Hill-climbing beyond the reach of exhaustive search. Values are lower
//! bounds on the best achievable with at most `n` stakes.

use simbet::model::Params;
use simbet::optimizer::{optimize_local, LocalSearch};

fn main() -> simbet::error::Result<()> {
    let search = LocalSearch::new(9, 72, 12, 2024);
    for (p, t) in [("0.55", "0.6"), ("0.4", "0.7"), ("0.3", "0.45"), ("0.62", "0.64")] {
        let report = optimize_local(&Params::parse(p, t)?, &search)?;
        println!("({p}, {t}): {} by {} [{} points]", report.label(), report.best.kind, report.evaluated);
    }
    Ok(())
}
