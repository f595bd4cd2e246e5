//! Bold play against every average, and the best average over the
//! candidates `⌊n/t⌋`.

use simbet::analysis::best_average;
use simbet::model::Params;
use simbet::rational::to_decimal_string;
use simbet::strategy::{average_play, bold_play};

fn main() -> simbet::error::Result<()> {
    for (p, t) in [("11/20", "3/5"), ("2/3", "2/3"), ("1/2", "1/2"), ("3/10", "3/5")] {
        let params = Params::parse(p, t)?;
        let bold = bold_play(&params)?;
        println!("p = {p}, t = {t}: {} = {}", bold.kind, to_decimal_string(&bold.value, 6));
        for k in 1..=7 {
            let v = average_play(k, &params)?;
            let mark = if v.value > bold.value { "  beats bold" } else { "" };
            println!("  {k}-average  {}{mark}", to_decimal_string(&v.value, 6));
        }
        let best = best_average(&params, 10)?;
        println!("  best over candidates {:?}: {}\n", best.candidates, best.best.kind);
    }
    Ok(())
}
