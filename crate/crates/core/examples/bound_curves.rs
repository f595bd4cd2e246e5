//! Upper and lower bounds on the value at `p = t`, as CSV.

use simbet::analysis::{bound_curve, write_bounds_csv};

fn main() -> simbet::error::Result<()> {
    let curve = bound_curve(200)?;
    write_bounds_csv(&curve, 6, std::io::stdout().lock())?;
    let cross = curve.windows(2).find(|w| (w[0].upper_pz < w[0].upper_feige) != (w[1].upper_pz < w[1].upper_feige));
    if let Some(w) = cross {
        eprintln!("the two upper bounds cross between p = {} and p = {}", w[0].p, w[1].p);
    }
    eprintln!("lower ≤ upper everywhere: {}", curve.iter().all(|b| b.sandwiched));
    Ok(())
}
