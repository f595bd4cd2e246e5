//! Where bold play is known to be optimal. Writes the grid as CSV
//! (`p,t,status,citation`) and prints a coarse character map.
//!
//!     cargo run --example region_map -- 100 > region.csv

use simbet::analysis::{classify, region_grid, write_region_csv, Status};
use simbet::model::Params;
use simbet::rational::ratio;

fn main() -> simbet::error::Result<()> {
    let resolution: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let rows = region_grid(resolution)?;
    write_region_csv(&rows, std::io::stdout().lock())?;

    // t down the page, p across: # bold optimal, x beaten, . unknown
    let r = 40i64;
    for j in (0..=r).rev() {
        let line: String = (0..=r)
            .map(|i| {
                let params = Params::new(ratio(i, r), ratio(j, r)).expect("grid point");
                match classify(&params).status {
                    Status::BoldOptimal => '#',
                    Status::BoldNotOptimal => 'x',
                    Status::Unknown => '.',
                    Status::SupIsOne => ' ',
                }
            })
            .collect();
        eprintln!("{line}");
    }
    Ok(())
}
