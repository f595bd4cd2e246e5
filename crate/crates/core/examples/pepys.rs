//! Is one six in six dice likelier than two in twelve? `P(Bin(ka, p) ≥ k)`
//! decreases in `k` whenever `p ≤ 1/a`.

use simbet::analysis::{chaundy_bullard_check, pepys_table};
use simbet::rational::{parse_rational, to_decimal_string};

fn main() -> simbet::error::Result<()> {
    let table = chaundy_bullard_check(6, 5, &parse_rational("1/6")?)?;
    for (k, v) in table.values.iter().enumerate() {
        println!("at least {} sixes in {:>2} dice: {}", k + 1, 6 * (k + 1), to_decimal_string(v, 4));
    }
    println!("strictly decreasing: {}", table.strictly_decreasing);

    // past 1/a the decrease can fail
    let beyond = pepys_table(6, &parse_rational("1/5")?, 3)?;
    println!("p = 1/5: {:?}", beyond.values.iter().map(|v| to_decimal_string(v, 4)).collect::<Vec<_>>());
    Ok(())
}
