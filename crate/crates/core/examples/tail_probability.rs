//! Success probability of a fixed stake vector, three ways.
//!
//!     cargo run --example tail_probability -- 1/2,1/4,1/4 1/3 1/2

use simbet::model::{Params, Stakes};
use simbet::rational::to_decimal_string;
use simbet::tail::{tail_dp, tail_enum, tail_mc};

fn main() -> simbet::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (stakes, p, t) = match args.as_slice() {
        [s, p, t] => (s.as_str(), p.as_str(), t.as_str()),
        _ => ("1/2,1/4,1/4", "1/3", "1/2"),
    };
    let stakes = Stakes::new(Stakes::parse_list(stakes)?)?;
    let params = Params::parse(p, t)?;

    let exact = tail_enum(&stakes, &params)?;
    let conv = tail_dp(&stakes, &params)?;
    let mc = tail_mc(&stakes, &params, 200_000, 1)?;
    println!("stakes {stakes} at p = {}, t = {}", params.p, params.t);
    println!("  enumeration  {} ≈ {}", exact.value, to_decimal_string(&exact.value, 8));
    println!("  convolution  {} ≈ {}", conv.value, to_decimal_string(&conv.value, 8));
    println!("  monte carlo  {} ± {:.6}", to_decimal_string(&mc.value, 8), mc.stderr.unwrap_or(0.0));
    assert_eq!(exact.value, conv.value);
    Ok(())
}
