//! Exact decimal expansions with the repeating block in parentheses.
//!
//!     cargo run --example repeating_decimals -- [FRACTION...]

use eventprob::decimal::{parse_repeating_decimal, to_repeating_decimal};
use eventprob::Rational;

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        ["11/12", "143/144", "121/144", "11/72", "1/7", "1/3", "3/8", "1/1"].map(String::from).to_vec()
    } else {
        inputs
    };
    for text in inputs {
        let r: Rational = match text.parse() {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{text}: {e}");
                continue;
            }
        };
        let decimal = to_repeating_decimal(&r);
        assert_eq!(parse_repeating_decimal(&decimal).unwrap(), r);
        println!("{r:>10} = {decimal}");
    }
}
