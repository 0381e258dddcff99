//! Repeating-decimal notation for rationals: `11/12` renders as `0.91(6)`,
//! the parenthesized block repeating forever.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::RationalError;
use crate::rational::Rational;

/// Long division with remainder-cycle tracking. The non-repeating prefix is
/// minimal and terminating expansions carry no parentheses.
pub fn to_repeating_decimal(r: &Rational) -> String {
    let den = r.denominator().clone();
    let (int_part, mut rem) = r.numerator().abs().div_rem(&den);

    let mut out = String::new();
    if r.is_negative() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if rem.is_zero() {
        return out;
    }
    out.push('.');

    let ten = BigInt::from(10);
    let mut digits = String::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    while !rem.is_zero() {
        if let Some(&start) = seen.get(&rem) {
            out.push_str(&digits[..start]);
            out.push('(');
            out.push_str(&digits[start..]);
            out.push(')');
            return out;
        }
        seen.insert(rem.clone(), digits.len());
        let (d, r) = (rem * &ten).div_rem(&den);
        digits.push_str(&d.to_string());
        rem = r;
    }
    out.push_str(&digits);
    out
}

/// Inverse of [`to_repeating_decimal`]: `"0.91(6)"` → `11/12`.
pub fn parse_repeating_decimal(text: &str) -> Result<Rational, RationalError> {
    let malformed = || RationalError::Malformed(text.to_string());
    let (negative, body) = match text.trim().strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.trim()),
    };
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    let (fixed, repeat) = match frac.split_once('(') {
        Some((fixed, rest)) => (fixed, rest.strip_suffix(')').ok_or_else(malformed)?),
        None => (frac, ""),
    };
    let all_digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if int_part.is_empty() || !all_digits(int_part) || !all_digits(fixed) || !all_digits(repeat) {
        return Err(malformed());
    }
    if frac.contains('(') && repeat.is_empty() {
        return Err(malformed());
    }

    let int_of = |s: &str| -> BigInt {
        if s.is_empty() {
            BigInt::zero()
        } else {
            s.parse().expect("checked digits")
        }
    };
    let ten = BigInt::from(10);
    let fixed_scale = num_traits::pow(ten.clone(), fixed.len());
    let mut value = Rational::from_integer(int_of(int_part)) + Rational::new(int_of(fixed), fixed_scale.clone())?;
    if !repeat.is_empty() {
        // 0.(r) at position after `fixed` equals r / ((10^len - 1) * 10^fixed_len)
        let period = num_traits::pow(ten, repeat.len()) - 1;
        value = value + Rational::new(int_of(repeat), period * fixed_scale)?;
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_values() {
        assert_eq!(to_repeating_decimal(&Rational::frac(11, 12)), "0.91(6)");
        assert_eq!(to_repeating_decimal(&Rational::frac(143, 144)), "0.9930(5)");
        assert_eq!(to_repeating_decimal(&Rational::frac(121, 144)), "0.8402(7)");
    }

    #[test]
    fn terminating_and_integral() {
        assert_eq!(to_repeating_decimal(&Rational::frac(1, 4)), "0.25");
        assert_eq!(to_repeating_decimal(&Rational::one()), "1");
        assert_eq!(to_repeating_decimal(&Rational::zero()), "0");
        assert_eq!(to_repeating_decimal(&Rational::frac(-1, 8)), "-0.125");
    }

    #[test]
    fn pure_and_long_repetends() {
        assert_eq!(to_repeating_decimal(&Rational::frac(1, 3)), "0.(3)");
        assert_eq!(to_repeating_decimal(&Rational::frac(1, 7)), "0.(142857)");
        assert_eq!(to_repeating_decimal(&Rational::frac(11, 72)), "0.152(7)");
        assert_eq!(to_repeating_decimal(&Rational::frac(1, 6)), "0.1(6)");
    }

    #[test]
    fn parses_back() {
        assert_eq!(parse_repeating_decimal("0.91(6)").unwrap(), Rational::frac(11, 12));
        assert_eq!(parse_repeating_decimal("0.(142857)").unwrap(), Rational::frac(1, 7));
        assert_eq!(parse_repeating_decimal("1").unwrap(), Rational::one());
        assert_eq!(parse_repeating_decimal("0.25").unwrap(), Rational::frac(1, 4));
        assert!(parse_repeating_decimal("0.9(").is_err());
        assert!(parse_repeating_decimal("0.()").is_err());
        assert!(parse_repeating_decimal("x.1").is_err());
    }
}
