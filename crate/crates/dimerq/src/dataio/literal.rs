//! Values written as `-0.54(9)`: the digits in parentheses are the one-sigma
//! uncertainty on the last printed digits.

use dimerq_core::numerics::ValueWithUncertainty;

use crate::error::{DataError, Result};

/// Parses `v(d)`, `v±s`, `v+-s` or a bare `v` (σ = 0). Accepts the Unicode minus.
pub fn parse_uncertain(input: &str) -> Result<ValueWithUncertainty> {
    let bad = || DataError::BadLiteral {
        input: input.to_owned(),
    };
    let text: String = input
        .trim()
        .chars()
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .filter(|c| !c.is_whitespace())
        .collect();

    let (value, sigma) = if let Some((head, tail)) = text.split_once('(') {
        let digits = tail.strip_suffix(')').ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let value: f64 = head.parse().map_err(|_| bad())?;
        let decimals = head.split_once('.').map_or(0, |(_, frac)| frac.len());
        let count: f64 = digits.parse().map_err(|_| bad())?;
        let sigma: f64 = format!("{count}e-{decimals}").parse().map_err(|_| bad())?;
        (value, sigma)
    } else if let Some((v, s)) = text.split_once('±').or_else(|| text.split_once("+-")) {
        (v.parse().map_err(|_| bad())?, s.parse().map_err(|_| bad())?)
    } else {
        (text.parse().map_err(|_| bad())?, 0.0)
    };
    Ok(ValueWithUncertainty::new(value, sigma)?)
}

/// Concise `v(d)` form with σ rounded up to one significant digit.
///
/// Rounding σ up keeps the printed error bar conservative; the value is
/// rounded to the same decimal place.
pub fn format_uncertain(x: ValueWithUncertainty) -> String {
    if x.sigma == 0.0 {
        return crate::dataio::format_number(x.value, crate::dataio::DEFAULT_DIGITS);
    }
    let mut exponent = x.sigma.log10().floor() as i32;
    // absorb representation noise such as 0.09 = 9.000000000000001e-2
    let mut digit = (x.sigma / 10f64.powi(exponent) * (1.0 - 1e-9)).ceil();
    if digit >= 10.0 {
        digit = 1.0;
        exponent += 1;
    }
    let decimals = (-exponent).max(0) as usize;
    let scaled_digit = if exponent > 0 {
        digit * 10f64.powi(exponent)
    } else {
        digit
    };
    let value = format!("{:.*}", decimals, x.value);
    let value = if value
        .trim_start_matches('-')
        .trim_start_matches(['0', '.'])
        .is_empty()
    {
        value.trim_start_matches('-').to_owned()
    } else {
        value
    };
    format!("{value}({scaled_digit})")
}
