//! Parsing of exact rational values from command-line text.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use cyclometric_core::Rational;

use crate::error::CliError;

/// Parse an exact rational from one of three forms:
///
/// * a fraction `"num/den"` (e.g. `3/10`, `-7/2`),
/// * a plain integer (e.g. `18`, `-3`),
/// * a finite decimal (e.g. `0.05`, `-1.25`), read exactly.
///
/// `what` names the flag for error messages.
pub fn parse_rational(text: &str, what: &str) -> Result<Rational, CliError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(CliError::Usage(format!("{what}: empty value")));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_bigint(num, what)?;
        let d = parse_bigint(den, what)?;
        if d.is_zero() {
            return Err(CliError::Usage(format!(
                "{what}: zero denominator in `{s}`"
            )));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CliError::Usage(format!(
                "{what}: `{s}` is not a fraction, integer, or finite decimal"
            )));
        }
        let negative = int_part.starts_with('-');
        let int = if int_part == "-" || int_part.is_empty() {
            BigInt::zero()
        } else {
            parse_bigint(int_part, what)?
        };
        let frac = parse_bigint(frac_part, what)?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int.magnitude() * scale.magnitude() + frac.magnitude();
        let mut value = Rational::new(BigInt::from(magnitude), scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    Ok(Rational::from(parse_bigint(s, what)?))
}

fn parse_bigint(text: &str, what: &str) -> Result<BigInt, CliError> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|_| CliError::Usage(format!("{what}: `{text}` is not an integer")))
}

/// Render a rational the way every report does: `"num/den"`, or the bare
/// numerator when the denominator is 1.
pub fn rational_to_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
