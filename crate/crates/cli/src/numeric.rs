//! Exact parsing of integer arguments that may use scientific notation.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseCountError(String);

impl fmt::Display for ParseCountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseCountError {}

/// Parses `"1000"`, `"1e6"`, `"2.5e3"` or `"1500e-1"` to an exact `u64`.
/// Values that are not whole numbers are rejected.
pub fn parse_count(s: &str) -> Result<u64, ParseCountError> {
    let err = |why: &str| ParseCountError(format!("'{s}': {why}"));
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].strip_prefix('+').unwrap_or(&s[i + 1..]).parse().map_err(|_| err("bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(err("expected a number"));
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("expected a nonnegative number"));
    }
    let digits = format!("{int}{frac}");
    if digits.len() > 38 {
        return Err(err("too many digits"));
    }
    let mut value: u128 = digits.parse().map_err(|_| err("expected a number"))?;
    let shift = exp - frac.len() as i32;
    if shift >= 0 {
        for _ in 0..shift {
            value = value.checked_mul(10).ok_or_else(|| err("out of 64-bit range"))?;
        }
    } else {
        for _ in 0..-shift {
            if value % 10 != 0 {
                return Err(err("not an integer"));
            }
            value /= 10;
        }
    }
    u64::try_from(value).map_err(|_| err("out of 64-bit range"))
}

/// Comma-separated list of [`parse_count`] values.
pub fn parse_count_list(s: &str) -> Result<Vec<u64>, ParseCountError> {
    s.split(',').map(|part| parse_count(part.trim())).collect()
}
