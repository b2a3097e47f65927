//! Exact rational scalars.
//!
//! All coefficients in this crate are arbitrary-precision rationals; nothing
//! is ever rounded. `num_rational::BigRational` already keeps values in
//! lowest terms with a positive denominator, which is exactly the canonical
//! form the wire formats expect.

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n/d` as a rational. Panics on `d == 0`, which is a programming error.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    if let Some((_, den)) = trimmed.split_once('/') {
        if den.trim() == "0" {
            return Err(Error::InvalidJson(format!("zero denominator in {trimmed:?}")));
        }
    }
    Rational::from_str(trimmed)
        .map_err(|e| Error::InvalidJson(format!("bad rational {trimmed:?}: {e}")))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}
