//! Exact scalars.
//!
//! Entries are arbitrary-precision fractions kept in lowest terms with a
//! positive denominator, so equality is structural and printing is canonical.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// `base^exp` for a possibly negative exponent.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// Parses a literal of the form `-?[0-9]+(/[1-9][0-9]*)?`.
///
/// Returns a plain message on failure; callers attach the position.
pub fn parse_literal(text: &str) -> std::result::Result<Rational, String> {
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if numer.is_empty() || !numer.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("malformed rational literal `{text}`"));
    }
    let mut value = BigInt::parse_bytes(numer.as_bytes(), 10)
        .ok_or_else(|| format!("malformed rational literal `{text}`"))?;
    if sign < 0 {
        value = -value;
    }
    let denom = match denom {
        None => BigInt::one(),
        Some(d) => {
            let bytes = d.as_bytes();
            if bytes.is_empty() || !bytes.iter().all(u8::is_ascii_digit) {
                return Err(format!("malformed denominator in `{text}`"));
            }
            if bytes[0] == b'0' {
                return Err(format!("denominator must start with a nonzero digit in `{text}`"));
            }
            BigInt::parse_bytes(bytes, 10).expect("digits checked")
        }
    };
    Ok(Rational::new(value, denom))
}

/// Canonical text form; `/1` is omitted.
pub fn format_literal(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn parse_at(text: &str, line: usize, token: usize) -> Result<Rational> {
    parse_literal(text).map_err(|message| Error::Parse {
        line,
        token,
        message,
    })
}
