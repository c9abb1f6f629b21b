//! Exact rational helpers and the `"p/q"` string format.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "invalid rational literal {literal:?}: expected \"p\" or \"p/q\" with integers p, q and q != 0"
)]
pub struct ParseRationalError {
    pub literal: String,
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Parses `"p"` or `"p/q"`. Decimal points, exponents and whitespace are
/// rejected so that no floating-point value can slip in.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        literal: s.to_string(),
    };
    match s.split_once('/') {
        None => parse_integer(s).map(Rational::from_integer).ok_or_else(err),
        Some((n, d)) => {
            let n = parse_integer(n).ok_or_else(err)?;
            let d = parse_integer(d).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical string form: `"p"` for integers, otherwise reduced `"p/q"`
/// with positive denominator.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn in_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}
