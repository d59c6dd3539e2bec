//! Payoff scalars.
//!
//! Everything that touches payoff values is generic over [`Scalar`]. The
//! graph algorithms themselves never look at payoffs, only at the arcs they
//! induce, so any ordered signed number type works. [`Rational`] is the
//! default: ties decide whether an edge is undirected, and only exact
//! arithmetic makes ties well defined.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Num, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Number types usable as payoffs.
///
/// Implemented for every signed, partially ordered numeric type, e.g.
/// [`Rational`], `i64`, `f64`. Equality of payoffs is decided with `==`, so
/// floating-point inputs get whatever tie semantics IEEE comparison gives.
pub trait Scalar:
    Clone + PartialOrd + Num + Signed + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + PartialOrd + Num + Signed + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `"3"`, `"-1.25"`, `"7/2"` (and `"+4"`, `".5"`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num.trim()).ok_or_else(|| err("bad numerator"))?;
        let den = parse_int(den.trim()).ok_or_else(|| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(err("expected an integer, a decimal or a/b"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mantissa = BigInt::from_str(&digits).map_err(|_| err("bad digits"))?;
    let scale = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Lifts an integer into any scalar type by repeated addition of one.
///
/// Only meant for the small integer payoffs produced by reconstruction.
pub fn from_small_int<T: Scalar>(value: i64) -> T {
    let mut out = T::zero();
    for _ in 0..value.unsigned_abs() {
        out = out + T::one();
    }
    if value < 0 {
        -out
    } else {
        out
    }
}

/// Sign of `a - b` as an ordering, treating incomparable values (NaN) as ties.
pub(crate) fn compare<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal)
}
