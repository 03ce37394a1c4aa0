//! Arbitrary-precision rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator; `0` is stored as `0/1`.
pub type RationalScalar = BigRational;

pub fn int(k: i64) -> RationalScalar {
    BigRational::from_integer(BigInt::from(k))
}

pub fn frac(p: i64, q: i64) -> RationalScalar {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"` with arbitrary-precision integers.
pub fn parse_rational(input: &str) -> Result<RationalScalar> {
    let s = input.trim();
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(err("empty rational literal"));
    }
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = p.parse().map_err(|_| err("numerator is not an integer"))?;
    let den: BigInt = q.parse().map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses a comma-separated list of rationals, e.g. `"1,0,-1/2"`.
pub fn parse_rational_list(input: &str) -> Result<Vec<RationalScalar>> {
    input.split(',').map(parse_rational).collect()
}

/// Canonical `p/q` (or `p`) rendering, inverse of [`parse_rational`].
pub fn format_rational(r: &RationalScalar) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &RationalScalar) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), frac(-1, 2));
        let big = parse_rational("123456789012345678901234567890/3").unwrap();
        assert_eq!(format_rational(&big), "41152263004115226300411522630");
    }

    #[test]
    fn canonical_form_is_reduced_with_positive_denominator() {
        let r = parse_rational("6/-8").unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0");
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1/0", "a", "1/2/3", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad} should fail");
        }
    }
}
