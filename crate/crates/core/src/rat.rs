//! Exact rational arithmetic.
//!
//! Every numeric quantity in this crate is a [`Rat`]: an arbitrary-precision
//! rational kept in canonical form (reduced, positive denominator). There is
//! no floating point anywhere in the workspace; equality of invariants is
//! always exact equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Canonical exact rational number.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0` (only used with literal constants).
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True when the value is an integer (denominator 1 in canonical form).
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Render as `p/q`, or just `p` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `-p`, or `p/q`. Whitespace around the tokens is accepted.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let t = s.trim();
    let bad = || Error::input(format!("invalid rational `{s}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::input(format!("zero denominator in `{s}`")));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

/// Parsed value must be an integer; returns it as `BigInt`.
pub fn expect_integer(r: &Rat, what: &str) -> Result<BigInt, Error> {
    if is_integer(r) {
        Ok(r.numer().clone())
    } else {
        Err(Error::input(format!(
            "{what} must be an integer, got {}",
            fmt_rat(r)
        )))
    }
}

/// |r| as a rational.
pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(fmt_rat(&parse_rat("13/3").unwrap()), "13/3");
        assert_eq!(fmt_rat(&parse_rat("-6/4").unwrap()), "-3/2");
        assert_eq!(fmt_rat(&parse_rat("45").unwrap()), "45");
        assert_eq!(fmt_rat(&parse_rat(" 7 / 2 ").unwrap()), "7/2");
        assert_eq!(parse_rat("4/-6").unwrap(), frac(-2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = frac(-10, -4);
        assert_eq!(r, frac(5, 2));
        assert!(r.denom() > &BigInt::from(0));
        assert!(is_integer(&rat(-3)));
        assert!(!is_integer(&frac(1, 3)));
    }
}
