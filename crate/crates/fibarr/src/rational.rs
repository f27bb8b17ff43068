//! Arbitrary-precision rationals, the ground field of every exact computation.
//!
//! `num_rational::BigRational` already keeps values reduced with a positive
//! denominator, which is exactly the invariant we need; we only add the
//! string form `"p/q"` used by every JSON interface.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

/// Renders a rational as `"p"` or `"p/q"` with `q > 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` in decimal digits.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let mk_err = || crate::Error::Invalid(format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s.trim()).map_err(|_| mk_err())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| mk_err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| mk_err())?;
            if q.is_zero() {
                return Err(crate::Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat2(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_negative(r: &Rational) -> bool {
    r.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["0", "7", "-3/4", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // reduction and sign normalization happen on parse
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_rational("1/0").is_err());
    }
}
