//! Exact rational arithmetic helpers.
//!
//! All quantities in this crate (weights, LP solutions, table constants,
//! bound values) are exact rationals; floating point appears only when
//! printing decimal approximations.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics on `q = 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q`, `p`, or a mixed number `a b/c` (used by the table fixtures).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once(' ') {
        let whole: BigInt = whole.parse().ok()?;
        let frac = parse_rational(frac)?;
        if whole.is_negative() {
            return Some(Rational::from_integer(whole) - frac);
        }
        return Some(Rational::from_integer(whole) + frac);
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(p))
    }
}

/// Plain `p/q` (or `p` for integers). Inverse of [`parse_rational`].
pub fn format_plain(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Mixed-number form, e.g. `53 7/8`, matching the published table layout.
pub fn format_mixed(r: &Rational) -> String {
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    let whole = r.numer() / r.denom();
    let rest = r - Rational::from_integer(whole.clone());
    if whole.is_zero() {
        format_plain(r)
    } else {
        format!("{} {}", whole, format_plain(&rest.abs()))
    }
}

/// Lossy conversion for printing decimal approximations.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

/// `r^e` for a nonnegative integer exponent.
pub fn pow_u(r: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-3", "7/8", "25/16", "-5/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_plain(&r), s);
        }
        assert_eq!(parse_rational("53 7/8").unwrap(), ratio(431, 8));
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn mixed_formatting() {
        assert_eq!(format_mixed(&ratio(431, 8)), "53 7/8");
        assert_eq!(format_mixed(&ratio(25, 16)), "1 9/16");
        assert_eq!(format_mixed(&rat(10)), "10");
        assert_eq!(format_mixed(&ratio(7, 8)), "7/8");
    }

    #[test]
    fn powers() {
        assert_eq!(pow_u(&ratio(431, 8), 2), ratio(431 * 431, 64));
        assert_eq!(pow_u(&ratio(3, 2), 0), rat(1));
    }
}
