//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_bigint(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// Parses `"p/q"`, `"p"` or a signed integer string.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Input(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Input(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => text.parse::<BigInt>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Best-effort conversion to `f64`; only used for reporting.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (value.numer().to_f64(), value.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // very large components: scale both down by the same power of two
            let shift = value.numer().bits().max(value.denom().bits()).saturating_sub(1000);
            let n = (value.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (value.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Renders `p/q` or `p`.
pub fn display(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 1/-2 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let r = rat(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(display(&r), "-5/2");
        assert_eq!(display(&int(3)), "3");
    }

    #[test]
    fn float_conversion_handles_huge_values() {
        let big = Rational::new(BigInt::from(3) << 2000usize, BigInt::from(2) << 2000usize);
        assert!((to_f64(&big) - 1.5).abs() < 1e-12);
        assert_eq!(to_f64(&rat(1, 4)), 0.25);
    }
}
