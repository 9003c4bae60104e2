use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// reduced). `num_rational::Ratio` normalizes after every operation.
pub type Rational = BigRational;

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom`; panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Exact power with a possibly negative exponent.
pub fn powi(base: &Rational, exp: i64) -> Result<Rational> {
    if exp == 0 {
        return Ok(Rational::one());
    }
    if base.is_zero() {
        return if exp > 0 {
            Ok(Rational::zero())
        } else {
            Err(Error::Precondition(
                "zero raised to a negative power".into(),
            ))
        };
    }
    let e = exp.unsigned_abs();
    let e =
        u32::try_from(e).map_err(|_| Error::Precondition(format!("exponent {exp} too large")))?;
    let numer = num_traits::pow::Pow::pow(base.numer(), e);
    let denom = num_traits::pow::Pow::pow(base.denom(), e);
    Ok(if exp > 0 {
        Rational::new(numer, denom)
    } else {
        Rational::new(denom, numer)
    })
}

/// Parses `p` or `p/q` with arbitrary-size integers.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    match text.split_once('/') {
        None => text
            .parse::<BigInt>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Decimal integer when the denominator is 1, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
