use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational numbers, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k.into()))
}

/// Generalized binomial coefficient `n(n-1)...(n-k+1)/k!` for any integer `n`.
pub fn binomial(n: i64, k: u32) -> Rational {
    let mut num = Rational::one();
    for i in 0..k {
        num *= int(n - i64::from(i));
    }
    num / factorial(k)
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serializes as a `[numerator, denominator]` pair of decimal strings.
pub fn to_pair(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn from_pair(pair: &[String; 2]) -> Result<Rational> {
    let n: BigInt = pair[0]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator {:?}", pair[0])))?;
    let d: BigInt = pair[1]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator {:?}", pair[1])))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        Some((n, d)) => from_pair(&[n.to_string(), d.to_string()]),
        None => from_pair(&[s.to_string(), "1".to_string()]),
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn sign_pow(e: u32) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}
