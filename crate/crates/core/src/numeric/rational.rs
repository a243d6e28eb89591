//! Rational and Gaussian-rational scalars with `"p/q"` text rendering.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Complex, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational scalar.
pub type Q = BigRational;

/// Exact Gaussian rational `a + b i`.
pub type Cq = Complex<Q>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("malformed complex coefficient `{0}`")]
    MalformedComplex(String),
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn cq(re: Q, im: Q) -> Cq {
    Complex::new(re, im)
}

pub fn cq_real(re: Q) -> Cq {
    Complex::new(re, Q::zero())
}

/// `i` as a Gaussian rational.
pub fn imag_unit() -> Cq {
    Complex::new(Q::zero(), Q::one())
}

/// Parses `p`, `-p`, `p/q`; rejects a zero denominator.
pub fn parse_q(s: &str) -> Result<Q, ParseScalarError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| ParseScalarError::Malformed(s.to_string()))?;
    let d = BigInt::from_str(den).map_err(|_| ParseScalarError::Malformed(s.to_string()))?;
    if d.is_zero() {
        return Err(ParseScalarError::ZeroDenominator(s.to_string()));
    }
    Ok(Q::new(n, d))
}

/// Renders `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Renders a Gaussian rational as `(a+bi)`.
pub fn fmt_cq(z: &Cq) -> String {
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("({}{}{}i)", fmt_q(&z.re), sign, fmt_q(&z.im.abs()))
}

/// Parses `(a+bi)`, `(a-bi)`, a bare rational `a`, or a bare `bi`.
pub fn parse_cq(s: &str) -> Result<Cq, ParseScalarError> {
    let err = || ParseScalarError::MalformedComplex(s.to_string());
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t)
        .trim();
    if let Some(body) = inner.strip_suffix('i') {
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im.trim() {
            "" | "+" => "1",
            "-" => "-1",
            other => other.strip_prefix('+').unwrap_or(other),
        };
        let re = parse_q(re).map_err(|_| err())?;
        let im = parse_q(im).map_err(|_| err())?;
        Ok(cq(re, im))
    } else {
        Ok(cq_real(parse_q(inner).map_err(|_| err())?))
    }
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        fmt_q(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).map_err(serde::de::Error::custom)
    }
}

/// A rational that serializes as `"p/q"`; used in reports.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(pub Q);

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fraction({})", fmt_q(&self.0))
    }
}

impl FromStr for Fraction {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_q(s).map(Fraction)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_q::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_q::deserialize(d).map(Fraction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders_fractions() {
        assert_eq!(parse_q("1/4").unwrap(), qf(1, 4));
        assert_eq!(parse_q(" -6/8 ").unwrap(), qf(-3, 4));
        assert_eq!(parse_q("7").unwrap(), q(7));
        assert_eq!(fmt_q(&qf(-6, 8)), "-3/4");
        assert_eq!(fmt_q(&q(5)), "5");
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        assert!(matches!(parse_q("-1/0"), Err(ParseScalarError::ZeroDenominator(_))));
        assert!(matches!(parse_q("a/2"), Err(ParseScalarError::Malformed(_))));
        assert!(matches!(parse_q(""), Err(ParseScalarError::Empty)));
    }

    #[test]
    fn complex_round_trip() {
        for (lit, re, im) in [
            ("(1+2i)", q(1), q(2)),
            ("(0+1i)", q(0), q(1)),
            ("(1/2-3/4i)", qf(1, 2), qf(-3, 4)),
            ("(-1-1i)", q(-1), q(-1)),
            ("3", q(3), q(0)),
            ("i", q(0), q(1)),
            ("-i", q(0), q(-1)),
        ] {
            let z = parse_cq(lit).unwrap();
            assert_eq!(z, cq(re, im), "{lit}");
            assert_eq!(parse_cq(&fmt_cq(&z)).unwrap(), z);
        }
    }
}
