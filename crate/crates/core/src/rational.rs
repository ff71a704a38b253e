//! Exact rational values and their text forms.
//!
//! Rationals render as `p` or `p/q` everywhere (JSON, CSV, diagnostics).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Parses `p`, `p/q`, or a finite decimal such as `-1.25`.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if s.contains('/') {
            return Err(Error::Parse(format!("cannot parse `{s}` as a rational")));
        }
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| Error::Parse(format!("cannot parse `{s}` as a rational")))?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Ok(if neg { -value } else { value });
    }
    let value = Rational::from_str(s)
        .map_err(|_| Error::Parse(format!("cannot parse `{s}` as a rational")))?;
    Ok(value)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators overflow the direct conversion.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Decimal rendering with 15 significant digits, for plotting columns.
pub fn decimal(r: &Rational) -> String {
    format_sig(to_f64(r), 15)
}

pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).clamp(0, 40) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// A rational extended with `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(r) => to_f64(r),
            ExtRational::Infinite => f64::INFINITY,
        }
    }

    /// `num / den` with `0/0 := 1` and `x/0 := +∞` for `x > 0`.
    pub fn quotient(num: &Rational, den: &Rational) -> ExtRational {
        if den.is_zero() {
            if num.is_zero() {
                ExtRational::Finite(Rational::one())
            } else {
                ExtRational::Infinite
            }
        } else {
            ExtRational::Finite(num / den)
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(ExtRational::Infinite),
            other => parse(other).map(ExtRational::Finite),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = RationalText::deserialize(de)?;
        text.0.parse().map_err(serde::de::Error::custom)
    }
}

/// Accepts both `"3/4"` strings and bare JSON integers.
#[derive(Deserialize)]
#[serde(transparent)]
struct RationalText(#[serde(deserialize_with = "string_or_int")] String);

fn string_or_int<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Text(String),
        Int(i64),
    }
    Ok(match Raw::deserialize(de)? {
        Raw::Text(s) => s,
        Raw::Int(i) => i.to_string(),
    })
}

/// Serde adapter: a [`Rational`] as a `"p/q"` string.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rational, D::Error> {
        let text = RationalText::deserialize(de)?;
        parse(&text.0).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: `Vec<Rational>` as a list of `"p/q"` strings.
pub mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(
        v: &[Rational],
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RationalText>::deserialize(de)?;
        raw.into_iter()
            .map(|t| parse(&t.0).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: `Option<Rational>`.
pub mod serde_opt {
    use super::*;

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => ser.collect_str(r),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let raw = Option::<RationalText>::deserialize(de)?;
        raw.map(|t| parse(&t.0).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub(crate) fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse(" -2 ").unwrap(), int(-2));
        assert_eq!(parse("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn quotient_conventions() {
        assert_eq!(ExtRational::quotient(&int(0), &int(0)), ExtRational::Finite(int(1)));
        assert_eq!(ExtRational::quotient(&int(2), &int(0)), ExtRational::Infinite);
        assert_eq!(ExtRational::quotient(&int(1), &int(4)), ExtRational::Finite(ratio(1, 4)));
        assert!(ExtRational::Infinite > ExtRational::Finite(int(1_000_000)));
    }

    #[test]
    fn sig_digits() {
        assert_eq!(format_sig(1.5, 15), "1.5");
        assert_eq!(format_sig(4.0 / 3.0, 15), "1.33333333333333");
        assert_eq!(decimal(&ratio(1, 8)), "0.125");
    }

    #[test]
    fn ext_rational_text_round_trip() {
        for s in ["inf", "3/7", "5"] {
            let v: ExtRational = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        let json = serde_json::to_string(&ExtRational::Infinite).unwrap();
        assert_eq!(json, "\"inf\"");
        let back: ExtRational = serde_json::from_str("12").unwrap();
        assert_eq!(back, ExtRational::Finite(int(12)));
    }
}
