//! Exact rationals and their text forms.
//!
//! Every exact quantity in the crate is a [`Rational`]. The wire form is the
//! string `"p/q"` in lowest terms with a positive denominator, or `"p"` when the
//! denominator is one.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Lossy conversion used only by the approximate oracle and for display.
pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Very large parts: shift both down to a common scale first.
    let bits = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
    let shift = bits.max(0) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Decimal rendering with `digits` significant digits, computed exactly and
/// rounded half away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Find exponent e with 10^e <= a < 10^(e+1).
    let ten = BigInt::from(10);
    let mut e: i64 = (a.numer().to_string().len() as i64) - (a.denom().to_string().len() as i64);
    loop {
        let p = pow10(&ten, e);
        if a < p {
            e -= 1;
        } else if a >= pow10(&ten, e + 1) {
            e += 1;
        } else {
            break;
        }
    }
    // Scale so that the integer part has exactly `digits` digits.
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow10(&ten, shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = q;
    if rem * BigInt::from(2) >= *scaled.denom() {
        mantissa += 1;
    }
    let mut shift = shift;
    if mantissa.to_string().len() > digits {
        mantissa /= &ten;
        shift -= 1;
    }
    let m = mantissa.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{m}{zeros}")
    } else if (shift as usize) < m.len() {
        let (i, f) = m.split_at(m.len() - shift as usize);
        format!("{i}.{}", f.trim_end_matches('0')).trim_end_matches('.').to_string()
    } else {
        let zeros = "0".repeat(shift as usize - m.len());
        format!("0.{zeros}{}", m.trim_end_matches('0'))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(ten: &BigInt, e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
    } else {
        Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
    }
}

/// Serde adapter for a single rational stored as `"p/q"`.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(|_| serde::de::Error::custom(format!("invalid rational {s:?}")))
    }
}

/// Serde adapter for a list of rationals stored as `["p/q", ...]`.
pub mod serde_str_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(super::format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(|_| serde::de::Error::custom(format!("invalid rational {s:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&ratio(-6, 3)), "-2");
        assert_eq!(format(&ratio(3, -9)), "-1/3");
        assert_eq!(parse("10/-4").unwrap(), ratio(-5, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(1, 9), 12), "0.111111111111");
        assert_eq!(to_decimal(&ratio(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&ratio(-1, 4), 12), "-0.25");
        assert_eq!(to_decimal(&int(1234), 2), "1200");
        assert_eq!(to_decimal(&ratio(9999, 1000), 2), "10");
        assert_eq!(to_decimal(&int(0), 5), "0");
        assert_eq!(to_decimal(&ratio(1, 48), 4), "0.02083");
    }

    #[test]
    fn to_f64_handles_huge_parts() {
        let big = BigInt::from(10).pow(400);
        let r = Rational::new(big.clone() * 3, big);
        assert!((to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
