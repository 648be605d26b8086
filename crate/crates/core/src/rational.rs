//! Exact rational helpers on top of [`num_rational::BigRational`].
//!
//! Every threshold, measure and co-degree value in the crate is a
//! [`Rational`]. Parameters cross the text boundary as `"num/den"` strings,
//! plain integers, or terminating decimals (`"0.25"`), all parsed exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u64(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"`, `"a"` or a terminating decimal such as `"-1.25"`.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not an exact rational: {text:?}"));
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{}{}", whole_digits, frac);
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(num, den));
    }
    let num: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(num))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn pow(q: &Rational, exp: usize) -> Rational {
    num_traits::pow(q.clone(), exp)
}

pub fn pow2(exp: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(2), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Smallest integer `c` with `c >= q`, clamped into `u64`.
pub fn ceil_u64(q: &Rational) -> u64 {
    if q.is_negative() {
        return 0;
    }
    q.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Largest integer `f` with `f <= q`, clamped into `u64` (negative maps to `None`).
pub fn floor_u64(q: &Rational) -> Option<u64> {
    if q.is_negative() {
        return None;
    }
    Some(q.floor().to_integer().to_u64().unwrap_or(u64::MAX))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(super::format))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| super::parse(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod serde_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&super::format(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| super::parse(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_exact_forms() {
        assert_eq!(parse("1/24").unwrap(), ratio(1, 24));
        assert_eq!(parse("6/8").unwrap(), ratio(3, 4));
        assert_eq!(parse("7").unwrap(), int(7));
        assert_eq!(parse("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse("-1.25").unwrap(), ratio(-5, 4));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("1.").is_err());
    }

    #[test]
    fn format_is_reduced() {
        assert_eq!(format(&ratio(4, 8)), "1/2");
        assert_eq!(format(&int(3)), "3");
        assert_eq!(format(&ratio(-2, 6)), "-1/3");
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(ceil_u64(&ratio(7, 2)), 4);
        assert_eq!(ceil_u64(&int(3)), 3);
        assert_eq!(floor_u64(&ratio(7, 2)), Some(3));
        assert_eq!(floor_u64(&ratio(-1, 2)), None);
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(factorial(4), BigInt::from(24));
        assert_eq!(pow2(-3), ratio(1, 8));
    }
}
