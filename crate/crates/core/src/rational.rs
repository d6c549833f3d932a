//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn from_u64(p: u64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn fmt_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.75`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let frac = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + frac;
        return Ok(if negative { -v } else { v });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient as a big integer; zero when k > n.
pub fn binom(n: u64, k: u64) -> BigInt {
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

pub fn binom_r(n: u64, k: u64) -> Rational {
    Rational::from_integer(binom(n, k))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Serializes a rational as a `"p/q"` string.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_pq(r))
}

/// Serializes `(key, weight)` pairs as `[key, "p/q"]` arrays.
pub fn ser_weighted<K: serde::Serialize, S: serde::Serializer>(
    items: &[(K, Rational)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(items.len()))?;
    for (k, w) in items {
        seq.serialize_element(&(k, fmt_pq(w)))?;
    }
    seq.end()
}

pub fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&fmt_pq(r)),
        None => s.serialize_none(),
    }
}

/// Serializes a list of rationals as `"p/q"` strings.
pub fn ser_rational_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&fmt_pq(r))?;
    }
    seq.end()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
