//! Exact rational scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Scalar = BigRational;

/// `n/d` as an exact scalar. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn half() -> Scalar {
    q(1, 2)
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a ratio of floats for huge components.
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Render as `p` or `p/q`.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p`, `-p`, or `p/q` with `q > 0` and `gcd(p, q) = 1`.
///
/// The error message names the offending rule; callers attach positions.
pub fn parse(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_int(num).ok_or_else(|| format!("malformed rational `{s}`"))?;
    let den = match den {
        None => BigInt::one(),
        Some(d) => parse_int(d).ok_or_else(|| format!("malformed rational `{s}`"))?,
    };
    if !den.is_positive() {
        return Err(format!("denominator must be positive in `{s}`"));
    }
    if !num.gcd(&den).is_one() {
        return Err(format!("rational `{s}` is not in lowest terms"));
    }
    Ok(BigRational::new_raw(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Exact square root of a non-negative rational, if it is a rational square.
pub fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = isqrt_exact(x.numer())?;
    let d = isqrt_exact(x.denom())?;
    Some(BigRational::new(n, d))
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Serde adapter writing scalars as `p/q` strings.
pub mod as_string {
    use super::{format, parse, Scalar};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_reduced_forms() {
        assert_eq!(parse("3/4").unwrap(), q(3, 4));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0").unwrap(), zero());
        assert_eq!(parse("5/1").unwrap(), int(5));
        assert_eq!(parse(" -1/2 ").unwrap(), q(-1, 2));
    }

    #[test]
    fn parse_rejects_bad_forms() {
        for bad in ["2/4", "1/0", "1/-2", "a", "", "1/", "/2", "1.5", "+3", "0/2", "--1"] {
            assert!(parse(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn format_round_trips() {
        for x in [q(-3, 7), int(12), zero(), q(1, 12)] {
            assert_eq!(parse(&format(&x)).unwrap(), x);
        }
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&int(-1)), None);
    }
}
