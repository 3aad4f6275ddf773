//! Exact rational scalars and their text form.
//!
//! All coefficients and labels in this crate are `BigRational` values,
//! rendered as `"p"` or `"p/q"` strings at every serialization boundary.

use crate::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Q = num_rational::BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

/// Parses `"p"` or `"p/q"` (optionally signed). Rejects a zero denominator.
pub fn q_parse(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

pub fn q_str(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Best-effort conversion to `f64`; exact for all desk-scale values.
pub fn q_to_f64(q: &Q) -> f64 {
    let n = q.numer();
    let d = q.denom();
    // Try the exact i128 route first; fall back to string parsing for
    // the astronomically rare overflow case.
    if let (Some(n), Some(d)) = (i128::try_from(n).ok(), i128::try_from(d).ok()) {
        return n as f64 / d as f64;
    }
    let n: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    n / d
}

pub fn q_is_negative(q: &Q) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "1", "-3", "2/3", "-7/2", "10/4"] {
            let q = q_parse(s).unwrap();
            let q2 = q_parse(&q_str(&q)).unwrap();
            assert_eq!(q, q2);
        }
        assert_eq!(q_str(&q_parse("10/4").unwrap()), "5/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "/", "1/0", "a", "1/2/3", "1.5"] {
            assert!(q_parse(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(q_to_f64(&q_parse("1/2").unwrap()), 0.5);
        assert_eq!(q_to_f64(&q_int(-3)), -3.0);
    }
}
