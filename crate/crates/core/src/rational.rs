//! Exact rational scalars and their string forms.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational; every coefficient in the crate is one of these.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn pow2(e: u32) -> Q {
    Q::from_integer(BigInt::one() << e as usize)
}

/// Parses `"a"`, `"-a"` or `"a/b"` (surrounding whitespace allowed).
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Q::from_integer),
    }
}

/// `"3/2"`, `"-4"`, `"0"`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Joins signed terms as `a + b - c`. Each item is (coefficient, rendered basis symbol);
/// an empty symbol stands for the constant 1.
pub(crate) fn join_terms<I>(terms: I, joiner: &str) -> String
where
    I: IntoIterator<Item = (Q, String)>,
{
    let mut out = String::new();
    for (c, sym) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        let body = if sym.is_empty() {
            fmt_q(&a)
        } else if a.is_one() {
            sym
        } else {
            format!("{}{}{}", fmt_q(&a), joiner, sym)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub(crate) mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_q("3/2"), Some(frac(3, 2)));
        assert_eq!(parse_q(" -4 "), Some(int(-4)));
        assert_eq!(parse_q("6/4"), Some(frac(3, 2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
        assert_eq!(fmt_q(&frac(-3, 2)), "-3/2");
        assert_eq!(fmt_q(&int(0)), "0");
    }

    #[test]
    fn joined_terms() {
        let t = vec![(int(2), "a".to_string()), (int(-1), "b".to_string()), (int(3), String::new())];
        assert_eq!(join_terms(t, ""), "2a - b + 3");
        assert_eq!(join_terms(vec![(int(-1), "x".to_string())], ""), "-x");
        assert_eq!(join_terms(Vec::<(Q, String)>::new(), ""), "0");
    }
}
