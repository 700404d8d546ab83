//! Scalar field for weights, plus the canonical exact rational type.
//!
//! Every quantity the library manipulates lives in ½ℤ or ℚ, so the weight
//! layer only needs exact halves. Binary floats represent halves exactly
//! within their mantissa range, which is why `f32`/`f64` are admissible.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rationals, the default scalar everywhere outside the weight layer.
pub type Q = Rational64;

pub trait Scalar: Num + Signed + Copy + PartialOrd + fmt::Debug + Send + Sync + 'static {
    fn from_halves(h: i64) -> Self;
    /// `Some(h)` when `self == h/2` exactly.
    fn to_halves(&self) -> Option<i64>;

    fn from_int(k: i64) -> Self {
        Self::from_halves(2 * k)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_halves(h: i64) -> Self {
                h as $t / 2.0
            }
            fn to_halves(&self) -> Option<i64> {
                let x = *self * 2.0;
                (x.is_finite() && x.fract() == 0.0 && x.abs() < (1u64 << 52) as $t).then(|| x as i64)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational64 {
    fn from_halves(h: i64) -> Self {
        Rational64::new(h, 2)
    }
    fn to_halves(&self) -> Option<i64> {
        let x = *self * Rational64::from_integer(2);
        x.is_integer().then(|| x.to_integer())
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn half() -> Q {
    Q::new(1, 2)
}

pub fn is_half_integral(x: Q) -> bool {
    (x * 2).is_integer()
}

pub fn is_integral(x: Q) -> bool {
    x.is_integer()
}

/// `(-1)^e` for an integral rational exponent.
pub fn neg_one_pow(e: Q) -> Option<i8> {
    if !e.is_integer() {
        return None;
    }
    let k = e.to_integer();
    Some(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Canonical text form: `"3"`, `"-1/2"`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("not an exact rational: {0:?}")]
pub struct ParseQError(pub String);

pub fn parse_q(s: &str) -> Result<Q, ParseQError> {
    let t = s.trim();
    let bad = || ParseQError(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n = i64::from_str(n.trim()).map_err(|_| bad())?;
            let d = i64::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => i64::from_str(t).map(Q::from_integer).map_err(|_| bad()),
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a rational as its `"p/q"` string.
pub mod qstr {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = String::deserialize(d)?;
        parse_q(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Q>` as an array of `"p/q"` strings.
pub mod qvec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = xs.iter().map(fmt_q).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Newtype with string serialization, for places where a rational sits inside a
/// generic container.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QStr(pub Q);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        qstr::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        qstr::deserialize(d).map(QStr)
    }
}

pub fn sum_q<I: IntoIterator<Item = Q>>(it: I) -> Q {
    it.into_iter().fold(Q::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halves_roundtrip_for_every_scalar() {
        for h in -9..=9 {
            assert_eq!(f32::from_halves(h).to_halves(), Some(h));
            assert_eq!(f64::from_halves(h).to_halves(), Some(h));
            assert_eq!(Q::from_halves(h).to_halves(), Some(h));
        }
        assert_eq!(q(1, 3).to_halves(), None);
        assert_eq!(0.3f64.to_halves(), None);
    }

    #[test]
    fn text_form() {
        assert_eq!(fmt_q(&q(-3, 6)), "-1/2");
        assert_eq!(fmt_q(&qi(4)), "4");
        assert_eq!(parse_q(" 6/4 ").unwrap(), q(3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
    }
}
