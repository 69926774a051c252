//! Extended nonnegative reals `[0, ∞]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ValueError {
    #[error("value {0} is negative")]
    Negative(f64),
    #[error("value is NaN")]
    NaN,
}

/// A value in `[0, ∞]`, stored as a binary64 with `+∞` as the top element.
///
/// Multiplication follows the measure-theoretic convention `0·∞ = ∞·0 = 0`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct NonNegExt(f64);

impl NonNegExt {
    pub const ZERO: NonNegExt = NonNegExt(0.0);
    pub const ONE: NonNegExt = NonNegExt(1.0);
    pub const INFINITY: NonNegExt = NonNegExt(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self, ValueError> {
        if value.is_nan() {
            Err(ValueError::NaN)
        } else if value < 0.0 {
            Err(ValueError::Negative(value))
        } else {
            // normalizes -0.0
            Ok(NonNegExt(value + 0.0))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

/// Product with `0·∞ = ∞·0 = 0`.
pub fn ext_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

impl std::ops::Mul for NonNegExt {
    type Output = NonNegExt;

    fn mul(self, rhs: Self) -> Self {
        NonNegExt(ext_mul(self.0, rhs.0))
    }
}

impl std::ops::Add for NonNegExt {
    type Output = NonNegExt;

    fn add(self, rhs: Self) -> Self {
        NonNegExt(self.0 + rhs.0)
    }
}

impl Eq for NonNegExt {}

impl PartialOrd for NonNegExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NonNegExt {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is excluded at construction
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl TryFrom<f64> for NonNegExt {
    type Error = ValueError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        NonNegExt::new(value)
    }
}

impl From<NonNegExt> for f64 {
    fn from(v: NonNegExt) -> f64 {
        v.0
    }
}

impl fmt::Debug for NonNegExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for NonNegExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for NonNegExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for NonNegExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let value = match Raw::deserialize(deserializer)? {
            Raw::Num(v) => v,
            Raw::Text(s) if s == "inf" => f64::INFINITY,
            Raw::Text(s) => {
                return Err(serde::de::Error::custom(format!(
                    "expected a number or \"inf\", found {s:?}"
                )))
            }
        };
        NonNegExt::new(value).map_err(serde::de::Error::custom)
    }
}
