use std::fmt;

use serde::{Deserialize, Serialize};

use crate::novikov::Rational;

/// Totally ordered filtration values supporting the arithmetic the metrics need.
pub trait Filtration: Clone + Ord + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn halve(&self) -> Self;

    fn negate(&self) -> Self {
        Self::zero().minus(self)
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.minus(other)
        } else {
            other.minus(self)
        }
    }
}

impl Filtration for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn halve(&self) -> Self {
        self.half()
    }
}

/// A value that may be +∞ (bar lengths, distances).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended<F> {
    Finite(F),
    Infinite,
}

impl<F> Extended<F> {
    pub fn finite(&self) -> Option<&F> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }
}

impl<F: fmt::Display> fmt::Display for Extended<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtendedRepr<F> {
    Value(F),
    Tag(String),
}

impl<F: Serialize> Serialize for Extended<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => v.serialize(s),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de, F: Deserialize<'de>> Deserialize<'de> for Extended<F> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ExtendedRepr::<F>::deserialize(d)? {
            ExtendedRepr::Value(v) => Ok(Extended::Finite(v)),
            ExtendedRepr::Tag(t) if t == "inf" || t == "+inf" => Ok(Extended::Infinite),
            ExtendedRepr::Tag(t) => Err(serde::de::Error::custom(format!(
                "expected a filtration value or \"inf\", got {t:?}"
            ))),
        }
    }
}
