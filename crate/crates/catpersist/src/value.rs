//! Exact filtration values and the extended real line.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive};
use std::fmt;

/// Exact rational scalar used for filtration values and distances.
pub type Rat = BigRational;

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d is zero.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational value of a finite float.
///
/// Every finite f64 is a dyadic rational, so nothing is lost here.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    BigRational::from_float(x)
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
    (a + b) / rat_int(2)
}

/// Value on the extended real line. Ordering: -inf < finite < +inf.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtValue {
    pub fn finite(r: Rat) -> ExtValue {
        ExtValue::Finite(r)
    }

    pub fn int(n: i64) -> ExtValue {
        ExtValue::Finite(rat_int(n))
    }

    /// Maps +-infinity to the corresponding variant; NaN has no value.
    pub fn from_f64(x: f64) -> Option<ExtValue> {
        if x.is_nan() {
            None
        } else if x == f64::INFINITY {
            Some(ExtValue::PosInf)
        } else if x == f64::NEG_INFINITY {
            Some(ExtValue::NegInf)
        } else {
            rat_from_f64(x).map(ExtValue::Finite)
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ExtValue::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtValue::NegInf => f64::NEG_INFINITY,
            ExtValue::Finite(r) => rat_to_f64(r),
            ExtValue::PosInf => f64::INFINITY,
        }
    }

    /// |a - b| on the extended line: identical infinities are at distance 0,
    /// a finite value is infinitely far from any infinity.
    pub fn abs_diff(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite((a - b).abs()),
            (ExtValue::PosInf, ExtValue::PosInf) | (ExtValue::NegInf, ExtValue::NegInf) => {
                ExtValue::int(0)
            }
            _ => ExtValue::PosInf,
        }
    }

    /// Shift down by a finite amount; infinities absorb the shift.
    pub fn minus(&self, by: &Rat) -> ExtValue {
        match self {
            ExtValue::Finite(a) => ExtValue::Finite(a - by),
            other => other.clone(),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::NegInf => write!(f, "-inf"),
            ExtValue::Finite(r) => write!(f, "{}", rat_to_f64(r)),
            ExtValue::PosInf => write!(f, "inf"),
        }
    }
}
