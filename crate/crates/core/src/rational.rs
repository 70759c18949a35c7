//! Exact rational thresholds.
//!
//! Vanishing verdicts at boundary exponents (notably p = 2) must be decided
//! exactly, so thresholds are carried as integer fractions and only lowered
//! to floats for display. Division by zero (k = 1 denominators and the like)
//! produces an explicit infinity sentinel which serializes as the string
//! `"inf"` rather than a float infinity.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A threshold value: an exact rational or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Finite(Ratio<i64>),
    Infinite,
}

impl Threshold {
    pub fn new(num: i64, den: i64) -> Self {
        if den == 0 {
            Threshold::Infinite
        } else {
            Threshold::Finite(Ratio::new(num, den))
        }
    }

    pub fn integer(n: i64) -> Self {
        Threshold::Finite(Ratio::from_integer(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Threshold::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Threshold::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
            Threshold::Infinite => f64::INFINITY,
        }
    }

    /// Strict comparison `p < self` for a floating exponent, exact in the
    /// finite case: `p < n/d  ⟺  p·d < n` with d > 0.
    pub fn admits(&self, p: f64) -> bool {
        match self {
            Threshold::Infinite => true,
            Threshold::Finite(r) => {
                let (n, d) = (*r.numer() as f64, *r.denom() as f64);
                debug_assert!(d > 0.0);
                p * d < n
            }
        }
    }

    pub fn numer_denom(&self) -> Option<(i64, i64)> {
        match self {
            Threshold::Finite(r) => Some((*r.numer(), *r.denom())),
            Threshold::Infinite => None,
        }
    }
}

impl PartialOrd for Threshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Threshold {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Threshold::Infinite, Threshold::Infinite) => Ordering::Equal,
            (Threshold::Infinite, _) => Ordering::Greater,
            (_, Threshold::Infinite) => Ordering::Less,
            (Threshold::Finite(a), Threshold::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Infinite => write!(f, "inf"),
            Threshold::Finite(r) => {
                if *r.denom() == 1 {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Serialize for Threshold {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threshold::Infinite => serializer.serialize_str("inf"),
            Threshold::Finite(r) => {
                let mut s = serializer.serialize_struct("Threshold", 3)?;
                s.serialize_field("num", r.numer())?;
                s.serialize_field("den", r.denom())?;
                s.serialize_field("value", &self.to_f64())?;
                s.end()
            }
        }
    }
}

/// A real-valued threshold that may be the infinity sentinel; used where
/// the value genuinely depends on a float such as the pinching constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealOrInf {
    Real(f64),
    Infinite,
}

impl RealOrInf {
    pub fn to_f64(&self) -> f64 {
        match self {
            RealOrInf::Real(x) => *x,
            RealOrInf::Infinite => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RealOrInf::Real(_))
    }
}

impl Serialize for RealOrInf {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RealOrInf::Infinite => serializer.serialize_str("inf"),
            RealOrInf::Real(x) => serializer.serialize_f64(*x),
        }
    }
}

impl fmt::Display for RealOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealOrInf::Infinite => write!(f, "inf"),
            RealOrInf::Real(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_admission() {
        let two = Threshold::new(4, 2);
        assert_eq!(two, Threshold::integer(2));
        assert!(two.admits(1.9999999));
        assert!(!two.admits(2.0));
        assert!(Threshold::Infinite.admits(1e300));
        assert!(Threshold::new(58, 8) > Threshold::new(34, 7));
    }

    #[test]
    fn serialization() {
        let t = Threshold::new(58, 4);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"num":29,"den":2,"value":14.5}"#);
        assert_eq!(serde_json::to_string(&Threshold::Infinite).unwrap(), r#""inf""#);
        assert_eq!(serde_json::to_string(&RealOrInf::Infinite).unwrap(), r#""inf""#);
    }
}
