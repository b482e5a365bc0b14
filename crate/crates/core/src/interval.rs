//! Closed real intervals `[lo, hi]` and the endpoint arithmetic on them.
//!
//! Sum, opposite and difference work on any interval. The product is only
//! defined for intervals with nonnegative endpoints, and scaling by a real
//! flips the endpoints when the factor is negative.
//!
//! Note that this is not a group: `X - X` is `[-w, w]` where `w` is the width
//! of `X`, not `[0, 0]`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Absolute tolerance used for floating-point comparisons of endpoints.
pub const EPS_FP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("invalid interval [{lo},{hi}]: endpoints must be non-NaN with lo <= hi")]
pub struct ConstructionError {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("product undefined: {operand} has a negative endpoint")]
pub struct DomainError {
    pub operand: Interval,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalParseError {
    #[error("expected an interval literal of the form [lo,hi], got {0:?}")]
    Syntax(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// A closed interval with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// `[0, 0]`
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    /// `[1, 1]`
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// `[0, 1]`
    pub const UNIT: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self, ConstructionError> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(ConstructionError { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    ///
    /// Panics if `x` is NaN.
    pub fn point(x: f64) -> Self {
        assert!(!x.is_nan(), "degenerate interval from NaN");
        Interval { lo: x, hi: x }
    }

    /// Builds `[min(a,b), max(a,b)]`.
    pub fn hull(a: f64, b: f64) -> Self {
        assert!(!a.is_nan() && !b.is_nan(), "interval hull of NaN");
        Interval {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Membership in the set of closed subintervals of `[0, 1]`.
    pub fn in_unit(&self) -> bool {
        self.lo >= 0.0 && self.hi <= 1.0
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn approx_eq(&self, other: &Interval, eps: f64) -> bool {
        (self.lo - other.lo).abs() <= eps && (self.hi - other.hi).abs() <= eps
    }

    /// `[X.lo + Y.lo, X.hi + Y.hi]`
    pub fn add(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    /// `[-X.hi, -X.lo]`
    pub fn opposite(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    /// `[X.lo - Y.hi, X.hi - Y.lo]`
    pub fn sub(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo - other.hi,
            hi: self.hi - other.lo,
        }
    }

    /// `[X.lo * Y.lo, X.hi * Y.hi]`, for intervals with nonnegative endpoints.
    ///
    /// A zero lower endpoint is accepted: the endpoint formula stays valid on
    /// the closure of the positive intervals.
    pub fn mul_pos(self, other: Interval) -> Result<Interval, DomainError> {
        for operand in [self, other] {
            if operand.lo < 0.0 {
                return Err(DomainError { operand });
            }
        }
        Ok(Interval {
            lo: self.lo * other.lo,
            hi: self.hi * other.hi,
        })
    }

    /// `alpha * X`, swapping the endpoints when `alpha < 0`.
    pub fn scale(self, alpha: f64) -> Interval {
        if alpha >= 0.0 {
            Interval {
                lo: alpha * self.lo,
                hi: alpha * self.hi,
            }
        } else {
            Interval {
                lo: alpha * self.hi,
                hi: alpha * self.lo,
            }
        }
    }

    /// Endpointwise minimum, the meet of the Kulisch–Miranker lattice.
    pub fn meet(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// Endpointwise maximum, the join of the Kulisch–Miranker lattice.
    pub fn join(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Pulls endpoints that sit within `eps` outside `[0, 1]` back onto the
    /// boundary, and collapses an inversion of at most `eps`.
    ///
    /// Returns `None` when the interval is further than `eps` from being a
    /// subinterval of `[0, 1]`.
    pub fn snap_unit(lo: f64, hi: f64, eps: f64) -> Option<Interval> {
        if lo.is_nan() || hi.is_nan() || lo < -eps || hi > 1.0 + eps || lo > hi + eps {
            return None;
        }
        let mut lo = lo.clamp(0.0, 1.0);
        let mut hi = hi.clamp(0.0, 1.0);
        if lo > hi {
            let m = (lo + hi) / 2.0;
            lo = m;
            hi = m;
        }
        Some(Interval { lo, hi })
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::add(self, rhs)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::sub(self, rhs)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        self.opposite()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = IntervalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = || IntervalParseError::Syntax(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(syntax)?;
        let (lo, hi) = inner.split_once(',').ok_or_else(syntax)?;
        let lo: f64 = lo.trim().parse().map_err(|_| syntax())?;
        let hi: f64 = hi.trim().parse().map_err(|_| syntax())?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err(syntax());
        }
        Ok(Interval::new(lo, hi)?)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point `(X1, ..., Xn)` of the n-fold interval product, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalVector(Vec<Interval>);

impl IntervalVector {
    /// Panics if `items` is empty.
    pub fn new(items: Vec<Interval>) -> Self {
        assert!(!items.is_empty(), "interval vector of arity 0");
        IntervalVector(items)
    }

    /// `(v, v, ..., v)` of arity `n`.
    pub fn splat(v: Interval, n: usize) -> Self {
        IntervalVector::new(vec![v; n])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }

    pub fn in_unit(&self) -> bool {
        self.0.iter().all(Interval::in_unit)
    }

    pub fn into_vec(self) -> Vec<Interval> {
        self.0
    }
}

impl Index<usize> for IntervalVector {
    type Output = Interval;
    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

impl From<Vec<Interval>> for IntervalVector {
    fn from(items: Vec<Interval>) -> Self {
        IntervalVector::new(items)
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn close(a: Interval, b: Interval) -> bool {
        a.approx_eq(&b, EPS_FP)
    }

    #[test]
    fn constructor_rejects_inverted_and_nan() {
        assert!(Interval::new(0.5, 0.4).is_err());
        assert!(Interval::new(f64::NAN, 0.4).is_err());
        assert!(Interval::new(0.1, f64::NAN).is_err());
        assert!(Interval::new(0.3, 0.3).is_ok());
    }

    #[test]
    fn predicates() {
        assert!(Interval::ZERO.is_degenerate());
        assert!(iv(0.2, 0.2).is_degenerate());
        assert!(!iv(0.2, 0.3).is_degenerate());
        assert!(iv(0.0, 1.0).in_unit());
        assert!(!iv(-0.1, 0.5).in_unit());
        assert!(!iv(0.5, 1.1).in_unit());
        assert!(iv(0.1, 0.2).is_positive());
        assert!(!iv(0.0, 0.2).is_positive());
        assert!(iv(-0.3, -0.1).is_negative());
        assert!(!iv(-0.3, 0.0).is_negative());
    }

    #[test]
    fn add_examples() {
        assert!(close(iv(0.1, 0.2) + iv(0.3, 0.5), iv(0.4, 0.7)));
        assert_eq!(Interval::ZERO + iv(0.3, 0.5), iv(0.3, 0.5));
        let out = iv(0.6, 0.8) + iv(0.5, 0.9);
        assert!(close(out, iv(1.1, 1.7)));
        assert!(!out.in_unit());
    }

    #[test]
    fn opposite_examples() {
        assert_eq!(-iv(0.2, 0.5), iv(-0.5, -0.2));
        assert_eq!(-Interval::ZERO, Interval::ZERO);
        assert_eq!(-(-iv(0.2, 0.5)), iv(0.2, 0.5));
    }

    #[test]
    fn sub_examples() {
        assert!(close(iv(0.4, 0.6) - iv(0.1, 0.3), iv(0.1, 0.5)));
        assert!(close(iv(0.4, 0.6) - iv(0.4, 0.6), iv(-0.2, 0.2)));
        assert!(close(iv(0.5, 0.5) - iv(0.2, 0.2), iv(0.3, 0.3)));
    }

    #[test]
    fn mul_pos_examples() {
        assert!(close(
            iv(0.2, 0.4).mul_pos(iv(0.5, 0.5)).unwrap(),
            iv(0.1, 0.2)
        ));
        assert_eq!(Interval::ONE.mul_pos(iv(0.3, 0.7)).unwrap(), iv(0.3, 0.7));
        let err = iv(-0.1, 0.4).mul_pos(iv(0.5, 0.5)).unwrap_err();
        assert_eq!(err.operand, iv(-0.1, 0.4));
        assert!(iv(0.5, 0.5).mul_pos(iv(-0.1, 0.4)).is_err());
        // closure of the positive intervals
        assert_eq!(iv(0.0, 0.5).mul_pos(iv(0.0, 1.0)).unwrap(), iv(0.0, 0.5));
    }

    #[test]
    fn scale_examples() {
        assert!(close(iv(0.1, 0.3).scale(2.0), iv(0.2, 0.6)));
        assert!(close(iv(0.1, 0.3).scale(-2.0), iv(-0.6, -0.2)));
        assert_eq!(iv(0.1, 0.3).scale(0.0), Interval::ZERO);
    }

    #[test]
    fn literal_round_trip() {
        let x = iv(0.1, 0.30000000000000004);
        assert_eq!(x.to_string(), "[0.1,0.30000000000000004]");
        assert_eq!(x.to_string().parse::<Interval>().unwrap(), x);
        assert_eq!(" [ -1 , 2.5 ] ".parse::<Interval>().unwrap(), iv(-1.0, 2.5));
        assert!("[0.5,0.1]".parse::<Interval>().is_err());
        assert!("0.1,0.2".parse::<Interval>().is_err());
        assert!("[0.1;0.2]".parse::<Interval>().is_err());
        assert!("[nan,0.2]".parse::<Interval>().is_err());
    }

    #[test]
    fn snap_unit_behaviour() {
        assert_eq!(Interval::snap_unit(-1e-14, 0.5, EPS_FP), Some(iv(0.0, 0.5)));
        assert_eq!(
            Interval::snap_unit(0.5, 1.0 + 1e-14, EPS_FP),
            Some(iv(0.5, 1.0))
        );
        assert!(Interval::snap_unit(-0.1, 0.5, EPS_FP).is_none());
        let collapsed = Interval::snap_unit(0.5 + 1e-14, 0.5, EPS_FP).unwrap();
        assert!(collapsed.is_degenerate());
    }
}
