use serde::{Deserialize, Serialize};

use crate::interval::{Interval, IntervalVector, EPS_FP};

use super::CheckError;

/// Real-pair direction `((a1,b1), ..., (an,bn))`: component `i` moves to
/// `[lo + c*ai, hi + c*bi]`. At least one pair is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPairs(Vec<(f64, f64)>);

impl RealPairs {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self, CheckError> {
        if pairs.is_empty() {
            return Err(CheckError::InvalidDirection(
                "direction has no components".into(),
            ));
        }
        if pairs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(CheckError::InvalidDirection(
                "direction has a non-finite entry".into(),
            ));
        }
        if pairs.iter().all(|&(a, b)| a == 0.0 && b == 0.0) {
            return Err(CheckError::InvalidDirection(
                "every pair of the direction is (0,0)".into(),
            ));
        }
        Ok(RealPairs(pairs))
    }

    /// `((a,b), ..., (a,b))` of arity `n`.
    pub fn uniform(pair: (f64, f64), n: usize) -> Result<Self, CheckError> {
        RealPairs::new(vec![pair; n])
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// The largest `k >= 0` such that every shift by `0 < c <= k` stays a
    /// point of `I([0,1])^n`.
    pub fn max_shift(&self, x: &IntervalVector) -> f64 {
        pairs_max_shift(x, self.0.iter().copied())
    }

    pub fn shift(&self, x: &IntervalVector, c: f64) -> Option<IntervalVector> {
        let items = x
            .iter()
            .zip(&self.0)
            .map(|(xi, &(a, b))| Interval::snap_unit(xi.lo() + c * a, xi.hi() + c * b, EPS_FP))
            .collect::<Option<Vec<_>>>()?;
        Some(IntervalVector::new(items))
    }
}

/// Vector of degenerate intervals `(V1, ..., Vn)`, not all `[0,0]`.
/// Component `i` moves to `Xi + k*Vi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegenerateVec(Vec<Interval>);

impl DegenerateVec {
    pub fn new(items: Vec<Interval>) -> Result<Self, CheckError> {
        if items.is_empty() {
            return Err(CheckError::InvalidDirection(
                "direction has no components".into(),
            ));
        }
        if let Some(v) = items.iter().find(|v| !v.is_degenerate()) {
            return Err(CheckError::InvalidDirection(format!(
                "component {v} is not a degenerate interval"
            )));
        }
        if items.iter().any(|v| !v.lo().is_finite()) {
            return Err(CheckError::InvalidDirection(
                "direction has a non-finite entry".into(),
            ));
        }
        if items.iter().all(|v| *v == Interval::ZERO) {
            return Err(CheckError::InvalidDirection(
                "every component of the direction is [0,0]".into(),
            ));
        }
        Ok(DegenerateVec(items))
    }

    /// `([v1,v1], ..., [vn,vn])`.
    pub fn from_values(values: &[f64]) -> Result<Self, CheckError> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(CheckError::InvalidDirection(
                "direction has a NaN entry".into(),
            ));
        }
        DegenerateVec::new(values.iter().map(|&v| Interval::point(v)).collect())
    }

    pub fn ones(n: usize) -> Self {
        DegenerateVec(vec![Interval::ONE; n])
    }

    pub fn items(&self) -> &[Interval] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn max_shift(&self, x: &IntervalVector) -> f64 {
        pairs_max_shift(x, self.0.iter().map(|v| (v.lo(), v.lo())))
    }

    /// `Xi + k*Vi` per component: scale, then add.
    pub fn shift(&self, x: &IntervalVector, k: f64) -> Option<IntervalVector> {
        let items = x
            .iter()
            .zip(&self.0)
            .map(|(xi, vi)| {
                let moved = *xi + vi.scale(k);
                Interval::snap_unit(moved.lo(), moved.hi(), EPS_FP)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(IntervalVector::new(items))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    RealPairs(RealPairs),
    DegenerateVec(DegenerateVec),
    /// The same interval added to every argument; the shift itself is drawn
    /// by the sampler.
    UniformShift,
}

/// Supremum of the feasible shift parameters for `x` along `dir`; 0 when no
/// positive shift is feasible.
///
/// For [`Direction::UniformShift`] this is the largest `c` for which adding
/// `[c, c]` to every argument stays inside `[0, 1]`.
pub fn feasible_max_shift(x: &IntervalVector, dir: &Direction) -> f64 {
    match dir {
        Direction::RealPairs(p) => p.max_shift(x),
        Direction::DegenerateVec(v) => v.max_shift(x),
        Direction::UniformShift => pairs_max_shift(x, std::iter::repeat_n((1.0, 1.0), x.arity())),
    }
}

/// Each constraint is affine in the shift `c` and holds at `c = 0`:
/// `lo + c*a >= 0`, `hi + c*b <= 1` and `lo + c*a <= hi + c*b`.
fn pairs_max_shift(x: &IntervalVector, pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut k = f64::INFINITY;
    let mut bound = |slack: f64, rate: f64| {
        if rate < 0.0 {
            k = k.min(slack.max(0.0) / -rate);
        }
    };
    for (xi, (a, b)) in x.iter().zip(pairs) {
        bound(xi.lo(), a);
        bound(1.0 - xi.hi(), -b);
        bound(xi.width(), b - a);
    }
    k
}
