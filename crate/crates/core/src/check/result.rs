use std::fmt;

use serde::{Deserialize, Serialize};

use crate::function::{FunctionError, IVFunction};
use crate::interval::{Interval, IntervalVector};
use crate::order::{OrderRelation, OrderSpec};

use super::SamplingConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Increasing,
    Decreasing,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Increasing => "increasing",
            Sense::Decreasing => "decreasing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    VerifiedUpToSampling,
    Counterexample,
    Vacuous,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::VerifiedUpToSampling => "VerifiedUpToSampling",
            Status::Counterexample => "Counterexample",
            Status::Vacuous => "Vacuous",
        })
    }
}

/// The shift parameter that produced the shifted point of a comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shift {
    /// Scalar step `c` or `k` along a direction, or `lambda` for scalar
    /// g-weak checks.
    Step(f64),
    /// Uniform shift `C` or G-parameter `Lambda`.
    Interval(Interval),
    /// Componentwise raise; the shifted point is the larger point of the pair.
    Raise,
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shift::Step(c) => write!(f, "step {c}"),
            Shift::Interval(c) => write!(f, "interval {c}"),
            Shift::Raise => f.write_str("raise"),
        }
    }
}

/// One comparison that contradicts the checked notion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub base: IntervalVector,
    pub shift: Shift,
    pub shifted: IntervalVector,
    pub before: Interval,
    pub after: Interval,
    /// `before` compared with `after`.
    pub relation: OrderRelation,
}

impl Witness {
    /// Re-evaluates `f` at both points and checks that the outputs match the
    /// recorded ones and still violate `sense` under `order`.
    pub fn replays(
        &self,
        f: &IVFunction,
        order: &OrderSpec,
        sense: Sense,
        eps_cmp: f64,
    ) -> Result<bool, FunctionError> {
        let before = f.eval(&self.base)?;
        let after = f.eval(&self.shifted)?;
        Ok(before == self.before
            && after == self.after
            && violation(order, before, after, sense, eps_cmp) == Some(self.relation))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Comparisons performed.
    pub points_checked: u64,
    pub comparisons_failed: u64,
    /// Sampled shifts (or whole base points) without a feasible shift.
    pub shifts_skipped: u64,
    pub config: SamplingConfig,
}

impl CheckResult {
    pub fn is_verified(&self) -> bool {
        self.status == Status::VerifiedUpToSampling
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }
}

/// `Some(relation of before to after)` when the pair contradicts `sense`.
/// Incomparable outputs contradict both senses.
pub fn violation(
    order: &OrderSpec,
    before: Interval,
    after: Interval,
    sense: Sense,
    eps_cmp: f64,
) -> Option<OrderRelation> {
    let r = order.compare_with_slack(before, after, eps_cmp);
    let ok = match sense {
        Sense::Increasing => r.is_le(),
        Sense::Decreasing => r.is_ge(),
    };
    (!ok).then_some(r)
}

/// Per-base-point counters, merged in base-point order.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub checked: u64,
    pub failed: u64,
    pub skipped: u64,
    pub first: Option<Witness>,
}

impl Tally {
    pub fn record(
        &mut self,
        relation: Option<OrderRelation>,
        witness: impl FnOnce(OrderRelation) -> Witness,
    ) {
        self.checked += 1;
        if let Some(r) = relation {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(witness(r));
            }
        }
    }
}

#[derive(Debug, Default)]
pub(crate) struct Merged {
    pub checked: u64,
    pub failed: u64,
    pub skipped: u64,
    pub first: Option<(usize, Witness)>,
}

impl Merged {
    pub fn from_tally(index: usize, t: Tally) -> Self {
        Merged {
            checked: t.checked,
            failed: t.failed,
            skipped: t.skipped,
            first: t.first.map(|w| (index, w)),
        }
    }

    pub fn merge(self, other: Merged) -> Merged {
        let first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        Merged {
            checked: self.checked + other.checked,
            failed: self.failed + other.failed,
            skipped: self.skipped + other.skipped,
            first,
        }
    }

    pub fn finish(self, cfg: &SamplingConfig) -> CheckResult {
        let status = if self.first.is_some() {
            Status::Counterexample
        } else if self.checked == 0 {
            Status::Vacuous
        } else {
            Status::VerifiedUpToSampling
        };
        CheckResult {
            status,
            witness: self.first.map(|(_, w)| w),
            points_checked: self.checked,
            comparisons_failed: self.failed,
            shifts_skipped: self.skipped,
            config: cfg.clone(),
        }
    }
}
