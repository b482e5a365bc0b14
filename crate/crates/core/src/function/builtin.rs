//! The builtin registry.

use std::fmt;

use crate::interval::{Interval, EPS_FP};
use crate::order::OrderSpec;

use super::lift::{clamp_unit, corner_extremes, Monotone};
use super::FunctionError;

use Monotone::{Decreasing as Dec, Increasing as Inc};

/// Łukasiewicz implication `min(1, 1 - x + y)`.
pub fn lukasiewicz(x: f64, y: f64) -> f64 {
    (1.0 - x + y).min(1.0)
}

/// Reichenbach implication `1 - x + xy`.
pub fn reichenbach(x: f64, y: f64) -> f64 {
    1.0 - x + x * y
}

/// Truncated difference `max(0, x - y)`.
pub fn truncated_difference(x: f64, y: f64) -> f64 {
    (x - y).max(0.0)
}

/// Probabilistic sum `x + y - xy`.
pub fn probabilistic_sum(x: f64, y: f64) -> f64 {
    x + y - x * y
}

#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    /// Endpointwise arithmetic mean.
    Mean,
    /// Endpointwise weighted mean; weights are nonnegative and sum to 1.
    WeightedMean(Vec<f64>),
    /// Product of intervals with nonnegative endpoints.
    Product,
    /// Order minimum, folded over the arguments. Endpointwise for `km`.
    Min(OrderSpec),
    /// Order maximum, folded over the arguments. Endpointwise for `km`.
    Max(OrderSpec),
    LukasiewiczImplication,
    ReichenbachImplication,
    TruncatedDifference,
    /// Lift of the probabilistic sum, used as a dominating G-function.
    ProbabilisticSum,
    /// `G(X, Y) = max{X, Y}` under a fixed order.
    GMax(OrderSpec),
}

/// Orders usable in `min-<order>` / `max-<order>` names.
const NAMED_ORDERS: [OrderSpec; 4] = OrderSpec::BUILTIN;

impl Builtin {
    /// Looks up a parameterless registry entry, including `min-<order>` and
    /// `max-<order>` for the named builtin orders.
    pub fn lookup(name: &str) -> Option<Builtin> {
        let b = match name {
            "mean" => Builtin::Mean,
            "prod" => Builtin::Product,
            "luk-impl" => Builtin::LukasiewiczImplication,
            "rb-impl" => Builtin::ReichenbachImplication,
            "trunc-diff" => Builtin::TruncatedDifference,
            "g-probsum" => Builtin::ProbabilisticSum,
            _ => {
                let (which, order) = name
                    .strip_prefix("min-")
                    .map(|o| (false, o))
                    .or_else(|| name.strip_prefix("max-").map(|o| (true, o)))?;
                let order = NAMED_ORDERS.into_iter().find(|o| o.to_string() == order)?;
                if which {
                    Builtin::Max(order)
                } else {
                    Builtin::Min(order)
                }
            }
        };
        Some(b)
    }

    /// Builds a registry entry from a name and real parameters.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Builtin, FunctionError> {
        if name == "wmean" {
            return Builtin::weighted_mean(params.to_vec());
        }
        if name == "g-max" {
            return Err(FunctionError::BadParams {
                name: name.into(),
                reason: "g-max takes an order, e.g. g-max(lex-lower)".into(),
            });
        }
        let b = Builtin::lookup(name).ok_or_else(|| FunctionError::UnknownBuiltin(name.into()))?;
        if !params.is_empty() {
            return Err(FunctionError::BadParams {
                name: name.into(),
                reason: format!("takes no parameters, got {}", params.len()),
            });
        }
        Ok(b)
    }

    pub fn weighted_mean(weights: Vec<f64>) -> Result<Builtin, FunctionError> {
        let bad = |reason: String| FunctionError::BadParams {
            name: "wmean".into(),
            reason,
        };
        if weights.is_empty() {
            return Err(bad("needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(bad(format!("weight {w} is not a nonnegative real")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > EPS_FP {
            return Err(bad(format!("weights sum to {total}, not 1")));
        }
        Ok(Builtin::WeightedMean(weights))
    }

    /// Parses the textual builtin forms accepted on the command line:
    /// a bare registry name, `wmean(w1,...,wn)` or `g-max(<order>)`.
    /// Returns `Ok(None)` when `text` is not of builtin form.
    pub fn parse_spec(text: &str) -> Result<Option<Builtin>, FunctionError> {
        let text = text.trim();
        if let Some(b) = Builtin::lookup(text) {
            return Ok(Some(b));
        }
        if text == "wmean" || text == "g-max" {
            return Builtin::from_name(text, &[]).map(Some);
        }
        if let Some(inner) = text
            .strip_prefix("g-max(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let order: OrderSpec = inner.parse().map_err(|e| FunctionError::BadParams {
                name: "g-max".into(),
                reason: format!("{e}"),
            })?;
            return Ok(Some(Builtin::GMax(order)));
        }
        if let Some(inner) = text
            .strip_prefix("wmean(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let weights = inner
                .split(',')
                .map(|w| {
                    w.trim()
                        .parse::<f64>()
                        .map_err(|_| FunctionError::BadParams {
                            name: "wmean".into(),
                            reason: format!("weight {:?} is not a number", w.trim()),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Builtin::weighted_mean(weights).map(Some);
        }
        Ok(None)
    }

    /// The arity fixed by the builtin, or `None` when it accepts any arity.
    pub fn fixed_arity(&self) -> Option<usize> {
        match self {
            Builtin::Mean | Builtin::Product | Builtin::Min(_) | Builtin::Max(_) => None,
            Builtin::WeightedMean(w) => Some(w.len()),
            _ => Some(2),
        }
    }

    /// Evaluates on arguments inside `[0, 1]`; the result is inside `[0, 1]`.
    pub fn eval(&self, args: &[Interval]) -> Interval {
        match self {
            Builtin::Mean => {
                let n = args.len() as f64;
                let sum = args.iter().fold(Interval::ZERO, |acc, x| acc + *x);
                clamp_unit(sum.lo() / n, sum.hi() / n)
            }
            Builtin::WeightedMean(w) => {
                let sum = args
                    .iter()
                    .zip(w)
                    .fold(Interval::ZERO, |acc, (x, w)| acc + x.scale(*w));
                clamp_unit(sum.lo(), sum.hi())
            }
            Builtin::Product => args.iter().skip(1).fold(args[0], |acc, x| {
                acc.mul_pos(*x).expect("product arguments lie in [0,1]")
            }),
            Builtin::Min(order) => args.iter().skip(1).fold(args[0], |a, b| order.min(a, *b)),
            Builtin::Max(order) | Builtin::GMax(order) => {
                args.iter().skip(1).fold(args[0], |a, b| order.max(a, *b))
            }
            Builtin::LukasiewiczImplication => lift2(lukasiewicz, args, [Dec, Inc]),
            Builtin::ReichenbachImplication => lift2(reichenbach, args, [Dec, Inc]),
            Builtin::TruncatedDifference => lift2(truncated_difference, args, [Inc, Dec]),
            Builtin::ProbabilisticSum => lift2(probabilistic_sum, args, [Inc, Inc]),
        }
    }
}

fn lift2(f: fn(f64, f64) -> f64, args: &[Interval], hints: [Monotone; 2]) -> Interval {
    let scalar = move |a: &[f64]| f(a[0], a[1]);
    let (lo, hi) = corner_extremes(&scalar, args, &hints.map(Some));
    clamp_unit(lo, hi)
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Mean => f.write_str("mean"),
            Builtin::WeightedMean(w) => {
                f.write_str("wmean(")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Builtin::Product => f.write_str("prod"),
            Builtin::Min(o) => write!(f, "min-{o}"),
            Builtin::Max(o) => write!(f, "max-{o}"),
            Builtin::LukasiewiczImplication => f.write_str("luk-impl"),
            Builtin::ReichenbachImplication => f.write_str("rb-impl"),
            Builtin::TruncatedDifference => f.write_str("trunc-diff"),
            Builtin::ProbabilisticSum => f.write_str("g-probsum"),
            Builtin::GMax(o) => write!(f, "g-max({o})"),
        }
    }
}

/// True for names that may appear as a call in the expression language.
pub(crate) fn is_call_name(name: &str) -> bool {
    Builtin::lookup(name).is_some()
}
