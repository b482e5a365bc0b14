//! Interval-valued functions `I([0,1])^n -> I([0,1])`.
//!
//! A function is a builtin from the registry, the lift of a scalar function,
//! or a parsed expression.

mod builtin;
mod expr;
mod lift;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::interval::{DomainError, Interval, IntervalVector};
use crate::order::OrderSpec;

pub use builtin::{lukasiewicz, probabilistic_sum, reichenbach, truncated_difference, Builtin};
pub use expr::Expr;
pub use lift::{Monotone, ScalarFn, ScalarLift, DEFAULT_RESOLUTION};
pub use parse::{parse_expr, SyntaxError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
    #[error("syntax error at {0}")]
    Syntax(SyntaxError),
    #[error("arity error: {name} needs arity {expected}, got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("argument {index} is {value}, which is not a subinterval of [0,1]")]
    OutsideUnit { index: usize, value: Interval },
    #[error("call to {name} with argument {value} outside [0,1]")]
    CallArgument { name: String, value: Interval },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("range error: result {value} at {point} is not a subinterval of [0,1]")]
    Range {
        point: IntervalVector,
        value: Interval,
    },
}

#[derive(Debug, Clone)]
pub enum Body {
    Builtin(Builtin),
    ScalarLift(ScalarLift),
    Expr(Expr),
}

/// An interval-valued function of fixed arity.
#[derive(Debug, Clone)]
pub struct IVFunction {
    arity: usize,
    body: Body,
}

impl IVFunction {
    /// Registry entry by name; `params` are only used by `wmean`.
    pub fn builtin(name: &str, params: &[f64], arity: usize) -> Result<Self, FunctionError> {
        IVFunction::from_builtin(Builtin::from_name(name, params)?, arity)
    }

    pub fn from_builtin(b: Builtin, arity: usize) -> Result<Self, FunctionError> {
        if arity == 0 || b.fixed_arity().is_some_and(|n| n != arity) {
            return Err(FunctionError::Arity {
                name: b.to_string(),
                expected: b.fixed_arity().unwrap_or(1),
                found: arity,
            });
        }
        Ok(IVFunction {
            arity,
            body: Body::Builtin(b),
        })
    }

    /// `G(X, Y) = max{X, Y}` under `order`.
    pub fn g_max(order: OrderSpec) -> Self {
        IVFunction {
            arity: 2,
            body: Body::Builtin(Builtin::GMax(order)),
        }
    }

    pub fn scalar_lift(lift: ScalarLift) -> Self {
        IVFunction {
            arity: lift.arity(),
            body: Body::ScalarLift(lift),
        }
    }

    pub fn parse(src: &str, arity: usize) -> Result<Self, FunctionError> {
        if arity == 0 {
            return Err(FunctionError::Arity {
                name: "expression".into(),
                expected: 1,
                found: 0,
            });
        }
        Ok(IVFunction {
            arity,
            body: Body::Expr(parse_expr(src, arity)?),
        })
    }

    /// Accepts either a builtin form (`mean`, `wmean(0.3,0.7)`,
    /// `g-max(lex-lower)`) or an expression.
    pub fn from_spec(text: &str, arity: usize) -> Result<Self, FunctionError> {
        match Builtin::parse_spec(text)? {
            Some(b) => IVFunction::from_builtin(b, arity),
            None => IVFunction::parse(text, arity),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    /// Evaluates at a point of `I([0,1])^n`.
    pub fn eval(&self, args: &IntervalVector) -> Result<Interval, FunctionError> {
        if args.arity() != self.arity {
            return Err(FunctionError::Arity {
                name: self.to_string(),
                expected: self.arity,
                found: args.arity(),
            });
        }
        if let Some((index, value)) = args.iter().enumerate().find(|(_, x)| !x.in_unit()) {
            return Err(FunctionError::OutsideUnit {
                index: index + 1,
                value: *value,
            });
        }
        match &self.body {
            Body::Builtin(b) => Ok(b.eval(args.as_slice())),
            Body::ScalarLift(l) => Ok(l.eval(args.as_slice())),
            Body::Expr(e) => {
                let value = e.eval(args)?;
                if value.in_unit() {
                    Ok(value)
                } else {
                    Err(FunctionError::Range {
                        point: args.clone(),
                        value,
                    })
                }
            }
        }
    }
}

impl fmt::Display for IVFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Builtin(b) => write!(f, "{b}"),
            Body::ScalarLift(l) => write!(f, "lift({})", l.name()),
            Body::Expr(e) => write!(f, "{e}"),
        }
    }
}
