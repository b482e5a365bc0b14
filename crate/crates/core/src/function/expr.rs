//! Expression trees over interval variables.
//!
//! Evaluation applies the endpoint formulas of the interval operations
//! directly, so `X1 - X1` is `[-w, w]` and not `[0, 0]`.

use std::fmt;

use crate::interval::{Interval, IntervalVector};

use super::builtin::Builtin;
use super::FunctionError;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Zero-based variable index; `Var(0)` prints as `X1`.
    Var(usize),
    Const(Interval),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Scale(f64, Box<Expr>),
    Call(Builtin, Vec<Expr>),
}

impl Expr {
    /// Largest variable index used plus one.
    pub fn min_arity(&self) -> usize {
        match self {
            Expr::Var(i) => i + 1,
            Expr::Const(_) => 0,
            Expr::Neg(e) | Expr::Scale(_, e) => e.min_arity(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.min_arity().max(b.min_arity()),
            Expr::Call(_, args) => args.iter().map(Expr::min_arity).max().unwrap_or(0),
        }
    }

    pub fn eval(&self, point: &IntervalVector) -> Result<Interval, FunctionError> {
        Ok(match self {
            Expr::Var(i) => point[*i],
            Expr::Const(c) => *c,
            Expr::Neg(e) => e.eval(point)?.opposite(),
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)?.mul_pos(b.eval(point)?)?,
            Expr::Scale(alpha, e) => e.eval(point)?.scale(*alpha),
            Expr::Call(b, args) => {
                let values = args
                    .iter()
                    .map(|a| a.eval(point))
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(bad) = values.iter().find(|v| !v.in_unit()) {
                    return Err(FunctionError::CallArgument {
                        name: b.to_string(),
                        value: *bad,
                    });
                }
                b.eval(&values)
            }
        })
    }
}

/// Prints in a fully parenthesized form that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "X{}", i + 1),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Scale(alpha, e) => {
                if *alpha < 0.0 {
                    write!(f, "-({}*({e}))", -alpha)
                } else {
                    write!(f, "{alpha}*({e})")
                }
            }
            Expr::Call(b, args) => {
                write!(f, "{b}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}
