//! Instance suites for three general statements about interval-valued
//! functions under admissible orders:
//!
//! * weak monotonicity (with degenerate shifts) implies monotonicity along
//!   the all-ones direction,
//! * every interval-valued implication is increasing along `([-1,-1], [1,1])`,
//! * every increasing (decreasing) function is G-weakly increasing
//!   (decreasing) for any G with `G(X, Y) >= Y`.
//!
//! Each suite runs the checkers on a set of functions and orders and
//! records every check. Checks whose premise holds are *asserted*; a suite
//! passes when all asserted checks are verified.

use serde::{Deserialize, Serialize};

use crate::check::{
    check_directional_adm, check_g_weak, check_increasing, check_weak_adm, verify_g_contract,
    CheckError, CheckResult, DegenerateVec, SamplingConfig, Sense,
};
use crate::function::{Builtin, IVFunction};
use crate::order::OrderSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub function: String,
    pub order: String,
    pub property: String,
    /// True when the suite requires this check to be verified.
    pub asserted: bool,
    pub pass: bool,
    pub result: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub name: String,
    pub statement: String,
    pub pass: bool,
    pub checks: Vec<ClaimCheck>,
}

impl ClaimOutcome {
    fn new(name: &str, statement: &str) -> Self {
        ClaimOutcome {
            name: name.into(),
            statement: statement.into(),
            pass: true,
            checks: Vec::new(),
        }
    }

    fn push(
        &mut self,
        f: &IVFunction,
        order: &OrderSpec,
        property: String,
        asserted: bool,
        result: CheckResult,
    ) {
        let pass = !asserted || result.is_verified();
        self.pass &= pass;
        self.checks.push(ClaimCheck {
            function: f.to_string(),
            order: order.to_string(),
            property,
            asserted,
            pass,
            result,
        });
    }

    /// The first failing asserted check.
    pub fn first_failure(&self) -> Option<&ClaimCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

pub const UNIT_DIRECTION_FROM_WEAK: &str = "unit-direction-from-weak";
pub const IMPLICATION_DIRECTIONAL: &str = "implication-directional";
pub const G_WEAK_FROM_INCREASING: &str = "g-weak-from-increasing";

fn sense_suffix(sense: Sense) -> &'static str {
    match sense {
        Sense::Increasing => "inc",
        Sense::Decreasing => "dec",
    }
}

/// The binary builtins the suites run over.
pub fn builtin_catalogue() -> Vec<IVFunction> {
    let entries = [
        Builtin::Mean,
        Builtin::WeightedMean(vec![0.25, 0.75]),
        Builtin::Product,
        Builtin::Min(OrderSpec::KM),
        Builtin::Max(OrderSpec::KM),
        Builtin::LukasiewiczImplication,
        Builtin::ReichenbachImplication,
        Builtin::TruncatedDifference,
        Builtin::ProbabilisticSum,
    ];
    entries
        .into_iter()
        .map(|b| IVFunction::from_builtin(b, 2).expect("catalogue entries are binary"))
        .collect()
}

/// The two builtin implications.
pub fn builtin_implications() -> Vec<IVFunction> {
    [
        Builtin::LukasiewiczImplication,
        Builtin::ReichenbachImplication,
    ]
    .into_iter()
    .map(|b| IVFunction::from_builtin(b, 2).expect("implications are binary"))
    .collect()
}

/// For each function, order and sense: if the weak check restricted to
/// degenerate shifts verifies, the check along `([1,1], ..., [1,1])` must
/// verify as well.
pub fn unit_direction_from_weak(
    functions: &[IVFunction],
    orders: &[OrderSpec],
    cfg: &SamplingConfig,
) -> Result<ClaimOutcome, CheckError> {
    let mut out = ClaimOutcome::new(
        UNIT_DIRECTION_FROM_WEAK,
        "weakly increasing (decreasing) under degenerate shifts implies increasing (decreasing) along (1,...,1)",
    );
    let degenerate = SamplingConfig {
        degenerate_shifts: true,
        ..cfg.clone()
    };
    for f in functions {
        let ones = DegenerateVec::ones(f.arity());
        for order in orders {
            for sense in [Sense::Increasing, Sense::Decreasing] {
                let s = sense_suffix(sense);
                let weak = check_weak_adm(f, order, &degenerate, sense)?;
                let premise = weak.is_verified();
                out.push(f, order, format!("weak-{s}"), false, weak);
                if premise {
                    let dir = check_directional_adm(f, &ones, order, cfg, sense)?;
                    out.push(f, order, format!("dir-{s}(1,...,1)"), true, dir);
                }
            }
        }
    }
    Ok(out)
}

/// Every implication must be increasing along `([-1,-1], [1,1])`.
pub fn implication_directional(
    implications: &[IVFunction],
    orders: &[OrderSpec],
    cfg: &SamplingConfig,
) -> Result<ClaimOutcome, CheckError> {
    let mut out = ClaimOutcome::new(
        IMPLICATION_DIRECTIONAL,
        "every interval-valued implication is increasing along (-1,1)",
    );
    let dir = DegenerateVec::from_values(&[-1.0, 1.0])?;
    for f in implications {
        for order in orders {
            let r = check_directional_adm(f, &dir, order, cfg, Sense::Increasing)?;
            out.push(f, order, "dir-inc(-1,1)".into(), true, r);
        }
    }
    Ok(out)
}

/// For each order, function and sense: whenever the function is monotone in
/// that sense, it must be G-weakly monotone in the same sense for `g-probsum`
/// and `g-max(order)`. G-functions that fail `G(X, Y) >= Y` under the order
/// are skipped. Functions that are not monotone still get their G-weak
/// verdicts recorded, unasserted.
pub fn g_weak_from_increasing(
    functions: &[IVFunction],
    orders: &[OrderSpec],
    cfg: &SamplingConfig,
) -> Result<ClaimOutcome, CheckError> {
    let mut out = ClaimOutcome::new(
        G_WEAK_FROM_INCREASING,
        "every increasing (decreasing) function is G-weakly increasing (decreasing) for every G with G(X,Y) >= Y",
    );
    for order in orders {
        let gs = [
            IVFunction::from_builtin(Builtin::ProbabilisticSum, 2).expect("binary"),
            IVFunction::g_max(*order),
        ];
        let mut admissible_gs = Vec::new();
        for g in gs {
            match verify_g_contract(&g, order, cfg) {
                Ok(()) => admissible_gs.push(g),
                Err(CheckError::GContract { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        for f in functions {
            for sense in [Sense::Increasing, Sense::Decreasing] {
                let s = sense_suffix(sense);
                let mono = check_increasing(f, order, cfg, sense)?;
                let premise = mono.is_verified();
                let name = match sense {
                    Sense::Increasing => "increasing",
                    Sense::Decreasing => "decreasing",
                };
                out.push(f, order, name.into(), false, mono);
                for g in &admissible_gs {
                    let r = check_g_weak(f, g, order, cfg, sense)?;
                    out.push(f, order, format!("g-weak-{s}[{g}]"), premise, r);
                }
            }
        }
    }
    Ok(out)
}

/// Runs the three suites on the builtin catalogue and admissible orders.
pub fn run_all(cfg: &SamplingConfig) -> Result<Vec<ClaimOutcome>, CheckError> {
    let functions = builtin_catalogue();
    let orders = OrderSpec::ADMISSIBLE;
    Ok(vec![
        unit_direction_from_weak(&functions, &orders, cfg)?,
        implication_directional(&builtin_implications(), &orders, cfg)?,
        g_weak_from_increasing(&functions, &orders, cfg)?,
    ])
}
