//! Sampling-based checkers for monotonicity notions of interval-valued
//! functions.
//!
//! Every notion quantifies over a continuum (all points, all shifts). A
//! checker replaces the quantifiers by a sample: the full product of the
//! interval grid, optional seeded random points, and a set of shifts per
//! point. The verdict is therefore either a concrete counterexample, a
//! verification that holds on the sample, or `Vacuous` when no sampled point
//! admitted a feasible shift.
//!
//! Base points are processed in parallel. Counts are summed and the reported
//! witness is always the first violation in base-point order, so results do
//! not depend on scheduling.

mod direction;
mod result;
mod sampling;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::function::{FunctionError, IVFunction, ScalarFn};
use crate::interval::{Interval, IntervalVector, EPS_FP};
use crate::order::{OrderRelation, OrderSpec};

pub use direction::{feasible_max_shift, DegenerateVec, Direction, RealPairs};
pub use result::{violation, CheckResult, Sense, Shift, Status, Witness};
pub use sampling::SamplingConfig;

use result::{Merged, Tally};
use sampling::{base_rng, contract_rng, random_interval, random_interval_below, shift_rng, Space};

/// A sampled pair where `G(Lambda, X)` is not above `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GContractViolation {
    pub lambda: Interval,
    pub x: Interval,
    pub value: Interval,
    pub relation: OrderRelation,
}

const MAX_CONTRACT_EXAMPLES: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("invalid sampling configuration: {0}")]
    Config(String),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("{what} has arity {found}, expected {expected}")]
    Arity {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("G does not satisfy G(X,Y) >= Y on {count} sampled pairs (first: G({},{}) = {})",
        .examples[0].lambda, .examples[0].x, .examples[0].value)]
    GContract {
        count: u64,
        examples: Vec<GContractViolation>,
    },
    #[error("evaluating {function} at {point}: {source}")]
    Eval {
        function: String,
        point: IntervalVector,
        #[source]
        source: FunctionError,
    },
}

fn eval(f: &IVFunction, p: &IntervalVector) -> Result<Interval, CheckError> {
    f.eval(p).map_err(|source| CheckError::Eval {
        function: f.to_string(),
        point: p.clone(),
        source,
    })
}

fn expect_arity(what: &str, expected: usize, found: usize) -> Result<(), CheckError> {
    if expected == found {
        Ok(())
    } else {
        Err(CheckError::Arity {
            what: what.into(),
            expected,
            found,
        })
    }
}

/// Runs `per_base` for every base point and merges the tallies.
fn run<F>(len: usize, cfg: &SamplingConfig, per_base: F) -> Result<CheckResult, CheckError>
where
    F: Fn(usize, &mut Tally) -> Result<(), CheckError> + Sync,
{
    (0..len)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            match per_base(i, &mut t) {
                Ok(()) => Ok(Merged::from_tally(i, t)),
                Err(e) => Err((i, e)),
            }
        })
        .reduce(
            || Ok(Merged::default()),
            |a, b| match (a, b) {
                (Ok(a), Ok(b)) => Ok(a.merge(b)),
                (Err(a), Err(b)) => Err(if a.0 <= b.0 { a } else { b }),
                (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
            },
        )
        .map(|m| m.finish(cfg))
        .map_err(|(_, e)| e)
}

fn replace(x: &IntervalVector, index: usize, value: Interval) -> IntervalVector {
    let mut items = x.as_slice().to_vec();
    items[index] = value;
    IntervalVector::new(items)
}

fn add_uniform(x: &IntervalVector, c: Interval) -> Option<IntervalVector> {
    x.iter()
        .map(|xi| {
            let moved = *xi + c;
            Interval::snap_unit(moved.lo(), moved.hi(), EPS_FP)
        })
        .collect::<Option<Vec<_>>>()
        .map(IntervalVector::new)
}

/// Standard monotonicity: `X <= Y` componentwise implies `F(X) <= F(Y)`
/// (`>=` for [`Sense::Decreasing`]), with the componentwise order taken
/// with respect to `order`.
///
/// On the grid every point is compared with itself and with each point
/// obtained by raising a single component to a strictly larger grid
/// interval. Grid intervals whose keys differ by at most `EPS_FP` are not
/// ordered by those keys, so decimal grids are compared by their real
/// values. For a transitive `order` this finds a violation whenever any
/// comparable grid pair violates, since every such pair is joined by a chain
/// of single-component raises. Random samples raise all components at once.
pub fn check_increasing(
    f: &IVFunction,
    order: &OrderSpec,
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    let n = f.arity();
    let space = Space::new(cfg, n)?;
    let g = space.grid.len();
    let ups: Vec<Vec<usize>> = (0..g)
        .map(|a| {
            (0..g)
                .filter(|&b| {
                    order.compare_with_slack(space.grid[a], space.grid[b], EPS_FP)
                        == OrderRelation::Less
                })
                .collect()
        })
        .collect();

    let mut rng = base_rng(cfg);
    let pairs: Vec<(IntervalVector, IntervalVector)> = (0..cfg.random_count)
        .map(|_| {
            let (lower, upper): (Vec<_>, Vec<_>) = (0..n)
                .map(|_| {
                    let (a, b) = (random_interval(&mut rng), random_interval(&mut rng));
                    match order.cmp(a, b) {
                        OrderRelation::Less | OrderRelation::Equal => (a, b),
                        OrderRelation::Greater => (b, a),
                        OrderRelation::Incomparable => (a.meet(b), a.join(b)),
                    }
                })
                .unzip();
            (IntervalVector::new(lower), IntervalVector::new(upper))
        })
        .collect();

    let eps = cfg.eps_cmp;
    run(space.grid_points + pairs.len(), cfg, |i, t| {
        let mut compare = |x: &IntervalVector, fx: Interval, y: IntervalVector| {
            let fy = eval(f, &y)?;
            t.record(violation(order, fx, fy, sense, eps), |relation| Witness {
                base: x.clone(),
                shift: Shift::Raise,
                shifted: y,
                before: fx,
                after: fy,
                relation,
            });
            Ok::<(), CheckError>(())
        };
        if space.is_grid(i) {
            let x = space.point(i);
            let fx = eval(f, &x)?;
            compare(&x, fx, x.clone())?;
            for (c, &gi) in space.grid_indices(i).iter().enumerate() {
                for &h in &ups[gi] {
                    compare(&x, fx, replace(&x, c, space.grid[h]))?;
                }
            }
        } else {
            let (x, y) = &pairs[i - space.grid_points];
            let fx = eval(f, x)?;
            compare(x, fx, y.clone())?;
        }
        Ok(())
    })
}

/// Shared loop of the directional checkers: `shift_count` evenly spaced
/// steps in `(0, k*]`, always including `k*`.
fn run_directional(
    f: &IVFunction,
    order: &OrderSpec,
    cfg: &SamplingConfig,
    sense: Sense,
    max_shift: impl Fn(&IntervalVector) -> f64 + Sync,
    shift: impl Fn(&IntervalVector, f64) -> Option<IntervalVector> + Sync,
) -> Result<CheckResult, CheckError> {
    let space = Space::new(cfg, f.arity())?;
    let steps = cfg.shift_count;
    run(space.len(), cfg, |i, t| {
        let x = space.point(i);
        let k = max_shift(&x);
        if !(k > 0.0 && k.is_finite()) {
            t.skipped += 1;
            return Ok(());
        }
        let fx = eval(f, &x)?;
        for j in 1..=steps {
            let c = if j == steps {
                k
            } else {
                k * j as f64 / steps as f64
            };
            let Some(y) = shift(&x, c) else {
                t.skipped += 1;
                continue;
            };
            let fy = eval(f, &y)?;
            t.record(violation(order, fx, fy, sense, cfg.eps_cmp), |relation| {
                Witness {
                    base: x.clone(),
                    shift: Shift::Step(c),
                    shifted: y,
                    before: fx,
                    after: fy,
                    relation,
                }
            });
        }
        Ok(())
    })
}

/// Directional monotonicity along real pairs under the Kulisch–Miranker
/// order: `F(X) <=_KM F(X + cV)` for all feasible `c > 0`. Incomparable
/// outputs count against both senses.
pub fn check_directional_km(
    f: &IVFunction,
    dir: &RealPairs,
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    expect_arity("direction", f.arity(), dir.arity())?;
    run_directional(
        f,
        &OrderSpec::KM,
        cfg,
        sense,
        |x| dir.max_shift(x),
        |x, c| dir.shift(x, c),
    )
}

/// `(a,b)`-weak monotonicity: directional along `((a,b), ..., (a,b))`.
pub fn check_weak_km(
    f: &IVFunction,
    pair: (f64, f64),
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    check_directional_km(f, &RealPairs::uniform(pair, f.arity())?, cfg, sense)
}

/// Weak monotonicity: `F(X1 + C, ..., Xn + C) >= F(X1, ..., Xn)` for every
/// sampled `C != [0,0]` keeping all arguments inside `[0, 1]`.
///
/// Grid points try every grid interval as `C` (only degenerate ones when
/// `cfg.degenerate_shifts` is set); random points draw `shift_count` random
/// feasible shifts.
pub fn check_weak_adm(
    f: &IVFunction,
    order: &OrderSpec,
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    let space = Space::new(cfg, f.arity())?;
    let shifts: Vec<Interval> = space
        .grid
        .iter()
        .copied()
        .filter(|c| *c != Interval::ZERO && (!cfg.degenerate_shifts || c.is_degenerate()))
        .collect();
    run(space.len(), cfg, |i, t| {
        let x = space.point(i);
        let fx = eval(f, &x)?;
        let compare = |t: &mut Tally, c: Interval| {
            let Some(y) = add_uniform(&x, c) else {
                t.skipped += 1;
                return Ok(());
            };
            let fy = eval(f, &y)?;
            t.record(violation(order, fx, fy, sense, cfg.eps_cmp), |relation| {
                Witness {
                    base: x.clone(),
                    shift: Shift::Interval(c),
                    shifted: y,
                    before: fx,
                    after: fy,
                    relation,
                }
            });
            Ok::<(), CheckError>(())
        };
        if space.is_grid(i) {
            for &c in &shifts {
                compare(t, c)?;
            }
        } else {
            let cap = 1.0 - x.iter().map(Interval::hi).fold(0.0, f64::max);
            let mut rng = shift_rng(cfg, i);
            for _ in 0..cfg.shift_count {
                let c = random_interval_below(&mut rng, cap, cfg.degenerate_shifts);
                if cap <= 0.0 || c == Interval::ZERO {
                    t.skipped += 1;
                } else {
                    compare(t, c)?;
                }
            }
        }
        Ok(())
    })
}

/// Directional monotonicity along a vector of degenerate intervals under
/// `order`: `F(X1 + k V1, ..., Xn + k Vn) >= F(X1, ..., Xn)` for feasible
/// `k > 0`.
pub fn check_directional_adm(
    f: &IVFunction,
    dir: &DegenerateVec,
    order: &OrderSpec,
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    expect_arity("direction", f.arity(), dir.arity())?;
    run_directional(
        f,
        order,
        cfg,
        sense,
        |x| dir.max_shift(x),
        |x, k| dir.shift(x, k),
    )
}

/// Checks `G(Lambda, X) >= X` under `order` over all pairs of the grid
/// intervals plus `random_count` random intervals.
pub fn verify_g_contract(
    g: &IVFunction,
    order: &OrderSpec,
    cfg: &SamplingConfig,
) -> Result<(), CheckError> {
    expect_arity("G", 2, g.arity())?;
    cfg.validate()?;
    let mut sample = cfg.grid_intervals();
    let mut rng = contract_rng(cfg);
    sample.extend((0..cfg.random_count).map(|_| random_interval(&mut rng)));
    let mut count = 0;
    let mut examples = Vec::new();
    for &lambda in &sample {
        for &x in &sample {
            let value = eval(g, &IntervalVector::new(vec![lambda, x]))?;
            let relation = order.compare_with_slack(value, x, cfg.eps_cmp);
            if !relation.is_ge() {
                count += 1;
                if examples.len() < MAX_CONTRACT_EXAMPLES {
                    examples.push(GContractViolation {
                        lambda,
                        x,
                        value,
                        relation,
                    });
                }
            }
        }
    }
    if count == 0 {
        Ok(())
    } else {
        Err(CheckError::GContract { count, examples })
    }
}

/// G-weak monotonicity: `F(G(L,X1), ..., G(L,Xn)) >= F(X1, ..., Xn)` for all
/// sampled `L`. Fails with [`CheckError::GContract`] when `G` is not above
/// its second argument on the sample.
///
/// `L` ranges over the grid intervals (without `[0,0]` when
/// `cfg.exclude_zero_lambda` is set); random base points draw `shift_count`
/// random parameters.
pub fn check_g_weak(
    f: &IVFunction,
    g: &IVFunction,
    order: &OrderSpec,
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    verify_g_contract(g, order, cfg)?;
    let space = Space::new(cfg, f.arity())?;
    let lambdas: Vec<Interval> = space
        .grid
        .iter()
        .copied()
        .filter(|l| !cfg.exclude_zero_lambda || *l != Interval::ZERO)
        .collect();
    run(space.len(), cfg, |i, t| {
        let x = space.point(i);
        let fx = eval(f, &x)?;
        let mut compare = |lambda: Interval| {
            let y = x
                .iter()
                .map(|xi| eval(g, &IntervalVector::new(vec![lambda, *xi])))
                .collect::<Result<Vec<_>, _>>()?;
            let y = IntervalVector::new(y);
            let fy = eval(f, &y)?;
            t.record(violation(order, fx, fy, sense, cfg.eps_cmp), |relation| {
                Witness {
                    base: x.clone(),
                    shift: Shift::Interval(lambda),
                    shifted: y,
                    before: fx,
                    after: fy,
                    relation,
                }
            });
            Ok::<(), CheckError>(())
        };
        if space.is_grid(i) {
            for &l in &lambdas {
                compare(l)?;
            }
        } else {
            let mut rng = shift_rng(cfg, i);
            for _ in 0..cfg.shift_count {
                compare(random_interval(&mut rng))?;
            }
        }
        Ok(())
    })
}

/// Scalar g-weak monotonicity: `f(g(l,x1), ..., g(l,xn)) >= f(x1, ..., xn)`
/// for `l` in `(0, 1]`, after checking `g(x, y) >= y` on the grid values.
///
/// Points are the grid values (endpoints of a custom grid) to the power
/// `arity`, then random points. Witnesses hold degenerate intervals.
pub fn check_g_weak_scalar(
    f: &ScalarFn,
    arity: usize,
    g: &ScalarFn,
    cfg: &SamplingConfig,
    sense: Sense,
) -> Result<CheckResult, CheckError> {
    cfg.validate()?;
    if arity == 0 {
        return Err(CheckError::Arity {
            what: "f".into(),
            expected: 1,
            found: 0,
        });
    }
    let values = cfg.grid_values();
    let eps = cfg.eps_cmp;

    let mut count = 0;
    let mut examples = Vec::new();
    for &l in &values {
        for &y in &values {
            let v = g(&[l, y]);
            if v < y - eps {
                count += 1;
                if examples.len() < MAX_CONTRACT_EXAMPLES {
                    examples.push(GContractViolation {
                        lambda: Interval::point(l),
                        x: Interval::point(y),
                        value: Interval::point(v),
                        relation: OrderRelation::Less,
                    });
                }
            }
        }
    }
    if count > 0 {
        return Err(CheckError::GContract { count, examples });
    }

    let point_grid = SamplingConfig {
        custom_grid: Some(values.iter().map(|&v| Interval::point(v)).collect()),
        random_count: 0,
        ..cfg.clone()
    };
    let space = Space::new(&point_grid, arity)?;
    let mut rng = base_rng(cfg);
    let random: Vec<Vec<f64>> = (0..cfg.random_count)
        .map(|_| (0..arity).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let lambdas: Vec<f64> = values.iter().copied().filter(|&l| l > 0.0).collect();

    run(space.grid_points + random.len(), cfg, |i, t| {
        let x: Vec<f64> = if space.is_grid(i) {
            space.point(i).iter().map(Interval::lo).collect()
        } else {
            random[i - space.grid_points].clone()
        };
        let fx = f(&x);
        let mut compare = |l: f64| {
            let y: Vec<f64> = x.iter().map(|&xi| g(&[l, xi])).collect();
            let fy = f(&y);
            let (before, after) = (Interval::point(fx), Interval::point(fy));
            t.record(
                violation(&OrderSpec::KM, before, after, sense, eps),
                |relation| Witness {
                    base: IntervalVector::new(x.iter().map(|&v| Interval::point(v)).collect()),
                    shift: Shift::Step(l),
                    shifted: IntervalVector::new(y.iter().map(|&v| Interval::point(v)).collect()),
                    before,
                    after,
                    relation,
                },
            );
        };
        if space.is_grid(i) {
            for &l in &lambdas {
                compare(l);
            }
        } else {
            let mut rng = shift_rng(cfg, i);
            for _ in 0..cfg.shift_count {
                // (0, 1]
                compare(1.0 - rng.gen::<f64>());
            }
        }
        Ok(())
    })
}
