//! Brute-force reference for the monotonicity checkers.
//!
//! Nothing here goes through the library's sampler, shift or order code:
//! intervals are plain `(lo, hi)` pairs, orders are re-implemented from
//! their key definitions and every quantifier is a nested loop over the
//! endpoint grid. Only function evaluation is shared.

#![allow(dead_code)]

use ivmono::{IVFunction, Interval, IntervalVector};

pub type Iv = (f64, f64);

pub const EPS: f64 = 1e-9;
const EPS_DOMAIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Vacuous,
    /// `G(X, Y) >= Y` fails somewhere on the grid.
    BadG,
}

/// All `[i h, j h]` with `i <= j`.
pub fn grid(h: f64) -> Vec<Iv> {
    let m = (1.0 / h).round() as usize;
    let mut out = Vec::new();
    for i in 0..=m {
        for j in i..=m {
            out.push((i as f64 / m as f64, j as f64 / m as f64));
        }
    }
    out
}

/// Every `n`-tuple of grid intervals.
pub fn points(grid: &[Iv], n: usize) -> Vec<Vec<Iv>> {
    let mut acc: Vec<Vec<Iv>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &acc {
            for &x in grid {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        acc = next;
    }
    acc
}

fn key(name: &str, x: Iv) -> f64 {
    match name {
        "lower" => x.0,
        "upper" => x.1,
        "mid" => (x.0 + x.1) / 2.0,
        "width" => x.1 - x.0,
        _ => panic!("unknown key {name}"),
    }
}

fn keys(order: &str) -> Option<(&'static str, &'static str)> {
    match order {
        "km" => None,
        "lex-lower" => Some(("lower", "upper")),
        "lex-upper" => Some(("upper", "lower")),
        "xu-yager" => Some(("mid", "upper")),
        _ => panic!("oracle does not know order {order}"),
    }
}

/// `x <= y` under `order`, key differences up to `eps` counting as ties.
pub fn le(order: &str, x: Iv, y: Iv, eps: f64) -> bool {
    match keys(order) {
        None => x.0 <= y.0 + eps && x.1 <= y.1 + eps,
        Some((k1, k2)) => {
            let (a, b) = (key(k1, x), key(k1, y));
            if a < b - eps {
                true
            } else if a > b + eps {
                false
            } else {
                key(k2, x) <= key(k2, y) + eps
            }
        }
    }
}

pub fn ge(order: &str, x: Iv, y: Iv, eps: f64) -> bool {
    le(order, y, x, eps)
}

fn holds(order: &str, before: Iv, after: Iv, increasing: bool) -> bool {
    if increasing {
        le(order, before, after, EPS)
    } else {
        ge(order, before, after, EPS)
    }
}

pub fn eval(f: &IVFunction, p: &[Iv]) -> Iv {
    let args = IntervalVector::new(
        p.iter()
            .map(|&(lo, hi)| Interval::new(lo, hi).expect("oracle point"))
            .collect(),
    );
    let y = f.eval(&args).expect("oracle evaluation");
    (y.lo(), y.hi())
}

/// Clamps float noise at the domain boundary; `None` when outside.
fn in_domain(lo: f64, hi: f64) -> Option<Iv> {
    if lo < -EPS_DOMAIN || hi > 1.0 + EPS_DOMAIN || lo > hi + EPS_DOMAIN {
        return None;
    }
    let lo = lo.clamp(0.0, 1.0);
    let hi = hi.clamp(0.0, 1.0);
    Some((lo.min(hi), hi.max(lo)))
}

/// `X <= Y` for every component (product order).
fn le_n(order: &str, x: &[Iv], y: &[Iv]) -> bool {
    x.iter().zip(y).all(|(a, b)| le(order, *a, *b, 0.0))
}

/// Standard monotonicity over every comparable pair of grid points.
pub fn increasing(f: &IVFunction, order: &str, h: f64, inc: bool) -> Verdict {
    let pts = points(&grid(h), f.arity());
    let values: Vec<Iv> = pts.iter().map(|p| eval(f, p)).collect();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            if le_n(order, x, y) && !holds(order, values[i], values[j], inc) {
                return Verdict::Fails;
            }
        }
    }
    Verdict::Holds
}

/// Steps `c = j h / 8` up to `c_max`.
fn steps(h: f64, c_max: f64) -> impl Iterator<Item = f64> {
    let d = h / 8.0;
    (1..)
        .map(move |j| j as f64 * d)
        .take_while(move |&c| c <= c_max + 1e-15)
}

/// Shared loop for shift-based notions. `shift(x, s)` yields the shifted
/// point or `None` when it leaves the domain.
fn shifted_notion<S, T>(
    f: &IVFunction,
    order: &str,
    base: &[Vec<Iv>],
    shifts: &[S],
    shift: T,
    inc: bool,
) -> Verdict
where
    T: Fn(&[Iv], &S) -> Option<Vec<Iv>>,
{
    let mut any = false;
    for x in base {
        let fx = eval(f, x);
        for s in shifts {
            if let Some(y) = shift(x, s) {
                any = true;
                if !holds(order, fx, eval(f, &y), inc) {
                    return Verdict::Fails;
                }
            }
        }
    }
    if any {
        Verdict::Holds
    } else {
        Verdict::Vacuous
    }
}

/// Directional monotonicity along real pairs, Kulisch–Miranker order.
pub fn directional_pairs(f: &IVFunction, dir: &[(f64, f64)], h: f64, inc: bool) -> Verdict {
    let base = points(&grid(h), f.arity());
    let cs: Vec<f64> = steps(h, 4.0).collect();
    shifted_notion(
        f,
        "km",
        &base,
        &cs,
        |x, &c| {
            x.iter()
                .zip(dir)
                .map(|(&(lo, hi), &(a, b))| in_domain(lo + c * a, hi + c * b))
                .collect()
        },
        inc,
    )
}

/// Directional monotonicity along degenerate intervals `[v, v]`.
pub fn directional_deg(f: &IVFunction, v: &[f64], order: &str, h: f64, inc: bool) -> Verdict {
    let pairs: Vec<(f64, f64)> = v.iter().map(|&a| (a, a)).collect();
    let base = points(&grid(h), f.arity());
    let ks: Vec<f64> = steps(h, 4.0).collect();
    shifted_notion(
        f,
        order,
        &base,
        &ks,
        |x, &k| {
            x.iter()
                .zip(&pairs)
                .map(|(&(lo, hi), &(a, b))| in_domain(lo + k * a, hi + k * b))
                .collect()
        },
        inc,
    )
}

/// Weak monotonicity: the same grid interval `C != [0,0]` added to every
/// argument.
pub fn weak(f: &IVFunction, order: &str, h: f64, degenerate: bool, inc: bool) -> Verdict {
    let g = grid(h);
    let base = points(&g, f.arity());
    let cs: Vec<Iv> = g
        .iter()
        .copied()
        .filter(|c| *c != (0.0, 0.0) && (!degenerate || c.0 == c.1))
        .collect();
    shifted_notion(
        f,
        order,
        &base,
        &cs,
        |x, c| {
            x.iter()
                .map(|&(lo, hi)| in_domain(lo + c.0, hi + c.1))
                .collect()
        },
        inc,
    )
}

/// `G(L, X) >= X` for every pair of grid intervals.
pub fn g_contract(g: &IVFunction, order: &str, h: f64) -> bool {
    let gr = grid(h);
    gr.iter()
        .all(|&l| gr.iter().all(|&x| ge(order, eval(g, &[l, x]), x, EPS)))
}

/// G-weak monotonicity with `L` over all grid intervals.
pub fn g_weak(f: &IVFunction, g: &IVFunction, order: &str, h: f64, inc: bool) -> Verdict {
    if !g_contract(g, order, h) {
        return Verdict::BadG;
    }
    let gr = grid(h);
    let base = points(&gr, f.arity());
    shifted_notion(
        f,
        order,
        &base,
        &gr,
        |x, &l| Some(x.iter().map(|&xi| eval(g, &[l, xi])).collect()),
        inc,
    )
}

/// Scalar g-weak monotonicity with `l` over the nonzero grid values.
pub fn g_weak_scalar(
    f: &dyn Fn(&[f64]) -> f64,
    arity: usize,
    g: &dyn Fn(f64, f64) -> f64,
    h: f64,
    inc: bool,
) -> Verdict {
    let m = (1.0 / h).round() as usize;
    let vals: Vec<f64> = (0..=m).map(|i| i as f64 / m as f64).collect();
    if vals
        .iter()
        .any(|&l| vals.iter().any(|&y| g(l, y) < y - EPS))
    {
        return Verdict::BadG;
    }
    let pts = points(&vals.iter().map(|&v| (v, v)).collect::<Vec<_>>(), arity);
    for p in pts {
        let x: Vec<f64> = p.iter().map(|v| v.0).collect();
        let fx = f(&x);
        for &l in vals.iter().filter(|&&l| l > 0.0) {
            let y: Vec<f64> = x.iter().map(|&xi| g(l, xi)).collect();
            let fy = f(&y);
            let ok = if inc { fx <= fy + EPS } else { fx >= fy - EPS };
            if !ok {
                return Verdict::Fails;
            }
        }
    }
    Verdict::Holds
}
